//! Read-only HTTP API over diaries loaded at startup.
//!
//! - `GET /api/health`
//! - `GET /api/datasets`
//! - `GET /api/datasets/{dataset}/egos`
//! - `GET /api/mappings`
//! - `POST /api/layout` with `{dataset, ego, period?, mapping, params?}`,
//!   answered with scene JSON.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use contacttrees_core::attr::Period;
use contacttrees_core::diary::{diary_stats, Diary};
use contacttrees_core::layout::{layout_tree, LayoutError, LayoutParams};
use contacttrees_core::mapping::{preset_mapping, MappingSpec, PRESET_NAMES};
use serde::Deserialize;
use serde_json::json;

use crate::formats::scene_to_json;

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Clone)]
struct AppState {
    datasets: Arc<BTreeMap<String, Diary>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MappingArg {
    Preset(String),
    Inline(Box<MappingSpec>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PeriodArg {
    Text(String),
    Range(Period),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutRequest {
    dataset: String,
    ego: String,
    #[serde(default)]
    period: Option<PeriodArg>,
    mapping: MappingArg,
    #[serde(default)]
    params: Option<LayoutParams>,
}

fn error(status: StatusCode, message: impl std::fmt::Display) -> Response {
    (status, Json(json!({ "error": message.to_string() }))).into_response()
}

pub fn router(datasets: BTreeMap<String, Diary>, static_dir: Option<PathBuf>) -> Router {
    let state = AppState {
        datasets: Arc::new(datasets),
    };
    let api = Router::new()
        .route("/api/health", get(|| async { Json(json!({ "status": "ok" })) }))
        .route("/api/datasets", get(list_datasets))
        .route("/api/datasets/{dataset}/egos", get(list_egos))
        .route("/api/mappings", get(list_mappings))
        .route("/api/layout", post(layout))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(tower_http::services::ServeDir::new(dir)),
        None => api,
    }
}

async fn list_datasets(State(state): State<AppState>) -> Json<Vec<String>> {
    Json(state.datasets.keys().cloned().collect())
}

async fn list_egos(State(state): State<AppState>, Path(dataset): Path<String>) -> Response {
    match state.datasets.get(&dataset) {
        Some(diary) => Json(diary_stats(diary).egos).into_response(),
        None => error(StatusCode::NOT_FOUND, format_args!("unknown dataset `{dataset}`")),
    }
}

async fn list_mappings() -> Json<serde_json::Value> {
    let presets: Vec<_> = PRESET_NAMES
        .iter()
        .map(|name| json!({ "name": name, "spec": preset_mapping(name).expect("listed preset exists") }))
        .collect();
    Json(json!({ "presets": presets }))
}

async fn layout(State(state): State<AppState>, body: Bytes) -> Response {
    let request: LayoutRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, format_args!("malformed layout request: {e}")),
    };
    let period = match &request.period {
        None => None,
        Some(PeriodArg::Range(p)) => Some(*p),
        Some(PeriodArg::Text(s)) => match Period::parse(s) {
            Ok(p) => Some(p),
            Err(e) => return error(StatusCode::BAD_REQUEST, e),
        },
    };
    let Some(diary) = state.datasets.get(&request.dataset) else {
        return error(StatusCode::NOT_FOUND, format_args!("unknown dataset `{}`", request.dataset));
    };
    if diary.ego(&request.ego).is_none() {
        return error(StatusCode::NOT_FOUND, format_args!("unknown ego `{}`", request.ego));
    }
    let spec = match request.mapping {
        MappingArg::Inline(spec) => *spec,
        MappingArg::Preset(name) => match preset_mapping(&name) {
            Ok(spec) => spec,
            Err(e) => return mapping_error(LayoutError::from(e)),
        },
    };
    let params = request.params.unwrap_or_default();
    let state = state.clone();
    let ego = request.ego;
    let result = tokio::task::spawn_blocking(move || {
        let diary = &state.datasets[&request.dataset];
        layout_tree(diary, &ego, period.as_ref(), &spec, &params).map(|scene| scene_to_json(&scene))
    })
    .await;
    match result {
        Ok(Ok(body)) => ([(header::CONTENT_TYPE, "application/json")], body).into_response(),
        Ok(Err(e)) => mapping_error(e),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e),
    }
}

fn mapping_error(e: LayoutError) -> Response {
    match e {
        LayoutError::InvalidMapping(report) => (StatusCode::UNPROCESSABLE_ENTITY, Json(report)).into_response(),
        LayoutError::UnknownEgo(_) => error(StatusCode::NOT_FOUND, e),
        LayoutError::InvalidParams(problems) => (
            StatusCode::BAD_REQUEST,
            Json(json!({ "error": "invalid layout parameters", "problems": problems })),
        )
            .into_response(),
        other => error(StatusCode::INTERNAL_SERVER_ERROR, other),
    }
}
