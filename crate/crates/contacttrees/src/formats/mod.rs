//! File formats and dataset loading.

mod attrs;
mod config;
mod diary_csv;
mod diary_json;
mod scene_json;

use std::path::{Path, PathBuf};

use contacttrees_core::diary::{Diary, DiaryError};
use contacttrees_core::schema::AttributeSchema;

pub use attrs::Decode;
pub use config::{load_mapping, load_params, load_profile, load_style};
pub use diary_csv::{decode_diary_csv, parse_diary_csv, parse_diary_csv_with_egos};
pub use diary_json::{decode_diary_json, parse_diary_json, serialize_diary_json};
pub use scene_json::{scene_from_json, scene_to_json, SCENE_PRECISION};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("`{0}` is neither a preset ({presets}) nor a mapping file", presets = contacttrees_core::mapping::PRESET_NAMES.join(", "))]
    UnknownMapping(String),
    #[error("{path}: {source}")]
    Diary { path: String, source: DiaryError },
}

impl FormatError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Where a diary lives on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiarySource {
    Json(PathBuf),
    /// A directory with `ties.csv`, `contacts.csv` and optionally
    /// `egos.csv` and `schema.json`.
    CsvDir(PathBuf),
    /// Explicit `TIES.csv,CONTACTS.csv` pair; schema and egos are looked up
    /// next to the tie table.
    CsvPair(PathBuf, PathBuf),
}

impl DiarySource {
    pub fn from_arg(arg: &str) -> Self {
        if let Some((ties, contacts)) = arg.split_once(',') {
            return Self::CsvPair(ties.into(), contacts.into());
        }
        let path = PathBuf::from(arg);
        if path.is_dir() {
            Self::CsvDir(path)
        } else {
            Self::Json(path)
        }
    }

    /// Dataset name: the file stem or directory name.
    pub fn name(&self) -> String {
        let path = match self {
            Self::Json(p) | Self::CsvDir(p) => p.as_path(),
            Self::CsvPair(t, _) => t.parent().unwrap_or(Path::new("")),
        };
        path.file_stem()
            .or_else(|| path.file_name())
            .map_or_else(|| "dataset".into(), |s| s.to_string_lossy().into_owned())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, FormatError> {
    std::fs::read(path).map_err(|e| FormatError::io(path, e))
}

fn read_optional(path: &Path) -> Result<Option<Vec<u8>>, FormatError> {
    if path.exists() {
        read(path).map(Some)
    } else {
        Ok(None)
    }
}

/// Reads and decodes a diary. Strict mode also validates it.
pub fn load_diary(source: &DiarySource, mode: Decode) -> Result<Diary, FormatError> {
    let wrap = |path: &Path| {
        let path = path.display().to_string();
        move |source| FormatError::Diary { path, source }
    };
    let (dir, ties, contacts) = match source {
        DiarySource::Json(path) => {
            let bytes = read(path)?;
            return match mode {
                Decode::Strict => parse_diary_json(&bytes),
                Decode::Lenient => decode_diary_json(&bytes, mode),
            }
            .map_err(wrap(path));
        }
        DiarySource::CsvDir(dir) => (dir.clone(), dir.join("ties.csv"), dir.join("contacts.csv")),
        DiarySource::CsvPair(t, c) => (t.parent().unwrap_or(Path::new(".")).to_path_buf(), t.clone(), c.clone()),
    };
    let schema = match read_optional(&dir.join("schema.json"))? {
        Some(bytes) => serde_json::from_slice(&bytes).map_err(|e| FormatError::Json {
            path: dir.join("schema.json").display().to_string(),
            source: e,
        })?,
        None => AttributeSchema::canonical(),
    };
    let egos = read_optional(&dir.join("egos.csv"))?;
    let diary = decode_diary_csv(egos.as_deref(), &read(&ties)?, &read(&contacts)?, &schema, mode).map_err(wrap(&ties))?;
    if mode == Decode::Strict {
        diary.check().map_err(wrap(&ties))?;
    }
    Ok(diary)
}
