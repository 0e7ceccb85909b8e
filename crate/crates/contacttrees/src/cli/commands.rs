use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use contacttrees_core::attr::Period;
use contacttrees_core::diary::{diary_stats, validate_diary, Diary};
use contacttrees_core::layout::{layout_tree_with_norms, tree_norms, LayoutError, LayoutParams};
use contacttrees_core::mapping::{preset_mapping, MappingSpec};
use contacttrees_core::render::{panels_to_svg, scene_to_svg, StyleSheet};
use contacttrees_core::synth::generate_synthetic_diary;
use serde::Serialize;

use super::{Command, Format, LayoutArgs};
use crate::formats::{self, Decode, DiarySource};
use crate::report::{CompareReport, Panel, RunReport, Timing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Ok = 0,
    Io = 1,
    Usage = 2,
    Data = 3,
    Mapping = 4,
    Panels = 5,
}

#[derive(Debug)]
pub(crate) struct CliError {
    pub code: ExitCode,
    pub message: String,
    /// Extra text for standard error, such as a validation report.
    pub detail: Option<String>,
}

fn fail(code: ExitCode, message: impl std::fmt::Display) -> CliError {
    CliError {
        code,
        message: message.to_string(),
        detail: None,
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    writeln!(out, "{}", pretty(value)).map_err(|e| fail(ExitCode::Io, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| fail(ExitCode::Io, format_args!("{}: {e}", path.display())))
}

/// Files a `--data` argument reads from.
fn input_paths(arg: &str) -> Vec<PathBuf> {
    match DiarySource::from_arg(arg) {
        DiarySource::Json(p) => vec![p],
        DiarySource::CsvDir(d) => ["ties.csv", "contacts.csv", "egos.csv", "schema.json"].iter().map(|f| d.join(f)).collect(),
        DiarySource::CsvPair(t, c) => vec![t, c],
    }
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

fn load_data(arg: &str, mode: Decode) -> Result<Diary> {
    formats::load_diary(&DiarySource::from_arg(arg), mode).map_err(|e| fail(ExitCode::Data, e))
}

struct Settings {
    spec: MappingSpec,
    params: LayoutParams,
    style: StyleSheet,
}

fn settings(args: &LayoutArgs) -> Result<Settings> {
    let spec = formats::load_mapping(&args.mapping).map_err(|e| fail(ExitCode::Mapping, e))?;
    let params = formats::load_params(args.params.as_deref()).map_err(|e| fail(ExitCode::Usage, e))?;
    let style = formats::load_style(args.style.as_deref()).map_err(|e| fail(ExitCode::Usage, e))?;
    let problems = style.problems();
    if !problems.is_empty() {
        return Err(fail(ExitCode::Usage, format_args!("invalid style: {}", problems.join("; "))));
    }
    Ok(Settings { spec, params, style })
}

fn parse_period(arg: &str) -> Result<Period> {
    Period::parse(arg).map_err(|e| fail(ExitCode::Usage, format_args!("--period: {e}")))
}

fn layout_failure(e: LayoutError) -> CliError {
    match e {
        LayoutError::UnknownEgo(_) => fail(ExitCode::Data, e),
        LayoutError::InvalidMapping(report) => CliError {
            code: ExitCode::Mapping,
            message: "mapping does not fit the diary".into(),
            detail: Some(pretty(&report)),
        },
        LayoutError::InvalidParams(_) => fail(ExitCode::Usage, e),
        other => fail(ExitCode::Data, other),
    }
}

pub(crate) fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Render {
            data,
            ego,
            layout,
            period,
            out: path,
            format,
        } => render(&data, &ego, &layout, period.as_deref(), &path, format, out),
        Command::Compare {
            data,
            ego,
            layout,
            period,
            shared_norm,
            out: path,
        } => compare(&data, &ego, &layout, &period, shared_norm, &path, out),
        Command::Validate { data } => {
            let diary = load_data(&data, Decode::Lenient)?;
            let report = validate_diary(&diary);
            print_json(out, &report)?;
            if report.is_ok() {
                Ok(())
            } else {
                Err(fail(ExitCode::Data, format_args!("diary has {} error(s)", report.errors.len())))
            }
        }
        Command::Synth { seed, profile, out: path } => {
            let profile = formats::load_profile(&profile).map_err(|e| fail(ExitCode::Usage, e))?;
            let diary = generate_synthetic_diary(seed, &profile).map_err(|e| fail(ExitCode::Usage, e))?;
            write_file(&path, &formats::serialize_diary_json(&diary))?;
            print_json(out, &serde_json::json!({
                "out": path.display().to_string(),
                "egos": diary.egos.len(),
                "ties": diary.ties.len(),
                "contacts": diary.contacts.len(),
            }))
        }
        Command::Stats { data } => {
            let diary = load_data(&data, Decode::Strict)?;
            print_json(out, &diary_stats(&diary))
        }
        Command::Preset { name } => {
            let spec = preset_mapping(&name).map_err(|e| fail(ExitCode::Mapping, e))?;
            print_json(out, &spec)
        }
        Command::Serve {
            data,
            port,
            host,
            static_dir,
        } => serve(&data, port, &host, static_dir, out),
    }
}

fn render(
    data: &str,
    ego: &str,
    layout: &LayoutArgs,
    period: Option<&str>,
    path: &Path,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    let settings = settings(layout)?;
    let period = period.map(parse_period).transpose()?;
    let t = Instant::now();
    let diary = load_data(data, Decode::Strict)?;
    let parse_ms = ms(t);

    let t = Instant::now();
    let scene = layout_tree_with_norms(&diary, ego, period.as_ref(), &settings.spec, &settings.params, None)
        .map_err(layout_failure)?;
    let layout_ms = ms(t);

    let t = Instant::now();
    let files: Vec<(PathBuf, Vec<u8>)> = match format {
        Format::Svg => vec![(path.to_path_buf(), scene_to_svg(&scene, &settings.style))],
        Format::Json => vec![(path.to_path_buf(), formats::scene_to_json(&scene))],
        Format::Both => vec![
            (path.with_extension("svg"), scene_to_svg(&scene, &settings.style)),
            (path.with_extension("json"), formats::scene_to_json(&scene)),
        ],
    };
    let render_ms = ms(t);

    let inputs = input_paths(data);
    if let Some((p, _)) = files.iter().find(|(p, _)| inputs.iter().any(|i| same_file(i, p))) {
        return Err(fail(ExitCode::Usage, format_args!("refusing to overwrite input {}", p.display())));
    }
    for (p, bytes) in &files {
        write_file(p, bytes)?;
    }
    let timing = Timing {
        parse_ms,
        layout_ms,
        render_ms,
    };
    let outputs = files.iter().map(|(p, _)| p.display().to_string()).collect();
    print_json(out, &RunReport::for_scene(&scene, timing, outputs))
}

#[allow(clippy::too_many_arguments)]
fn compare(
    data: &[String],
    ego: &str,
    layout: &LayoutArgs,
    periods: &[String],
    shared_norm: bool,
    path: &Path,
    out: &mut dyn Write,
) -> Result<()> {
    if data.len() > 1 && periods.len() > 1 {
        return Err(fail(ExitCode::Usage, "repeat either --data or --period, not both"));
    }
    let panel_count = data.len().max(periods.len());
    if panel_count < 2 {
        return Err(fail(ExitCode::Usage, "compare needs at least two panels"));
    }
    if panel_count > 3 {
        return Err(fail(ExitCode::Panels, format_args!("{panel_count} panels requested, at most 3 fit")));
    }
    let settings = settings(layout)?;

    // (dataset index, period, caption)
    let mut specs: Vec<(usize, Option<Period>, String)> = Vec::new();
    if periods.len() > 1 {
        let mut parsed = periods.iter().map(|p| parse_period(p)).collect::<Result<Vec<_>>>()?;
        parsed.sort_by_key(|p| (p.from, p.to));
        for p in parsed {
            specs.push((0, Some(p), format!("{ego}, {p}")));
        }
    } else {
        let period = periods.first().map(|p| parse_period(p)).transpose()?;
        for (i, d) in data.iter().enumerate() {
            let mut caption = format!("{}: {ego}", DiarySource::from_arg(d).name());
            if let Some(p) = period {
                caption.push_str(&format!(", {p}"));
            }
            specs.push((i, period, caption));
        }
    }

    let mut diaries = Vec::new();
    let mut parse_ms = Vec::new();
    for d in data {
        let t = Instant::now();
        diaries.push(load_data(d, Decode::Strict)?);
        parse_ms.push(ms(t));
    }

    let shared = if shared_norm {
        let mut union = None;
        for (i, period, _) in &specs {
            let n = tree_norms(&diaries[*i], ego, period.as_ref(), &settings.spec).map_err(layout_failure)?;
            union = Some(match union {
                None => n,
                Some(u) => n.union(u),
            });
        }
        union
    } else {
        None
    };

    let mut scenes = Vec::new();
    let mut timings = Vec::new();
    for (i, period, caption) in &specs {
        let t = Instant::now();
        let scene = layout_tree_with_norms(&diaries[*i], ego, period.as_ref(), &settings.spec, &settings.params, shared)
            .map_err(layout_failure)?;
        timings.push(Timing {
            parse_ms: if periods.len() > 1 { parse_ms[0] / specs.len() as f64 } else { parse_ms[*i] },
            layout_ms: ms(t),
            render_ms: 0.0,
        });
        scenes.push((caption.clone(), scene));
    }
    if data.iter().flat_map(|d| input_paths(d)).any(|i| same_file(&i, path)) {
        return Err(fail(ExitCode::Usage, format_args!("refusing to overwrite input {}", path.display())));
    }
    let t = Instant::now();
    let svg = panels_to_svg(&scenes, &settings.style);
    let render_ms = ms(t) / scenes.len() as f64;
    write_file(path, &svg)?;

    let output = path.display().to_string();
    let panels = scenes
        .iter()
        .zip(timings)
        .map(|((caption, scene), mut timing)| {
            timing.render_ms = render_ms;
            Panel {
                caption: caption.clone(),
                report: RunReport::for_scene(scene, timing, vec![output.clone()]),
            }
        })
        .collect();
    print_json(
        out,
        &CompareReport {
            panels,
            shared_norm,
            output,
        },
    )
}

fn serve(data: &[String], port: Option<u16>, host: &str, static_dir: Option<PathBuf>, out: &mut dyn Write) -> Result<()> {
    let mut datasets = BTreeMap::new();
    for d in data {
        let source = DiarySource::from_arg(d);
        let name = source.name();
        let diary = formats::load_diary(&source, Decode::Strict).map_err(|e| fail(ExitCode::Data, e))?;
        if datasets.insert(name.clone(), diary).is_some() {
            return Err(fail(ExitCode::Usage, format_args!("two datasets are named `{name}`")));
        }
    }
    let port = match port {
        Some(p) => p,
        None => match std::env::var("CONTACTTREES_PORT") {
            Ok(v) => v
                .parse()
                .map_err(|_| fail(ExitCode::Usage, format_args!("CONTACTTREES_PORT `{v}` is not a port")))?,
            Err(_) => crate::service::DEFAULT_PORT,
        },
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| fail(ExitCode::Io, e))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| fail(ExitCode::Io, format_args!("cannot listen on {host}:{port}: {e}")))?;
        let addr = listener.local_addr().map_err(|e| fail(ExitCode::Io, e))?;
        let _ = writeln!(out, "listening on http://{addr}");
        let _ = out.flush();
        let app = crate::service::router(datasets, static_dir);
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| fail(ExitCode::Io, e))
    })
}
