use std::path::{Path, PathBuf};
use std::process::Command;

use contacttrees::cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("contacttrees").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_contacttrees"))
        .args(args)
        .output()
        .unwrap()
        .status
        .code()
        .unwrap()
}

/// Each case with its expected exit code, checked in process and through
/// the built binary.
fn cases(dir: &Path) -> Vec<(i32, Vec<String>)> {
    let json = fixture("diary_small.json");
    let out = |n: &str| dir.join(n).display().to_string();
    let bad_mapping = dir.join("mapping.json");
    let mut spec = contacttrees::core::preset_mapping("diary-default").unwrap();
    spec.trunk_position.source = "shoe_size".into();
    std::fs::write(&bad_mapping, serde_json::to_vec(&spec).unwrap()).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\"egos\": [").unwrap();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        (0, s(&["render", "--data", &json, "--ego", "E1", "--out", &out("e1.svg")])),
        (0, s(&["render", "--data", &json, "--ego", "E1", "--out", &out("e1"), "--format", "both"])),
        (0, s(&["render", "--data", &fixture("diary_small"), "--ego", "E2", "--period", "2004..2008", "--out", &out("e2.svg")])),
        (0, s(&["validate", "--data", &json])),
        (0, s(&["stats", "--data", &json])),
        (0, s(&["preset", "liking-tenure"])),
        (0, s(&["compare", "--data", &json, "--ego", "E2", "--period", "2004", "--period", "2008", "--shared-norm", "--out", &out("c.svg")])),
        (0, s(&["synth", "--seed", "3", "--out", &out("s.json")])),
        (0, s(&["--help"])),
        (1, s(&["render", "--data", &json, "--ego", "E1", "--out", &out("missing/dir/e1.svg")])),
        (2, s(&["render", "--data", &json, "--ego", "E1"])),
        (2, s(&["render", "--data", &json, "--ego", "E1", "--out", &out("x.svg"), "--period", "2008..2004"])),
        (2, s(&["render", "--data", &json, "--ego", "E1", "--out", &json, "--format", "json"])),
        (2, s(&["frobnicate"])),
        (2, s(&["compare", "--data", &json, "--ego", "E1", "--period", "2004", "--out", &out("c1.svg")])),
        (3, s(&["render", "--data", &out("nope.json"), "--ego", "E1", "--out", &out("x.svg")])),
        (3, s(&["render", "--data", &json, "--ego", "E9", "--out", &out("x.svg")])),
        (3, s(&["render", "--data", &broken.display().to_string(), "--ego", "E1", "--out", &out("x.svg")])),
        (4, s(&["render", "--data", &json, "--ego", "E1", "--mapping", "no-such-preset", "--out", &out("x.svg")])),
        (4, s(&["render", "--data", &json, "--ego", "E1", "--mapping", &bad_mapping.display().to_string(), "--out", &out("x.svg")])),
        (4, s(&["preset", "no-such-preset"])),
        (5, s(&["compare", "--data", &json, "--ego", "E2", "--period", "2004", "--period", "2006", "--period", "2008", "--period", "2012", "--out", &out("c4.svg")])),
    ]
}

#[test]
fn exit_codes_in_process() {
    let dir = tempfile::tempdir().unwrap();
    for (want, args) in cases(dir.path()) {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = in_process(&args);
        assert_eq!(code, want, "{args:?}: {err}");
    }
}

#[test]
fn exit_codes_of_binary() {
    let dir = tempfile::tempdir().unwrap();
    for (want, args) in cases(dir.path()) {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(binary(&args), want, "{args:?}");
    }
}

#[test]
fn render_report_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("tree");
    let (code, out, _) = in_process(&[
        "render", "--data", &fixture("diary_small.json"), "--ego", "E1",
        "--out", base.to_str().unwrap(), "--format", "both",
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["ego"], "E1");
    assert_eq!(report["included"], 4);
    let svg = std::fs::read_to_string(base.with_extension("svg")).unwrap();
    assert_eq!(svg.matches("data-contact=").count(), 11);
    let scene = std::fs::read(base.with_extension("json")).unwrap();
    assert!(contacttrees::formats::scene_from_json(&scene).is_ok());
}

#[test]
fn invalid_mapping_report_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let cases = cases(dir.path());
    let (_, args) = cases.iter().find(|(_, a)| a.iter().any(|x| x.ends_with("mapping.json"))).unwrap();
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, _, err) = in_process(&args);
    assert_eq!(code, 4);
    assert!(err.contains("shoe_size"), "{err}");
}

#[test]
fn validate_flags_lenient_problems() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.json");
    std::fs::write(
        &p,
        r#"{"egos":[{"id":"E"}],"ties":[{"id":"T","ego_id":"E","age":"old"}],"contacts":[]}"#,
    )
    .unwrap();
    let (code, out, _) = in_process(&["validate", "--data", p.to_str().unwrap()]);
    assert_eq!(code, 3, "{out}");
}
