use std::path::PathBuf;

use contacttrees::core::diary::diary_stats;
use contacttrees::core::synth::{generate_synthetic_diary, CountSpec, SynthProfile};
use contacttrees::core::{layout_tree, preset_mapping, LayoutParams};
use contacttrees::formats::*;
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

// Counts from fixtures/tally.py, which reads the JSON and CSV files with
// the Python standard library.
const TALLY: (usize, usize, usize) = (3, 12, 40);
const TIES: [(&str, u32, u32); 3] = [("E1", 4, 11), ("E2", 5, 15), ("E3", 3, 14)];

#[test]
fn json_fixture_matches_tally() {
    let d = parse_diary_json(&std::fs::read(fixture("diary_small.json")).unwrap()).unwrap();
    assert_eq!((d.egos.len(), d.ties.len(), d.contacts.len()), TALLY);
    let stats = diary_stats(&d);
    for (ego, ties, contacts) in TIES {
        let s = stats.egos.iter().find(|s| s.ego.as_str() == ego).unwrap();
        assert_eq!((s.ties, s.contacts), (ties, contacts), "{ego}");
    }
}

#[test]
fn csv_fixture_equals_json_fixture() {
    let json = parse_diary_json(&std::fs::read(fixture("diary_small.json")).unwrap()).unwrap();
    let csv = load_diary(&DiarySource::from_arg(fixture("diary_small").to_str().unwrap()), Decode::Strict).unwrap();
    assert_eq!(csv, json);
}

#[test]
fn csv_pair_without_egos_infers_them() {
    let dir = fixture("diary_small");
    let arg = format!("{},{}", dir.join("ties.csv").display(), dir.join("contacts.csv").display());
    let src = DiarySource::from_arg(&arg);
    assert!(matches!(src, DiarySource::CsvPair(..)));
    let d = load_diary(&src, Decode::Strict).unwrap();
    let ids: Vec<&str> = d.egos.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, ["E1", "E2", "E3"]);
    assert_eq!(d.contacts.len(), 40);
}

#[test]
fn json_round_trip_is_byte_stable() {
    let bytes = std::fs::read(fixture("diary_small.json")).unwrap();
    let d = parse_diary_json(&bytes).unwrap();
    let once = serialize_diary_json(&d);
    let twice = serialize_diary_json(&parse_diary_json(&once).unwrap());
    assert_eq!(once, twice);
}

#[test]
fn malformed_json_reports_position() {
    let err = parse_diary_json(b"{\n  \"egos\": [,]\n}").unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
}

#[test]
fn unknown_fields_rejected() {
    let err = parse_diary_json(br#"{"egos":[],"ties":[],"contacts":[],"extra":1}"#).unwrap_err();
    assert!(err.to_string().contains("extra"), "{err}");
}

#[test]
fn dangling_tie_rejected() {
    let bytes = br#"{"egos":[{"id":"E"}],"ties":[{"id":"T","ego_id":"X"}],"contacts":[]}"#;
    assert!(parse_diary_json(bytes).is_err());
}

#[test]
fn scene_json_round_trip() {
    let d = parse_diary_json(&std::fs::read(fixture("diary_small.json")).unwrap()).unwrap();
    let spec = preset_mapping("diary-default").unwrap();
    let scene = layout_tree(&d, "E1", None, &spec, &LayoutParams::default()).unwrap();
    let bytes = scene_to_json(&scene);
    let back = scene_from_json(&bytes).unwrap();
    assert_eq!(scene_to_json(&back), bytes);
    let mut q = scene.clone();
    q.quantize(SCENE_PRECISION);
    assert_eq!(back, q);
    let text = String::from_utf8(bytes).unwrap();
    assert!(!text.contains("-0.0,") && !text.contains("-0,"));
}

#[test]
fn empty_scene_serializes() {
    let mut d = contacttrees::core::Diary::new(contacttrees::core::AttributeSchema::canonical());
    d.egos.push(contacttrees::core::Ego {
        id: contacttrees::core::EgoId::new("E"),
        attributes: Default::default(),
    });
    let spec = preset_mapping("diary-default").unwrap();
    let scene = layout_tree(&d, "E", None, &spec, &LayoutParams::default()).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&scene_to_json(&scene)).unwrap();
    assert_eq!(v["curves"], serde_json::json!([]));
    assert_eq!(v["leaves"], serde_json::json!([]));
}

#[test]
fn mapping_and_params_loading() {
    assert_eq!(load_mapping("liking-tenure").unwrap().name, "liking-tenure");
    assert!(matches!(load_mapping("no-such-preset"), Err(FormatError::UnknownMapping(_))));
    assert_eq!(load_params(None).unwrap(), LayoutParams::default());
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    std::fs::write(&p, r#"{"line_spacing": 3.0}"#).unwrap();
    assert_eq!(load_params(Some(&p)).unwrap().line_spacing, 3.0);
    std::fs::write(&p, r#"{"line_spacin": 3.0}"#).unwrap();
    assert!(load_params(Some(&p)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthetic_json_round_trip(seed in any::<u64>(), egos in 1u32..4, max in 0u32..10) {
        let profile = SynthProfile {
            egos,
            ties_per_ego: CountSpec::Range([0, 20]),
            contacts_per_tie: CountSpec::Range([0, max]),
            marginals: Default::default(),
        };
        let d = generate_synthetic_diary(seed, &profile).unwrap();
        let bytes = serialize_diary_json(&d);
        prop_assert_eq!(parse_diary_json(&bytes).unwrap(), d);
    }
}
