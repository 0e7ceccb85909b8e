use contacttrees_core::attr::AttributeValue;
use contacttrees_core::diary::{Ego, EgoId, Tie, TieId};
use contacttrees_core::mapping::{preset_mapping, BranchSide, Resolver, Side};
use contacttrees_core::schema::{AttributeSchema, LIKING_SCALE};

fn liking(label: &str) -> AttributeValue {
    let level = LIKING_SCALE.iter().position(|l| *l == label).unwrap() as u32;
    AttributeValue::ordinal(level, "liking")
}

fn tie(gender: Option<&str>, age: Option<i64>, years: Option<f64>, like: Option<&str>, stranger: bool) -> Tie {
    let mut t = Tie {
        id: TieId::new("T"),
        ego: EgoId::new("E"),
        attributes: Default::default(),
    };
    let a = &mut t.attributes;
    if let Some(g) = gender {
        a.insert("gender".into(), AttributeValue::text(g));
    }
    if let Some(x) = age {
        a.insert("age".into(), AttributeValue::Integer(x));
    }
    if let Some(y) = years {
        a.insert("years_known".into(), AttributeValue::Real(y));
    }
    if let Some(l) = like {
        a.insert("liking".into(), liking(l));
    }
    a.insert("is_stranger".into(), AttributeValue::Boolean(stranger));
    t
}

type Row = (Option<&'static str>, Option<i64>, Option<f64>, Option<&'static str>, bool, Option<(Side, usize, BranchSide, u8)>);

fn check(preset: &str, rows: &[Row]) {
    let spec = preset_mapping(preset).unwrap();
    let schema = AttributeSchema::canonical();
    let r = Resolver::new(&spec, &schema).unwrap();
    for (i, (g, age, years, like, stranger, want)) in rows.iter().enumerate() {
        let got = r
            .resolve_tie(&tie(*g, *age, *years, *like, *stranger))
            .ok()
            .map(|c| (c.side, c.band, c.branch_side, c.fruit_count));
        assert_eq!(got, *want, "{preset} row {i}");
    }
}

#[test]
fn diary_default_table() {
    use BranchSide::{Above, Below};
    use Side::{Left, Right};
    check(
        "diary-default",
        &[
            (Some("male"), Some(25), Some(3.0), Some("very much"), false, Some((Left, 2, Below, 2))),
            (Some("female"), Some(52), Some(20.0), Some("somewhat"), false, Some((Right, 5, Above, 1))),
            (Some("male"), Some(8), Some(8.0), Some("not much"), false, Some((Left, 0, Above, 0))),
            (Some("female"), Some(31), Some(0.5), Some("very much"), false, Some((Right, 3, Below, 2))),
            (Some("female"), Some(0), Some(5.0), Some("not at all"), false, Some((Right, 0, Above, 0))),
            (Some("male"), Some(99), Some(4.999), Some("somewhat"), false, Some((Left, 9, Below, 1))),
            (Some("male"), Some(104), Some(1.0), Some("somewhat"), false, Some((Left, 9, Below, 1))),
            (Some("male"), Some(19), Some(1.0), Some("somewhat"), true, Some((Left, 1, Below, 1))),
            (None, Some(30), Some(1.0), Some("somewhat"), false, None),
            (Some("other"), Some(30), Some(1.0), Some("somewhat"), false, None),
            (Some("male"), None, Some(1.0), Some("somewhat"), false, None),
            (Some("male"), Some(30), None, Some("somewhat"), false, None),
            (Some("male"), Some(30), Some(1.0), None, false, None),
        ],
    );
}

#[test]
fn liking_tenure_table() {
    use BranchSide::{Above, Below};
    use Side::{Left, Right};
    check(
        "liking-tenure",
        &[
            (Some("male"), Some(25), Some(3.0), Some("very much"), false, Some((Right, 2, Below, 1))),
            (Some("female"), Some(52), Some(20.0), Some("somewhat"), false, Some((Left, 4, Above, 2))),
            (Some("female"), Some(41), Some(0.5), Some("somewhat"), false, Some((Left, 1, Above, 2))),
            (Some("male"), Some(40), Some(1.0), Some("very much"), false, Some((Right, 2, Below, 1))),
            (Some("male"), Some(40), Some(5.0), Some("very much"), false, Some((Right, 3, Below, 1))),
            (Some("male"), Some(60), Some(12.0), Some("very much"), true, Some((Right, 0, Above, 1))),
            (Some("male"), Some(60), None, Some("very much"), false, Some((Right, 0, Above, 1))),
            (Some("male"), Some(60), Some(2.0), Some("not much"), false, None),
            (Some("male"), Some(60), Some(2.0), Some("not at all"), false, None),
            (Some("male"), Some(60), Some(2.0), None, false, None),
            (Some("other"), Some(60), Some(2.0), Some("somewhat"), false, None),
            (Some("male"), None, Some(2.0), Some("somewhat"), false, None),
        ],
    );
}

#[test]
fn unknown_preset_rejected() {
    assert!(preset_mapping("nope").is_err());
}

#[test]
fn ego_glyph_channels() {
    let spec = preset_mapping("diary-default").unwrap();
    let schema = AttributeSchema::canonical();
    let r = Resolver::new(&spec, &schema).unwrap();
    let mut ego = Ego {
        id: EgoId::new("E"),
        attributes: Default::default(),
    };
    assert_eq!(r.resolve_ego(&ego).ok().flatten(), None);
    ego.attributes.insert("gender".into(), AttributeValue::text("female"));
    ego.attributes.insert("age".into(), AttributeValue::Integer(34));
    ego.attributes.insert("marital_status".into(), AttributeValue::text("married"));
    let c = r.resolve_ego(&ego).unwrap().unwrap();
    assert_eq!((c.side, c.band, c.count), (Side::Right, 3, 2));
    ego.attributes.insert("marital_status".into(), AttributeValue::text("single"));
    assert_eq!(r.resolve_ego(&ego).unwrap().unwrap().count, 1);
    ego.attributes.remove("marital_status");
    assert_eq!(r.resolve_ego(&ego).unwrap().unwrap().count, 1);
}
