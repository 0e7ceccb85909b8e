use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{
    BinKind, BinningSpec, BooleanChannel, EgoGlyph, FruitTable, LeafDarkness, LeafSide, LeafSize,
    MappingError, MappingSpec, Predicate, Ramp, Scalar, SentinelBand, TrunkSide,
};

pub const PRESET_NAMES: [&str; 2] = ["diary-default", "liking-tenure"];

fn labels(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn decade_bins(source: &str) -> BinningSpec {
    BinningSpec {
        source: source.into(),
        kind: BinKind::DecadeBins,
        band_labels: (0..10).map(|d| alloc::format!("{}–{}", d * 10, d * 10 + 9)).collect(),
        sentinel: None,
    }
}

fn leaf_channels() -> (String, LeafSize, LeafDarkness, LeafSide) {
    (
        "date".into(),
        LeafSize {
            source: "duration".into(),
        },
        LeafDarkness {
            source: "feeling".into(),
            direction: Ramp::HigherIsDarker,
        },
        LeafSide::Alternate,
    )
}

/// Gender picks the trunk side, age decades the band, acquaintance of at
/// least five years puts the small branch above, liking sets the fruits.
fn diary_default() -> MappingSpec {
    let (leaf_order, leaf_size, leaf_darkness, leaf_side) = leaf_channels();
    let gender_domain = vec![Scalar::text("male"), Scalar::text("female")];
    MappingSpec {
        name: "diary-default".into(),
        trunk_side: TrunkSide {
            channel: BooleanChannel::new("gender", Predicate::Equals(Scalar::text("male")))
                .with_domain(gender_domain.clone()),
            left_when: true,
        },
        trunk_position: decade_bins("age"),
        branch_side: BooleanChannel::new("years_known", Predicate::AtLeast(5.0)),
        fruit_count: FruitTable::new(
            "liking",
            &[
                (Scalar::text("not at all"), 0),
                (Scalar::text("not much"), 0),
                (Scalar::text("somewhat"), 1),
                (Scalar::text("very much"), 2),
            ],
        ),
        leaf_order,
        leaf_size,
        leaf_darkness,
        leaf_side,
        ego_glyph: Some(EgoGlyph {
            side: TrunkSide {
                channel: BooleanChannel::new("gender", Predicate::Equals(Scalar::text("male")))
                    .with_domain(gender_domain),
                left_when: true,
            },
            band_source: "age".into(),
            pair: BooleanChannel::new("marital_status", Predicate::Equals(Scalar::text("married"))),
        }),
    }
}

/// Liking picks the side (very much on the right, somewhat on the left),
/// tenure the band, age over 40 puts the small branch above, gender sets
/// the fruits.
fn liking_tenure() -> MappingSpec {
    let (leaf_order, leaf_size, leaf_darkness, leaf_side) = leaf_channels();
    MappingSpec {
        name: "liking-tenure".into(),
        trunk_side: TrunkSide {
            channel: BooleanChannel::new("liking", Predicate::Equals(Scalar::text("somewhat")))
                .with_domain(vec![Scalar::text("somewhat"), Scalar::text("very much")]),
            left_when: true,
        },
        trunk_position: BinningSpec {
            source: "years_known".into(),
            kind: BinKind::ThresholdBins {
                edges: vec![0.0, 1.0, 5.0, 20.0],
            },
            band_labels: labels(&["strangers", "<1y", "1–4y", "5–19y", "≥20y"]),
            sentinel: Some(SentinelBand {
                band: 0,
                flag: Some("is_stranger".into()),
            }),
        },
        branch_side: BooleanChannel::new("age", Predicate::GreaterThan(40.0)),
        fruit_count: FruitTable::new("gender", &[(Scalar::text("male"), 1), (Scalar::text("female"), 2)]),
        leaf_order,
        leaf_size,
        leaf_darkness,
        leaf_side,
        ego_glyph: None,
    }
}

pub fn preset_mapping(name: &str) -> Result<MappingSpec, MappingError> {
    match name {
        "diary-default" => Ok(diary_default()),
        "liking-tenure" => Ok(liking_tenure()),
        other => Err(MappingError::UnknownPreset(other.into())),
    }
}
