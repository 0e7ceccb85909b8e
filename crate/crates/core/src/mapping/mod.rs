//! Attribute-to-tree-channel mappings.
//!
//! A [`MappingSpec`] says which tie attribute picks the trunk side, which one
//! positions the main branch along the trunk, and so on. Two presets ship
//! with the crate; specs are plain data and can be loaded from JSON.

mod binning;
mod presets;
mod resolve;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::attr::{AttributeKind, AttributeValue};
use crate::schema::SchemaEntry;

pub use binning::{bin_value, BinKind, BinningSpec, SentinelBand};
pub use presets::{preset_mapping, PRESET_NAMES};
pub use resolve::{
    resolve_contact_channels, resolve_tie_channels, validate_mapping, EgoChannels, LeafChannelValues,
    LeafNorms, LeafSlot, Range, Resolver, TieChannelValues,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// -1 for left, +1 for right.
    pub fn sign(self) -> f64 {
        match self {
            Self::Left => -1.0,
            Self::Right => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Left => "left",
            Self::Right => "right",
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Self::Left => Self::Right,
            Self::Right => Self::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchSide {
    Above,
    Below,
}

impl BranchSide {
    pub fn from_flag(above: bool) -> Self {
        if above {
            Self::Above
        } else {
            Self::Below
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Above => "above",
            Self::Below => "below",
        }
    }
}

/// A literal in a mapping file. Text matches text values, ordinal level
/// labels and ISO dates; numbers match integers and reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Bool(bool),
    Number(f64),
    Text(String),
}

impl Scalar {
    pub fn text(s: &str) -> Self {
        Self::Text(s.into())
    }

    /// Whether this literal can ever match a value of the given kind.
    pub fn compatible_with(&self, kind: AttributeKind) -> bool {
        match self {
            Self::Bool(_) => kind == AttributeKind::Boolean,
            Self::Number(_) => kind.is_numeric(),
            Self::Text(_) => matches!(kind, AttributeKind::Text | AttributeKind::Ordinal | AttributeKind::Date),
        }
    }

    pub fn matches(&self, value: &AttributeValue, entry: Option<&SchemaEntry>) -> bool {
        match (self, value) {
            (Self::Bool(a), AttributeValue::Boolean(b)) => a == b,
            (Self::Number(a), AttributeValue::Integer(_) | AttributeValue::Real(_)) => {
                value.as_f64() == Some(*a)
            }
            (Self::Text(a), AttributeValue::Text(b)) => a == b,
            (Self::Text(a), AttributeValue::Ordinal { level, .. }) => entry
                .and_then(|e| e.scale.get(*level as usize))
                .is_some_and(|label| label == a),
            (Self::Text(a), AttributeValue::Date(d)) => {
                a.parse::<crate::attr::Date>().ok() == Some(*d)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bool(b) => write!(f, "{b}"),
            Self::Number(n) => write!(f, "{n}"),
            Self::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Equals(Scalar),
    OneOf(Vec<Scalar>),
    AtLeast(f64),
    GreaterThan(f64),
    IsTrue,
}

impl Predicate {
    pub fn compatible_with(&self, kind: AttributeKind) -> bool {
        match self {
            Self::Equals(s) => s.compatible_with(kind),
            Self::OneOf(v) => !v.is_empty() && v.iter().all(|s| s.compatible_with(kind)),
            Self::AtLeast(_) | Self::GreaterThan(_) => {
                kind.is_numeric() || kind == AttributeKind::Ordinal
            }
            Self::IsTrue => kind == AttributeKind::Boolean,
        }
    }

    pub fn eval(&self, value: &AttributeValue, entry: Option<&SchemaEntry>) -> bool {
        match self {
            Self::Equals(s) => s.matches(value, entry),
            Self::OneOf(v) => v.iter().any(|s| s.matches(value, entry)),
            Self::AtLeast(t) => value.as_f64().is_some_and(|x| x >= *t),
            Self::GreaterThan(t) => value.as_f64().is_some_and(|x| x > *t),
            Self::IsTrue => value.as_bool() == Some(true),
        }
    }

    pub fn describe(&self, attribute: &str) -> String {
        match self {
            Self::Equals(s) => alloc::format!("{attribute} is {s}"),
            Self::OneOf(v) => {
                let parts: Vec<String> = v.iter().map(|s| alloc::format!("{s}")).collect();
                alloc::format!("{attribute} in {{{}}}", parts.join(", "))
            }
            Self::AtLeast(t) => alloc::format!("{attribute} >= {t}"),
            Self::GreaterThan(t) => alloc::format!("{attribute} > {t}"),
            Self::IsTrue => String::from(attribute),
        }
    }
}

/// A boolean channel: one attribute and a predicate over it.
///
/// `domain`, when present, restricts which values are mappable at all;
/// values outside it make the record unmappable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BooleanChannel {
    pub source: String,
    pub predicate: Predicate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<Scalar>>,
}

impl BooleanChannel {
    pub fn new(source: &str, predicate: Predicate) -> Self {
        Self {
            source: source.into(),
            predicate,
            domain: None,
        }
    }

    pub fn with_domain(mut self, domain: Vec<Scalar>) -> Self {
        self.domain = Some(domain);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrunkSide {
    #[serde(flatten)]
    pub channel: BooleanChannel,
    /// The predicate outcome that puts a tie on the left of the trunk.
    pub left_when: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FruitEntry {
    pub value: Scalar,
    pub fruits: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FruitTable {
    pub source: String,
    pub entries: Vec<FruitEntry>,
}

impl FruitTable {
    pub fn new(source: &str, entries: &[(Scalar, u8)]) -> Self {
        Self {
            source: source.into(),
            entries: entries
                .iter()
                .map(|(v, n)| FruitEntry {
                    value: v.clone(),
                    fruits: *n,
                })
                .collect(),
        }
    }

    pub fn lookup(&self, value: &AttributeValue, entry: Option<&SchemaEntry>) -> Option<u8> {
        self.entries
            .iter()
            .find(|e| e.value.matches(value, entry))
            .map(|e| e.fruits)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafSize {
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ramp {
    HigherIsDarker,
    LowerIsDarker,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafDarkness {
    pub source: String,
    pub direction: Ramp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafSide {
    /// Leaves alternate above and below the small branch; carries no data.
    Alternate,
    /// Predicate true puts the leaf above the small branch.
    Channel(BooleanChannel),
}

/// The bird glyph for the diary keeper. Band uses the trunk-position bins
/// applied to `band_source` on the ego.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EgoGlyph {
    pub side: TrunkSide,
    pub band_source: String,
    /// Predicate true draws two birds.
    pub pair: BooleanChannel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingSpec {
    pub name: String,
    pub trunk_side: TrunkSide,
    pub trunk_position: BinningSpec,
    /// Predicate true puts the small branch above its main branch.
    pub branch_side: BooleanChannel,
    pub fruit_count: FruitTable,
    pub leaf_order: String,
    pub leaf_size: LeafSize,
    pub leaf_darkness: LeafDarkness,
    pub leaf_side: LeafSide,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ego_glyph: Option<EgoGlyph>,
}

impl MappingSpec {
    pub fn band_count(&self) -> usize {
        self.trunk_position.band_labels.len()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MappingError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("{kind} value is incompatible with {binning} binning")]
    IncompatibleKind { kind: AttributeKind, binning: &'static str },
    #[error("{entity} `{id}` lacks mapped attribute `{attribute}`")]
    MissingAttribute {
        entity: &'static str,
        id: String,
        attribute: String,
    },
    #[error("{entity} `{id}` has `{attribute}` outside the mapped domain")]
    OutOfDomain {
        entity: &'static str,
        id: String,
        attribute: String,
    },
    #[error("invalid mapping: {} error(s)", .0.errors.len())]
    Invalid(crate::report::ValidationReport),
}
