//! Validation reports shared by diary and mapping checks.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::schema::EntityKind;

/// What a report entry refers to. Ordering defines report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RefKind {
    Schema,
    Ego,
    Tie,
    Contact,
    Mapping,
}

impl From<EntityKind> for RefKind {
    fn from(e: EntityKind) -> Self {
        match e {
            EntityKind::Ego => Self::Ego,
            EntityKind::Tie => Self::Tie,
            EntityKind::Contact => Self::Contact,
        }
    }
}

impl fmt::Display for RefKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Schema => "schema",
            Self::Ego => "ego",
            Self::Tie => "tie",
            Self::Contact => "contact",
            Self::Mapping => "mapping",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    InvalidSchema,
    DuplicateId,
    DanglingReference,
    MissingRequired,
    KindMismatch,
    OrdinalOutOfRange,
    UnknownSource,
    IncompatibleKind,
    PartialFruitTable,
    InvalidFruitTable,
    InvalidBinning,
    UnknownPreset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub entity: RefKind,
    pub id: String,
    pub rule: Rule,
    pub message: String,
    /// Record positions (0-based) involved, when known.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub positions: Vec<usize>,
}

impl Issue {
    pub fn new(entity: RefKind, id: &str, rule: Rule, message: String, position: usize) -> Self {
        Self {
            entity,
            id: id.into(),
            rule,
            message,
            positions: vec![position],
        }
    }

    pub fn mapping(channel: &str, rule: Rule, message: String) -> Self {
        Self {
            entity: RefKind::Mapping,
            id: channel.into(),
            rule,
            message,
            positions: Vec::new(),
        }
    }

    fn sort_key(&self) -> (RefKind, &str, Rule, &[usize], &str) {
        (self.entity, &self.id, self.rule, &self.positions, &self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn new(mut errors: Vec<Issue>, mut warnings: Vec<Issue>) -> Self {
        errors.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        warnings.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Self { errors, warnings }
    }

    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}
