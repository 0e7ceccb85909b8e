//! Attribute schema: which attributes exist on which entity, with what kind.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::attr::AttributeKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityKind {
    Ego,
    Tie,
    Contact,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ego => "ego",
            Self::Tie => "tie",
            Self::Contact => "contact",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaEntry {
    pub name: String,
    pub entity: EntityKind,
    pub kind: AttributeKind,
    /// Level labels, lowest first. Only meaningful for ordinal attributes.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scale: Vec<String>,
    #[serde(default)]
    pub required: bool,
}

impl SchemaEntry {
    pub fn new(entity: EntityKind, name: &str, kind: AttributeKind) -> Self {
        Self {
            name: name.to_string(),
            entity,
            kind,
            scale: Vec::new(),
            required: false,
        }
    }

    pub fn ordinal(entity: EntityKind, name: &str, levels: &[&str]) -> Self {
        Self {
            scale: levels.iter().map(|s| s.to_string()).collect(),
            ..Self::new(entity, name, AttributeKind::Ordinal)
        }
    }

    pub fn required(mut self) -> Self {
        self.required = true;
        self
    }

    pub fn level_of(&self, label: &str) -> Option<u32> {
        self.scale.iter().position(|l| l == label).map(|i| i as u32)
    }
}

/// Attribute names are unique per entity kind: `age` may be declared for
/// both egos and ties.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttributeSchema {
    entries: Vec<SchemaEntry>,
}

pub const LIKING_SCALE: [&str; 4] = ["not at all", "not much", "somewhat", "very much"];
pub const FEELING_SCALE: [&str; 5] = ["very bad", "bad", "neutral", "good", "very good"];

impl AttributeSchema {
    pub fn new(entries: Vec<SchemaEntry>) -> Self {
        Self { entries }
    }

    /// Schema over the canonical attribute names referenced by the presets.
    pub fn canonical() -> Self {
        use AttributeKind::*;
        use EntityKind::*;
        Self::new(vec![
            SchemaEntry::new(Ego, "gender", Text),
            SchemaEntry::new(Ego, "age", Integer),
            SchemaEntry::new(Ego, "marital_status", Text),
            SchemaEntry::new(Tie, "gender", Text),
            SchemaEntry::new(Tie, "age", Integer),
            SchemaEntry::new(Tie, "years_known", Real),
            SchemaEntry::new(Tie, "is_stranger", Boolean),
            SchemaEntry::ordinal(Tie, "liking", &LIKING_SCALE),
            SchemaEntry::new(Contact, "date", Date).required(),
            SchemaEntry::new(Contact, "duration", Real),
            SchemaEntry::ordinal(Contact, "feeling", &FEELING_SCALE),
        ])
    }

    pub fn entries(&self) -> &[SchemaEntry] {
        &self.entries
    }

    pub fn get(&self, entity: EntityKind, name: &str) -> Option<&SchemaEntry> {
        self.entries
            .iter()
            .find(|e| e.entity == entity && e.name == name)
    }

    pub fn of(&self, entity: EntityKind) -> impl Iterator<Item = &SchemaEntry> {
        self.entries.iter().filter(move |e| e.entity == entity)
    }

    pub fn push(&mut self, entry: SchemaEntry) {
        self.entries.push(entry);
    }

    /// Structural problems with the schema itself.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            if self.entries[..i]
                .iter()
                .any(|p| p.entity == e.entity && p.name == e.name)
            {
                out.push(alloc::format!("{} attribute `{}` declared twice", e.entity, e.name));
            }
            if e.kind == AttributeKind::Ordinal && e.scale.is_empty() {
                out.push(alloc::format!(
                    "ordinal {} attribute `{}` declares an empty scale",
                    e.entity,
                    e.name
                ));
            }
        }
        out
    }
}
