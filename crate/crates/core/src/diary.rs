//! Contact-diary data model.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::attr::AttributeValue;
use crate::report::{Issue, RefKind, Rule, ValidationReport};
use crate::schema::{AttributeSchema, EntityKind};

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                Self(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.into())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl core::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

id_type!(
    /// Identifier of a diary keeper.
    EgoId
);
id_type!(TieId);
id_type!(ContactId);

pub type Attributes = BTreeMap<String, AttributeValue>;

#[derive(Debug, Clone, PartialEq)]
pub struct Ego {
    pub id: EgoId,
    pub attributes: Attributes,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tie {
    pub id: TieId,
    pub ego: EgoId,
    pub attributes: Attributes,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Contact {
    pub id: ContactId,
    pub tie: TieId,
    pub attributes: Attributes,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diary {
    pub schema: AttributeSchema,
    pub egos: Vec<Ego>,
    pub ties: Vec<Tie>,
    pub contacts: Vec<Contact>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiaryError {
    #[error("malformed input at {position}: {reason}")]
    MalformedInput { position: String, reason: String },
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("dangling reference: {0}")]
    DanglingReference(String),
    #[error("duplicate id: {0}")]
    DuplicateId(String),
    #[error("invalid synthetic profile: {0}")]
    InvalidProfile(String),
}

impl DiaryError {
    pub fn malformed(position: impl fmt::Display, reason: impl fmt::Display) -> Self {
        Self::MalformedInput {
            position: alloc::format!("{position}"),
            reason: alloc::format!("{reason}"),
        }
    }

    fn from_issue(issue: &Issue) -> Self {
        let msg = alloc::format!("{} {}: {}", issue.entity, issue.id, issue.message);
        match issue.rule {
            Rule::DanglingReference => Self::DanglingReference(msg),
            Rule::DuplicateId => Self::DuplicateId(msg),
            _ => Self::SchemaViolation(msg),
        }
    }
}

impl Diary {
    pub fn new(schema: AttributeSchema) -> Self {
        Self {
            schema,
            ..Self::default()
        }
    }

    pub fn ego(&self, id: &str) -> Option<&Ego> {
        self.egos.iter().find(|e| e.id.as_str() == id)
    }

    pub fn ties_of<'a>(&'a self, ego: &'a str) -> impl Iterator<Item = &'a Tie> + 'a {
        self.ties.iter().filter(move |t| t.ego.as_str() == ego)
    }

    /// Contacts grouped by tie id, each group in record order.
    pub fn contacts_by_tie(&self) -> BTreeMap<&str, Vec<&Contact>> {
        let mut map: BTreeMap<&str, Vec<&Contact>> = BTreeMap::new();
        for c in &self.contacts {
            map.entry(c.tie.as_str()).or_default().push(c);
        }
        map
    }

    /// Runs [`validate_diary`] and turns the first error into a [`DiaryError`].
    pub fn check(&self) -> Result<(), DiaryError> {
        let report = validate_diary(self);
        match report.errors.first() {
            Some(issue) => Err(DiaryError::from_issue(issue)),
            None => Ok(()),
        }
    }
}

fn check_attributes(
    schema: &AttributeSchema,
    entity: EntityKind,
    id: &str,
    position: usize,
    attrs: &Attributes,
    out: &mut Vec<Issue>,
) {
    let kind = RefKind::from(entity);
    for entry in schema.of(entity) {
        match attrs.get(&entry.name) {
            None if entry.required => out.push(Issue::new(
                kind,
                id,
                Rule::MissingRequired,
                alloc::format!("required attribute `{}` is absent", entry.name),
                position,
            )),
            None => {}
            Some(v) if v.kind() != entry.kind => out.push(Issue::new(
                kind,
                id,
                Rule::KindMismatch,
                alloc::format!(
                    "attribute `{}` is {} but the schema declares {}",
                    entry.name,
                    v.kind(),
                    entry.kind
                ),
                position,
            )),
            Some(AttributeValue::Ordinal { level, scale }) => {
                if scale != &entry.name {
                    out.push(Issue::new(
                        kind,
                        id,
                        Rule::KindMismatch,
                        alloc::format!(
                            "attribute `{}` uses scale `{scale}` instead of its own",
                            entry.name
                        ),
                        position,
                    ));
                } else if *level as usize >= entry.scale.len() {
                    out.push(Issue::new(
                        kind,
                        id,
                        Rule::OrdinalOutOfRange,
                        alloc::format!(
                            "attribute `{}` level {level} outside scale of {} levels",
                            entry.name,
                            entry.scale.len()
                        ),
                        position,
                    ));
                }
            }
            Some(AttributeValue::Real(r)) if !r.is_finite() => out.push(Issue::new(
                kind,
                id,
                Rule::KindMismatch,
                alloc::format!("attribute `{}` is not a finite number", entry.name),
                position,
            )),
            Some(_) => {}
        }
    }
}

fn duplicates<'a>(ids: impl Iterator<Item = &'a str>) -> BTreeMap<&'a str, Vec<usize>> {
    let mut seen: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, id) in ids.enumerate() {
        seen.entry(id).or_default().push(i);
    }
    seen.retain(|_, v| v.len() > 1);
    seen
}

/// Checks every diary invariant. Problems become report entries; the report
/// is ordered by (entity kind, id).
pub fn validate_diary(diary: &Diary) -> ValidationReport {
    let mut errors = Vec::new();
    for problem in diary.schema.problems() {
        errors.push(Issue {
            entity: RefKind::Schema,
            id: String::new(),
            rule: Rule::InvalidSchema,
            message: problem,
            positions: Vec::new(),
        });
    }

    let dup_issue = |kind: RefKind, id: &str, positions: Vec<usize>| Issue {
        entity: kind,
        id: id.into(),
        rule: Rule::DuplicateId,
        message: alloc::format!("id used by records at positions {positions:?}"),
        positions,
    };
    for (id, pos) in duplicates(diary.egos.iter().map(|e| e.id.as_str())) {
        errors.push(dup_issue(RefKind::Ego, id, pos));
    }
    for (id, pos) in duplicates(diary.ties.iter().map(|t| t.id.as_str())) {
        errors.push(dup_issue(RefKind::Tie, id, pos));
    }
    for (id, pos) in duplicates(diary.contacts.iter().map(|c| c.id.as_str())) {
        errors.push(dup_issue(RefKind::Contact, id, pos));
    }

    let ego_ids: BTreeMap<&str, ()> = diary.egos.iter().map(|e| (e.id.as_str(), ())).collect();
    let tie_ids: BTreeMap<&str, ()> = diary.ties.iter().map(|t| (t.id.as_str(), ())).collect();

    for (i, ego) in diary.egos.iter().enumerate() {
        check_attributes(&diary.schema, EntityKind::Ego, ego.id.as_str(), i, &ego.attributes, &mut errors);
    }
    for (i, tie) in diary.ties.iter().enumerate() {
        if !ego_ids.contains_key(tie.ego.as_str()) {
            errors.push(Issue::new(
                RefKind::Tie,
                tie.id.as_str(),
                Rule::DanglingReference,
                alloc::format!("references unknown ego `{}`", tie.ego),
                i,
            ));
        }
        check_attributes(&diary.schema, EntityKind::Tie, tie.id.as_str(), i, &tie.attributes, &mut errors);
    }
    for (i, c) in diary.contacts.iter().enumerate() {
        if !tie_ids.contains_key(c.tie.as_str()) {
            errors.push(Issue::new(
                RefKind::Contact,
                c.id.as_str(),
                Rule::DanglingReference,
                alloc::format!("references unknown tie `{}`", c.tie),
                i,
            ));
        }
        check_attributes(&diary.schema, EntityKind::Contact, c.id.as_str(), i, &c.attributes, &mut errors);
    }

    ValidationReport::new(errors, Vec::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Spread {
    pub min: u32,
    pub median: f64,
    pub max: u32,
}

impl Spread {
    fn of(mut counts: Vec<u32>) -> Self {
        if counts.is_empty() {
            return Self::default();
        }
        counts.sort_unstable();
        let n = counts.len();
        let median = if n % 2 == 1 {
            f64::from(counts[n / 2])
        } else {
            (f64::from(counts[n / 2 - 1]) + f64::from(counts[n / 2])) / 2.0
        };
        Self {
            min: counts[0],
            median,
            max: counts[n - 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EgoStats {
    pub ego: EgoId,
    pub ties: u32,
    pub contacts: u32,
    pub contacts_per_tie: Spread,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Totals {
    pub egos: u32,
    pub ties: u32,
    pub contacts: u32,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct StatsSummary {
    pub egos: Vec<EgoStats>,
    pub totals: Totals,
}

/// Per-ego tie and contact counts. Totals are raw record counts.
pub fn diary_stats(diary: &Diary) -> StatsSummary {
    let mut per_tie: BTreeMap<&str, u32> = BTreeMap::new();
    for c in &diary.contacts {
        *per_tie.entry(c.tie.as_str()).or_default() += 1;
    }
    let mut egos: Vec<EgoStats> = diary
        .egos
        .iter()
        .map(|ego| {
            let counts: Vec<u32> = diary
                .ties_of(ego.id.as_str())
                .map(|t| per_tie.get(t.id.as_str()).copied().unwrap_or(0))
                .collect();
            EgoStats {
                ego: ego.id.clone(),
                ties: counts.len() as u32,
                contacts: counts.iter().sum(),
                contacts_per_tie: Spread::of(counts),
            }
        })
        .collect();
    egos.sort_by(|a, b| a.ego.cmp(&b.ego));
    StatsSummary {
        egos,
        totals: Totals {
            egos: diary.egos.len() as u32,
            ties: diary.ties.len() as u32,
            contacts: diary.contacts.len() as u32,
        },
    }
}
