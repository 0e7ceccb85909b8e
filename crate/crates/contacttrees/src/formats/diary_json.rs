//! Diary JSON: `{"schema": [...], "egos": [...], "ties": [...], "contacts": [...]}`.
//!
//! Records carry `id` and `attributes`; ties add `ego_id` and contacts add
//! `tie_id`. Attribute values are plain JSON scalars: ordinals as their level
//! label, dates as `YYYY-MM-DD`.

use contacttrees_core::diary::{Attributes, Contact, Diary, DiaryError, Ego, Tie};
use contacttrees_core::schema::{AttributeSchema, EntityKind};
use serde::Deserialize;
use serde_json::{Map, Value};

use super::attrs::{self, Decode};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiary {
    #[serde(default)]
    schema: Option<AttributeSchema>,
    #[serde(default)]
    egos: Vec<RawEgo>,
    #[serde(default)]
    ties: Vec<RawTie>,
    #[serde(default)]
    contacts: Vec<RawContact>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEgo {
    id: String,
    #[serde(default)]
    attributes: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTie {
    id: String,
    ego_id: String,
    #[serde(default)]
    attributes: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContact {
    id: String,
    tie_id: String,
    #[serde(default)]
    attributes: Map<String, Value>,
}

fn decode_attributes(
    schema: &AttributeSchema,
    entity: EntityKind,
    id: &str,
    raw: &Map<String, Value>,
    mode: Decode,
) -> Result<Attributes, DiaryError> {
    let mut out = Attributes::new();
    for (name, value) in raw {
        let decoded = attrs::from_json(schema.get(entity, name), value, mode).map_err(|reason| {
            DiaryError::SchemaViolation(format!("{} `{id}` attribute `{name}`: {reason}", entity_name(entity)))
        })?;
        if let Some(v) = decoded {
            out.insert(name.clone(), v);
        }
    }
    Ok(out)
}

pub(crate) fn entity_name(entity: EntityKind) -> &'static str {
    match entity {
        EntityKind::Ego => "ego",
        EntityKind::Tie => "tie",
        EntityKind::Contact => "contact",
    }
}

/// Decodes the document without checking references, duplicates or
/// required attributes. A missing `schema` means the canonical one.
pub fn decode_diary_json(bytes: &[u8], mode: Decode) -> Result<Diary, DiaryError> {
    let raw: RawDiary = serde_json::from_slice(bytes).map_err(|e| {
        let position = format!("line {} column {}", e.line(), e.column());
        let text = e.to_string();
        let reason = text.strip_suffix(&format!(" at {position}")).unwrap_or(&text).to_string();
        DiaryError::malformed(position, reason)
    })?;
    let schema = raw.schema.unwrap_or_else(AttributeSchema::canonical);
    let mut diary = Diary::new(schema);
    for e in raw.egos {
        let attributes = decode_attributes(&diary.schema, EntityKind::Ego, &e.id, &e.attributes, mode)?;
        diary.egos.push(Ego {
            id: e.id.into(),
            attributes,
        });
    }
    for t in raw.ties {
        let attributes = decode_attributes(&diary.schema, EntityKind::Tie, &t.id, &t.attributes, mode)?;
        diary.ties.push(Tie {
            id: t.id.into(),
            ego: t.ego_id.into(),
            attributes,
        });
    }
    for c in raw.contacts {
        let attributes = decode_attributes(&diary.schema, EntityKind::Contact, &c.id, &c.attributes, mode)?;
        diary.contacts.push(Contact {
            id: c.id.into(),
            tie: c.tie_id.into(),
            attributes,
        });
    }
    Ok(diary)
}

/// Strict decode followed by full validation.
pub fn parse_diary_json(bytes: &[u8]) -> Result<Diary, DiaryError> {
    let diary = decode_diary_json(bytes, Decode::Strict)?;
    diary.check()?;
    Ok(diary)
}

fn encode_attributes(schema: &AttributeSchema, entity: EntityKind, attrs: &Attributes) -> Value {
    Value::Object(
        attrs
            .iter()
            .map(|(k, v)| (k.clone(), attrs::to_json(schema.get(entity, k), v)))
            .collect(),
    )
}

/// Canonical document: sorted keys, two-space indent, trailing newline.
pub fn serialize_diary_json(diary: &Diary) -> Vec<u8> {
    let s = &diary.schema;
    let record = |id: &str, link: Option<(&str, &str)>, attributes: Value| {
        let mut m = Map::new();
        m.insert("id".into(), Value::from(id));
        if let Some((key, target)) = link {
            m.insert(key.into(), Value::from(target));
        }
        m.insert("attributes".into(), attributes);
        Value::Object(m)
    };
    let doc = serde_json::json!({
        "schema": serde_json::to_value(s).expect("schema serializes"),
        "egos": diary.egos.iter()
            .map(|e| record(e.id.as_str(), None, encode_attributes(s, EntityKind::Ego, &e.attributes)))
            .collect::<Vec<_>>(),
        "ties": diary.ties.iter()
            .map(|t| record(t.id.as_str(), Some(("ego_id", t.ego.as_str())), encode_attributes(s, EntityKind::Tie, &t.attributes)))
            .collect::<Vec<_>>(),
        "contacts": diary.contacts.iter()
            .map(|c| record(c.id.as_str(), Some(("tie_id", c.tie.as_str())), encode_attributes(s, EntityKind::Contact, &c.attributes)))
            .collect::<Vec<_>>(),
    });
    let mut out = serde_json::to_vec_pretty(&doc).expect("diary serializes");
    out.push(b'\n');
    out
}
