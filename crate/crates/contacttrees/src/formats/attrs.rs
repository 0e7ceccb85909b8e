//! Schema-driven conversion between file values and attribute values.

use contacttrees_core::attr::AttributeValue;
use contacttrees_core::schema::SchemaEntry;
use serde_json::Value;

/// How to treat a value that does not fit its schema entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decode {
    /// Reject it.
    Strict,
    /// Keep it with its natural kind so validation can report it.
    Lenient,
}

/// Attribute value from a JSON value, guided by the schema entry when one
/// exists. `Ok(None)` means absent (`null`).
pub fn from_json(entry: Option<&SchemaEntry>, value: &Value, mode: Decode) -> Result<Option<AttributeValue>, String> {
    if value.is_null() {
        return Ok(None);
    }
    let Some(entry) = entry else {
        return natural(value).map(Some);
    };
    use contacttrees_core::attr::AttributeKind as K;
    let typed = match (entry.kind, value) {
        (K::Boolean, Value::Bool(b)) => Some(AttributeValue::Boolean(*b)),
        (K::Integer, Value::Number(n)) => n.as_i64().map(AttributeValue::Integer),
        (K::Real, Value::Number(n)) => n.as_f64().map(AttributeValue::Real),
        (K::Text, Value::String(s)) => Some(AttributeValue::Text(s.clone())),
        (K::Date, Value::String(s)) => s.parse().ok().map(AttributeValue::Date),
        (K::Ordinal, Value::String(s)) => entry
            .level_of(s)
            .map(|level| AttributeValue::ordinal(level, entry.name.as_str())),
        (K::Ordinal, Value::Number(n)) => n
            .as_u64()
            .and_then(|l| u32::try_from(l).ok())
            .map(|level| AttributeValue::ordinal(level, entry.name.as_str())),
        _ => None,
    };
    match (typed, mode) {
        (Some(v), _) => Ok(Some(v)),
        (None, Decode::Lenient) => natural(value).map(Some),
        (None, Decode::Strict) => Err(format!("expected {}, got {value}", entry.kind)),
    }
}

/// Kind inferred from the JSON type alone.
fn natural(value: &Value) -> Result<AttributeValue, String> {
    match value {
        Value::Bool(b) => Ok(AttributeValue::Boolean(*b)),
        Value::Number(n) => Ok(match n.as_i64() {
            Some(i) => AttributeValue::Integer(i),
            None => AttributeValue::Real(n.as_f64().unwrap_or(f64::NAN)),
        }),
        Value::String(s) => Ok(AttributeValue::Text(s.clone())),
        other => Err(format!("attribute values must be scalars, got {other}")),
    }
}

pub fn to_json(entry: Option<&SchemaEntry>, value: &AttributeValue) -> Value {
    match value {
        AttributeValue::Boolean(b) => Value::Bool(*b),
        AttributeValue::Integer(i) => Value::from(*i),
        AttributeValue::Real(r) => serde_json::Number::from_f64(*r).map_or(Value::Null, Value::Number),
        AttributeValue::Text(t) => Value::String(t.clone()),
        AttributeValue::Date(d) => Value::String(d.to_string()),
        AttributeValue::Ordinal { level, .. } => entry
            .and_then(|e| e.scale.get(*level as usize))
            .map_or(Value::from(*level), |label| Value::String(label.clone())),
    }
}

/// Attribute value from a CSV cell. Empty cells are absent.
pub fn from_cell(entry: &SchemaEntry, cell: &str, mode: Decode) -> Result<Option<AttributeValue>, String> {
    if cell.is_empty() {
        return Ok(None);
    }
    use contacttrees_core::attr::AttributeKind as K;
    let typed = match entry.kind {
        K::Boolean => match cell {
            "true" | "1" => Some(AttributeValue::Boolean(true)),
            "false" | "0" => Some(AttributeValue::Boolean(false)),
            _ => None,
        },
        K::Integer => cell.parse().ok().map(AttributeValue::Integer),
        K::Real => cell
            .parse::<f64>()
            .ok()
            .filter(|r| r.is_finite())
            .map(AttributeValue::Real),
        K::Text => Some(AttributeValue::Text(cell.to_string())),
        K::Date => cell.parse().ok().map(AttributeValue::Date),
        K::Ordinal => entry
            .level_of(cell)
            .or_else(|| cell.parse().ok())
            .map(|level| AttributeValue::ordinal(level, entry.name.as_str())),
    };
    match (typed, mode) {
        (Some(v), _) => Ok(Some(v)),
        (None, Decode::Lenient) => Ok(Some(AttributeValue::Text(cell.to_string()))),
        (None, Decode::Strict) => Err(format!("expected {}, got `{cell}`", entry.kind)),
    }
}

