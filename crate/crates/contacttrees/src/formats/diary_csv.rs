//! Diary CSV: `ties.csv` (`id,ego_id,<attr...>`) and `contacts.csv`
//! (`id,tie_id,<attr...>`), optionally `egos.csv` (`id,<attr...>`). Every
//! attribute column must be declared in the schema; empty cells are absent.

use contacttrees_core::diary::{Attributes, Contact, Diary, DiaryError, Ego, EgoId, Tie};
use contacttrees_core::schema::{AttributeSchema, EntityKind};

use super::attrs::{self, Decode};
use super::diary_json::entity_name;

struct Table {
    name: &'static str,
    entity: EntityKind,
    /// Leading columns before the attributes.
    keys: &'static [&'static str],
}

const EGOS: Table = Table {
    name: "egos.csv",
    entity: EntityKind::Ego,
    keys: &["id"],
};
const TIES: Table = Table {
    name: "ties.csv",
    entity: EntityKind::Tie,
    keys: &["id", "ego_id"],
};
const CONTACTS: Table = Table {
    name: "contacts.csv",
    entity: EntityKind::Contact,
    keys: &["id", "tie_id"],
};

/// One decoded row: key cells then attributes.
type Row = (Vec<String>, Attributes);

fn read_table(table: &Table, bytes: &[u8], schema: &AttributeSchema, mode: Decode) -> Result<Vec<Row>, DiaryError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line());
        DiaryError::malformed(format_args!("{} line {line}", table.name), e)
    };
    let headers = reader.headers().map_err(csv_err)?.clone();
    let header_pos = format!("{} header", table.name);
    let n_keys = table.keys.len();
    if headers.len() < n_keys || headers.iter().take(n_keys).ne(table.keys.iter().copied()) {
        return Err(DiaryError::malformed(
            &header_pos,
            format_args!("expected leading columns `{}`", table.keys.join(",")),
        ));
    }
    let mut columns = Vec::new();
    for (i, name) in headers.iter().enumerate().skip(n_keys) {
        if headers.iter().take(i).any(|h| h == name) {
            return Err(DiaryError::malformed(&header_pos, format_args!("column `{name}` repeated")));
        }
        let entry = schema.get(table.entity, name).ok_or_else(|| {
            DiaryError::malformed(
                &header_pos,
                format_args!("column `{name}` is not a declared {} attribute", entity_name(table.entity)),
            )
        })?;
        columns.push(entry);
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let keys: Vec<String> = record.iter().take(n_keys).map(str::to_string).collect();
        let mut attributes = Attributes::new();
        for (entry, cell) in columns.iter().zip(record.iter().skip(n_keys)) {
            let value = attrs::from_cell(entry, cell, mode).map_err(|reason| {
                DiaryError::SchemaViolation(format!(
                    "{} line {line}, column {}: {reason}",
                    table.name, entry.name
                ))
            })?;
            if let Some(v) = value {
                attributes.insert(entry.name.clone(), v);
            }
        }
        rows.push((keys, attributes));
    }
    Ok(rows)
}

/// Decodes the tables without checking references, duplicates or required
/// attributes. Without an ego table, egos are the distinct `ego_id`s of the
/// tie table in order of first appearance, with no attributes.
pub fn decode_diary_csv(
    egos: Option<&[u8]>,
    ties: &[u8],
    contacts: &[u8],
    schema: &AttributeSchema,
    mode: Decode,
) -> Result<Diary, DiaryError> {
    let mut diary = Diary::new(schema.clone());
    let tie_rows = read_table(&TIES, ties, schema, mode)?;
    let contact_rows = read_table(&CONTACTS, contacts, schema, mode)?;
    match egos {
        Some(bytes) => {
            for (mut keys, attributes) in read_table(&EGOS, bytes, schema, mode)? {
                diary.egos.push(Ego {
                    id: keys.swap_remove(0).into(),
                    attributes,
                });
            }
        }
        None => {
            for (keys, _) in &tie_rows {
                let id = EgoId::new(keys[1].clone());
                if !diary.egos.iter().any(|e| e.id == id) {
                    diary.egos.push(Ego {
                        id,
                        attributes: Attributes::new(),
                    });
                }
            }
        }
    }
    for (mut keys, attributes) in tie_rows {
        let ego = keys.pop().expect("two key columns");
        diary.ties.push(Tie {
            id: keys.pop().expect("two key columns").into(),
            ego: ego.into(),
            attributes,
        });
    }
    for (mut keys, attributes) in contact_rows {
        let tie = keys.pop().expect("two key columns");
        diary.contacts.push(Contact {
            id: keys.pop().expect("two key columns").into(),
            tie: tie.into(),
            attributes,
        });
    }
    Ok(diary)
}

/// Strict decode of a tie and a contact table followed by full validation.
pub fn parse_diary_csv(ties: &[u8], contacts: &[u8], schema: &AttributeSchema) -> Result<Diary, DiaryError> {
    parse_diary_csv_with_egos(None, ties, contacts, schema)
}

pub fn parse_diary_csv_with_egos(
    egos: Option<&[u8]>,
    ties: &[u8],
    contacts: &[u8],
    schema: &AttributeSchema,
) -> Result<Diary, DiaryError> {
    let diary = decode_diary_csv(egos, ties, contacts, schema, Decode::Strict)?;
    diary.check()?;
    Ok(diary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_tie_no_contacts() {
        let d = parse_diary_csv(b"id,ego_id,age\nT1,E1,30\n", b"id,tie_id,date\n", &AttributeSchema::canonical()).unwrap();
        assert_eq!((d.egos.len(), d.ties.len(), d.contacts.len()), (1, 1, 0));
        assert_eq!(d.egos[0].id.as_str(), "E1");
    }

    #[test]
    fn bad_real_names_row_and_column() {
        let err = parse_diary_csv(
            b"id,ego_id\nT1,E1\n",
            b"id,tie_id,date,duration\nC1,T1,2004-01-01,30\nC2,T1,2004-01-02,abc\n",
            &AttributeSchema::canonical(),
        )
        .unwrap_err();
        match err {
            DiaryError::SchemaViolation(m) => {
                assert!(m.contains("line 3") && m.contains("duration"), "{m}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_tie_ids() {
        let err = parse_diary_csv(b"id,ego_id\nT1,E1\nT1,E1\n", b"id,tie_id\n", &AttributeSchema::canonical());
        assert!(matches!(err, Err(DiaryError::DuplicateId(_))));
    }

    #[test]
    fn undeclared_column_rejected() {
        let err = parse_diary_csv(b"id,ego_id,shoe_size\nT1,E1,42\n", b"id,tie_id\n", &AttributeSchema::canonical());
        assert!(matches!(err, Err(DiaryError::MalformedInput { .. })));
    }

    #[test]
    fn quoted_cells() {
        let d = parse_diary_csv(
            b"id,ego_id,liking,gender\n\"T,1\",E1,\"not much\",\"fe\"\"male\"\n",
            b"id,tie_id\n",
            &AttributeSchema::canonical(),
        )
        .unwrap();
        assert_eq!(d.ties[0].id.as_str(), "T,1");
        assert_eq!(d.ties[0].attributes["gender"], contacttrees_core::AttributeValue::text("fe\"male"));
    }
}
