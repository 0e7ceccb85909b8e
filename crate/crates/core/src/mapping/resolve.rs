use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{
    bin_value, BinningSpec, BooleanChannel, BranchSide, LeafSide, MappingError, MappingSpec, Ramp, Side,
    TrunkSide,
};
use crate::attr::{AttributeKind, AttributeValue, OrderKey};
use crate::diary::{Attributes, Contact, ContactId, Ego, Tie, TieId};
use crate::report::{Issue, Rule, ValidationReport};
use crate::schema::{AttributeSchema, EntityKind, SchemaEntry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TieChannelValues {
    pub tie: TieId,
    pub side: Side,
    pub band: usize,
    pub branch_side: BranchSide,
    pub fruit_count: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafSlot {
    Above,
    Below,
    Alternate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafChannelValues {
    pub contact: ContactId,
    pub order_key: OrderKey,
    pub size: f64,
    pub darkness: f64,
    pub side: LeafSlot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        values.into_iter().filter(|v| v.is_finite()).fold(None, |acc, v| {
            Some(match acc {
                None => Range { min: v, max: v },
                Some(r) => Range {
                    min: r.min.min(v),
                    max: r.max.max(v),
                },
            })
        })
    }

    pub fn union(self, other: Self) -> Self {
        Self {
            min: self.min.min(other.min),
            max: self.max.max(other.max),
        }
    }

    /// Position of `v` in the range, clamped to [0, 1]; 0.5 when degenerate.
    pub fn unit(&self, v: f64) -> f64 {
        let span = self.max - self.min;
        if span.is_nan() || span <= 0.0 || span.is_infinite() {
            return 0.5;
        }
        let t = (v - self.min) / span;
        if t.is_nan() {
            0.5
        } else {
            t.clamp(0.0, 1.0)
        }
    }
}

/// Min/max of the numeric leaf sources over one tree (or several, when a
/// comparison shares normalization).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LeafNorms {
    pub size: Option<Range>,
    pub darkness: Option<Range>,
}

impl LeafNorms {
    pub fn union(self, other: Self) -> Self {
        let merge = |a: Option<Range>, b: Option<Range>| match (a, b) {
            (Some(a), Some(b)) => Some(a.union(b)),
            (a, b) => a.or(b),
        };
        Self {
            size: merge(self.size, other.size),
            darkness: merge(self.darkness, other.darkness),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgoChannels {
    pub side: Side,
    pub band: usize,
    pub count: u8,
}

fn check_source(
    schema: &AttributeSchema,
    entity: EntityKind,
    channel: &str,
    source: &str,
    accepts: impl Fn(AttributeKind) -> bool,
    out: &mut Vec<Issue>,
) -> Option<AttributeKind> {
    match schema.get(entity, source) {
        None => {
            out.push(Issue::mapping(
                channel,
                Rule::UnknownSource,
                alloc::format!("{entity} attribute `{source}` is not in the schema"),
            ));
            None
        }
        Some(e) if !accepts(e.kind) => {
            out.push(Issue::mapping(
                channel,
                Rule::IncompatibleKind,
                alloc::format!("{entity} attribute `{source}` has incompatible kind {}", e.kind),
            ));
            None
        }
        Some(e) => Some(e.kind),
    }
}

fn check_boolean(
    schema: &AttributeSchema,
    entity: EntityKind,
    channel: &str,
    ch: &BooleanChannel,
    out: &mut Vec<Issue>,
) {
    let kind = check_source(schema, entity, channel, &ch.source, |k| ch.predicate.compatible_with(k), out);
    if let (Some(kind), Some(domain)) = (kind, &ch.domain) {
        if domain.is_empty() || domain.iter().any(|s| !s.compatible_with(kind)) {
            out.push(Issue::mapping(
                channel,
                Rule::IncompatibleKind,
                alloc::format!("domain of `{}` is empty or holds values of another kind", ch.source),
            ));
        }
    }
}

fn check_binning(
    schema: &AttributeSchema,
    entity: EntityKind,
    channel: &str,
    spec: &BinningSpec,
    source: &str,
    out: &mut Vec<Issue>,
) {
    for p in spec.problems() {
        out.push(Issue::mapping(channel, Rule::InvalidBinning, p));
    }
    if let Some(kind) = check_source(schema, entity, channel, source, |k| spec.kind.accepts(k), out) {
        if kind == AttributeKind::Ordinal {
            let levels = schema.get(entity, source).map_or(0, |e| e.scale.len());
            if levels > spec.band_count() {
                out.push(Issue::mapping(
                    channel,
                    Rule::InvalidBinning,
                    alloc::format!("scale of `{source}` has {levels} levels but only {} bands", spec.band_count()),
                ));
            }
        }
    }
    if let Some(flag) = spec.sentinel.as_ref().and_then(|s| s.flag.as_deref()) {
        check_source(schema, entity, channel, flag, |k| k == AttributeKind::Boolean, out);
    }
}

/// Checks every source against the schema and the fruit table for totality.
pub fn validate_mapping(spec: &MappingSpec, schema: &AttributeSchema) -> ValidationReport {
    use EntityKind::*;
    let mut out = Vec::new();
    check_boolean(schema, Tie, "trunk_side", &spec.trunk_side.channel, &mut out);
    check_binning(schema, Tie, "trunk_position", &spec.trunk_position, &spec.trunk_position.source, &mut out);
    check_boolean(schema, Tie, "branch_side", &spec.branch_side, &mut out);

    let fruit = &spec.fruit_count;
    if let Some(kind) = check_source(schema, Tie, "fruit_count", &fruit.source, |_| true, &mut out) {
        for e in &fruit.entries {
            if e.fruits > 2 {
                out.push(Issue::mapping(
                    "fruit_count",
                    Rule::InvalidFruitTable,
                    alloc::format!("{} fruits for `{}` exceeds the maximum of 2", e.fruits, e.value),
                ));
            }
            if !e.value.compatible_with(kind) {
                out.push(Issue::mapping(
                    "fruit_count",
                    Rule::InvalidFruitTable,
                    alloc::format!("value `{}` cannot match {kind} attribute `{}`", e.value, fruit.source),
                ));
            }
        }
        if fruit.entries.is_empty() {
            out.push(Issue::mapping("fruit_count", Rule::PartialFruitTable, "fruit table is empty".into()));
        }
        if let Some(entry) = schema.get(Tie, &fruit.source).filter(|e| e.kind == AttributeKind::Ordinal) {
            let missing: Vec<&str> = entry
                .scale
                .iter()
                .enumerate()
                .filter(|(i, _)| fruit.lookup(&AttributeValue::ordinal(*i as u32, entry.name.clone()), Some(entry)).is_none())
                .map(|(_, l)| l.as_str())
                .collect();
            if !missing.is_empty() {
                out.push(Issue::mapping(
                    "fruit_count",
                    Rule::PartialFruitTable,
                    alloc::format!("no fruit count for level(s) {missing:?} of `{}`", fruit.source),
                ));
            }
        }
    }

    check_source(schema, Contact, "leaf_order", &spec.leaf_order, |_| true, &mut out);
    check_source(schema, Contact, "leaf_size", &spec.leaf_size.source, AttributeKind::is_numeric, &mut out);
    check_source(
        schema,
        Contact,
        "leaf_darkness",
        &spec.leaf_darkness.source,
        |k| k.is_numeric() || k == AttributeKind::Ordinal,
        &mut out,
    );
    if let LeafSide::Channel(ch) = &spec.leaf_side {
        check_boolean(schema, Contact, "leaf_side", ch, &mut out);
    }
    if let Some(glyph) = &spec.ego_glyph {
        check_boolean(schema, Ego, "ego_glyph.side", &glyph.side.channel, &mut out);
        check_binning(schema, Ego, "ego_glyph.band", &spec.trunk_position, &glyph.band_source, &mut out);
        check_boolean(schema, Ego, "ego_glyph.pair", &glyph.pair, &mut out);
    }
    ValidationReport::new(out, Vec::new())
}

/// A mapping checked against a schema, ready to resolve records.
#[derive(Debug, Clone, Copy)]
pub struct Resolver<'a> {
    spec: &'a MappingSpec,
    schema: &'a AttributeSchema,
}

impl<'a> Resolver<'a> {
    pub fn new(spec: &'a MappingSpec, schema: &'a AttributeSchema) -> Result<Self, MappingError> {
        let report = validate_mapping(spec, schema);
        if !report.is_ok() {
            return Err(MappingError::Invalid(report));
        }
        Ok(Self { spec, schema })
    }

    pub fn spec(&self) -> &'a MappingSpec {
        self.spec
    }

    fn entry(&self, entity: EntityKind, name: &str) -> Option<&'a SchemaEntry> {
        self.schema.get(entity, name)
    }

    fn boolean(
        &self,
        entity: EntityKind,
        id: &str,
        attrs: &Attributes,
        ch: &BooleanChannel,
    ) -> Result<bool, MappingError> {
        let entry = self.entry(entity, &ch.source);
        let value = attrs.get(&ch.source).ok_or_else(|| MappingError::MissingAttribute {
            entity: entity_name(entity),
            id: id.into(),
            attribute: ch.source.clone(),
        })?;
        if let Some(domain) = &ch.domain {
            if !domain.iter().any(|s| s.matches(value, entry)) {
                return Err(MappingError::OutOfDomain {
                    entity: entity_name(entity),
                    id: id.into(),
                    attribute: ch.source.clone(),
                });
            }
        }
        Ok(ch.predicate.eval(value, entry))
    }

    fn side(&self, entity: EntityKind, id: &str, attrs: &Attributes, ts: &TrunkSide) -> Result<Side, MappingError> {
        let flag = self.boolean(entity, id, attrs, &ts.channel)?;
        Ok(if flag == ts.left_when { Side::Left } else { Side::Right })
    }

    fn band(&self, entity: EntityKind, id: &str, attrs: &Attributes, source: &str) -> Result<usize, MappingError> {
        let bins = &self.spec.trunk_position;
        if let Some(sentinel) = &bins.sentinel {
            let flagged = sentinel
                .flag
                .as_ref()
                .and_then(|f| attrs.get(f))
                .and_then(AttributeValue::as_bool)
                .unwrap_or(false);
            if flagged || !attrs.contains_key(source) {
                return Ok(sentinel.band);
            }
        }
        let value = attrs.get(source).ok_or_else(|| MappingError::MissingAttribute {
            entity: entity_name(entity),
            id: id.into(),
            attribute: source.into(),
        })?;
        bin_value(bins, value)
    }

    pub fn resolve_tie(&self, tie: &Tie) -> Result<TieChannelValues, MappingError> {
        let id = tie.id.as_str();
        let attrs = &tie.attributes;
        let side = self.side(EntityKind::Tie, id, attrs, &self.spec.trunk_side)?;
        let band = self.band(EntityKind::Tie, id, attrs, &self.spec.trunk_position.source)?;
        let above = self.boolean(EntityKind::Tie, id, attrs, &self.spec.branch_side)?;
        let fruit = &self.spec.fruit_count;
        let value = attrs.get(&fruit.source).ok_or_else(|| MappingError::MissingAttribute {
            entity: "tie",
            id: id.into(),
            attribute: fruit.source.clone(),
        })?;
        let fruit_count = fruit
            .lookup(value, self.entry(EntityKind::Tie, &fruit.source))
            .ok_or_else(|| MappingError::OutOfDomain {
                entity: "tie",
                id: id.into(),
                attribute: fruit.source.clone(),
            })?;
        Ok(TieChannelValues {
            tie: tie.id.clone(),
            side,
            band,
            branch_side: BranchSide::from_flag(above),
            fruit_count: fruit_count.min(2),
        })
    }

    fn numeric(&self, c: &Contact, source: &str) -> Result<f64, MappingError> {
        c.attributes
            .get(source)
            .and_then(AttributeValue::as_f64)
            .ok_or_else(|| MappingError::MissingAttribute {
                entity: "contact",
                id: c.id.as_str().into(),
                attribute: source.into(),
            })
    }

    /// Per-tree normalization ranges over the given contacts. Contacts
    /// lacking the attribute are skipped.
    pub fn norms<'c>(&self, contacts: impl IntoIterator<Item = &'c Contact>) -> LeafNorms {
        let darkness_real = self
            .entry(EntityKind::Contact, &self.spec.leaf_darkness.source)
            .is_some_and(|e| e.kind.is_numeric());
        let mut size = Vec::new();
        let mut dark = Vec::new();
        for c in contacts {
            if let Some(v) = c.attributes.get(&self.spec.leaf_size.source).and_then(AttributeValue::as_f64) {
                size.push(v);
            }
            if darkness_real {
                if let Some(v) = c.attributes.get(&self.spec.leaf_darkness.source).and_then(AttributeValue::as_f64) {
                    dark.push(v);
                }
            }
        }
        LeafNorms {
            size: Range::of(size),
            darkness: Range::of(dark),
        }
    }

    pub fn resolve_contact(&self, c: &Contact, norms: &LeafNorms) -> Result<LeafChannelValues, MappingError> {
        let missing = |attribute: &str| MappingError::MissingAttribute {
            entity: "contact",
            id: c.id.as_str().into(),
            attribute: attribute.into(),
        };
        let order = c.attributes.get(&self.spec.leaf_order).ok_or_else(|| missing(&self.spec.leaf_order))?;
        let raw_size = self.numeric(c, &self.spec.leaf_size.source)?;
        let size = norms.size.map_or(0.5, |r| r.unit(raw_size));

        let dk = &self.spec.leaf_darkness;
        let value = c.attributes.get(&dk.source).ok_or_else(|| missing(&dk.source))?;
        let mut darkness = match value {
            AttributeValue::Ordinal { level, .. } => {
                let levels = self.entry(EntityKind::Contact, &dk.source).map_or(1, |e| e.scale.len());
                if levels <= 1 {
                    0.5
                } else {
                    (f64::from(*level) / (levels - 1) as f64).clamp(0.0, 1.0)
                }
            }
            other => {
                let v = other.as_f64().ok_or_else(|| missing(&dk.source))?;
                norms.darkness.map_or(0.5, |r| r.unit(v))
            }
        };
        if dk.direction == Ramp::LowerIsDarker {
            darkness = 1.0 - darkness;
        }

        let side = match &self.spec.leaf_side {
            LeafSide::Alternate => LeafSlot::Alternate,
            LeafSide::Channel(ch) => {
                if self.boolean(EntityKind::Contact, c.id.as_str(), &c.attributes, ch)? {
                    LeafSlot::Above
                } else {
                    LeafSlot::Below
                }
            }
        };
        Ok(LeafChannelValues {
            contact: c.id.clone(),
            order_key: OrderKey::from(order),
            size,
            darkness,
            side,
        })
    }

    /// Bird glyph channels, `None` when the mapping has no ego glyph.
    pub fn resolve_ego(&self, ego: &Ego) -> Result<Option<EgoChannels>, MappingError> {
        let Some(glyph) = &self.spec.ego_glyph else {
            return Ok(None);
        };
        let id = ego.id.as_str();
        let side = self.side(EntityKind::Ego, id, &ego.attributes, &glyph.side)?;
        let band = self.band(EntityKind::Ego, id, &ego.attributes, &glyph.band_source)?;
        let pair = match self.boolean(EntityKind::Ego, id, &ego.attributes, &glyph.pair) {
            Ok(p) => p,
            Err(MappingError::MissingAttribute { .. }) => false,
            Err(e) => return Err(e),
        };
        Ok(Some(EgoChannels {
            side,
            band,
            count: if pair { 2 } else { 1 },
        }))
    }
}

fn entity_name(e: EntityKind) -> &'static str {
    match e {
        EntityKind::Ego => "ego",
        EntityKind::Tie => "tie",
        EntityKind::Contact => "contact",
    }
}

pub fn resolve_tie_channels(resolver: &Resolver<'_>, tie: &Tie) -> Result<TieChannelValues, MappingError> {
    resolver.resolve_tie(tie)
}

pub fn resolve_contact_channels(
    resolver: &Resolver<'_>,
    contact: &Contact,
    norms: &LeafNorms,
) -> Result<LeafChannelValues, MappingError> {
    resolver.resolve_contact(contact, norms)
}
