//! Tree construction: ordering, skeleton, adornments, bird glyph and
//! smoothing, assembled into a [`SceneGraph`].

mod adorn;
mod glyph;
mod order;
mod params;
mod skeleton;
mod smooth;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use adorn::place_adornments;
pub use glyph::place_ego_glyph;
pub use order::{order_ties, OrderedTies};
pub use params::LayoutParams;
pub use skeleton::{axis_direction, build_skeleton, seg5_length, MainBranch, Skeleton, TieSkeleton};
pub use smooth::{interpolate, sample_count, sample_uniform, smooth_lines, smooth_polyline};

use crate::attr::{AttributeValue, Period};
use crate::diary::{Attributes, Contact, Diary, TieId};
use crate::geom::{Point, Rect};
use crate::mapping::{LeafChannelValues, LeafNorms, MappingError, MappingSpec, Resolver, Scalar};
use crate::render::{legend_for, legend_size, StyleSheet};
use crate::report::{Issue, Rule, ValidationReport};
use crate::scene::{Curve, ExcludedTie, SceneGraph, SceneMeta};
use crate::schema::{AttributeSchema, EntityKind};

/// Contact attribute used to filter contacts by period.
pub const PERIOD_ATTRIBUTE: &str = "date";

/// Vertical gap between the ground line and the legend strip.
const LEGEND_GAP: f64 = 16.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LayoutError {
    #[error("unknown ego `{0}`")]
    UnknownEgo(String),
    #[error("mapping does not fit the diary schema ({} error(s))", .0.errors.len())]
    InvalidMapping(ValidationReport),
    #[error("invalid layout parameters: {0:?}")]
    InvalidParams(Vec<String>),
    #[error("adornment references tie `{0}` missing from the skeleton")]
    UnknownTie(TieId),
    #[error("band {band} outside the {bands} configured bands")]
    BandOutOfRange { band: usize, bands: usize },
    #[error("polyline has fewer than two distinct points")]
    DegeneratePolyline,
}

impl From<MappingError> for LayoutError {
    fn from(e: MappingError) -> Self {
        match e {
            MappingError::Invalid(report) => Self::InvalidMapping(report),
            other => {
                let rule = match other {
                    MappingError::UnknownPreset(_) => Rule::UnknownPreset,
                    MappingError::MissingAttribute { .. } => Rule::UnknownSource,
                    _ => Rule::IncompatibleKind,
                };
                Self::InvalidMapping(ValidationReport::new(
                    alloc::vec![Issue::mapping("mapping", rule, other.to_string())],
                    Vec::new(),
                ))
            }
        }
    }
}

/// Contacts of an ego's ties that fall inside `period` (all of them when no
/// period is given). Undated contacts fall outside every period.
pub fn contacts_in_period<'a>(
    diary: &'a Diary,
    ego: &str,
    period: Option<&Period>,
) -> Vec<&'a Contact> {
    let ties: alloc::collections::BTreeSet<&str> = diary.ties_of(ego).map(|t| t.id.as_str()).collect();
    diary
        .contacts
        .iter()
        .filter(|c| ties.contains(c.tie.as_str()))
        .filter(|c| match period {
            None => true,
            Some(p) => c
                .attributes
                .get(PERIOD_ATTRIBUTE)
                .and_then(AttributeValue::as_date)
                .is_some_and(|d| p.contains(d)),
        })
        .collect()
}

/// Normalization ranges of one tree, for callers sharing them across trees.
pub fn tree_norms(
    diary: &Diary,
    ego: &str,
    period: Option<&Period>,
    spec: &MappingSpec,
) -> Result<LeafNorms, LayoutError> {
    let resolver = Resolver::new(spec, &diary.schema)?;
    Ok(resolver.norms(contacts_in_period(diary, ego, period)))
}

fn scalar_attributes(attrs: &Attributes, schema: &AttributeSchema) -> BTreeMap<String, Scalar> {
    attrs
        .iter()
        .map(|(k, v)| {
            let s = match v {
                AttributeValue::Boolean(b) => Scalar::Bool(*b),
                AttributeValue::Integer(i) => Scalar::Number(*i as f64),
                AttributeValue::Real(r) => Scalar::Number(*r),
                AttributeValue::Text(t) => Scalar::Text(t.clone()),
                AttributeValue::Date(d) => Scalar::Text(d.to_string()),
                AttributeValue::Ordinal { level, .. } => schema
                    .get(EntityKind::Tie, k)
                    .and_then(|e| e.scale.get(*level as usize))
                    .map_or(Scalar::Number(f64::from(*level)), |l| Scalar::Text(l.clone())),
            };
            (k.clone(), s)
        })
        .collect()
}

pub fn layout_tree(
    diary: &Diary,
    ego: &str,
    period: Option<&Period>,
    spec: &MappingSpec,
    params: &LayoutParams,
) -> Result<SceneGraph, LayoutError> {
    layout_tree_with_norms(diary, ego, period, spec, params, None)
}

/// As [`layout_tree`], with leaf normalization ranges supplied by the caller
/// (for comparisons that share a scale across trees).
pub fn layout_tree_with_norms(
    diary: &Diary,
    ego_id: &str,
    period: Option<&Period>,
    spec: &MappingSpec,
    params: &LayoutParams,
    norms: Option<LeafNorms>,
) -> Result<SceneGraph, LayoutError> {
    let ego = diary.ego(ego_id).ok_or_else(|| LayoutError::UnknownEgo(ego_id.into()))?;
    let resolver = Resolver::new(spec, &diary.schema)?;
    let problems = params.problems();
    if !problems.is_empty() {
        return Err(LayoutError::InvalidParams(problems));
    }

    let in_period = contacts_in_period(diary, ego_id, period);
    let norms = norms.unwrap_or_else(|| resolver.norms(in_period.iter().copied()));
    let mut by_tie: BTreeMap<&str, Vec<&Contact>> = BTreeMap::new();
    for c in &in_period {
        by_tie.entry(c.tie.as_str()).or_default().push(c);
    }

    let mut resolved = Vec::new();
    let mut leaves: BTreeMap<TieId, Vec<LeafChannelValues>> = BTreeMap::new();
    let mut fruits: BTreeMap<TieId, u8> = BTreeMap::new();
    let mut excluded = Vec::new();
    let mut tie_attrs = BTreeMap::new();
    for tie in diary.ties_of(ego_id) {
        let outcome = resolver.resolve_tie(tie).and_then(|channels| {
            let contacts = by_tie.get(tie.id.as_str()).map(Vec::as_slice).unwrap_or(&[]);
            let leaf_values = contacts
                .iter()
                .map(|c| resolver.resolve_contact(c, &norms))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((channels, leaf_values))
        });
        match outcome {
            Ok((channels, leaf_values)) => {
                fruits.insert(tie.id.clone(), channels.fruit_count);
                if !leaf_values.is_empty() {
                    leaves.insert(tie.id.clone(), leaf_values);
                }
                tie_attrs.insert(tie.id.clone(), scalar_attributes(&tie.attributes, &diary.schema));
                resolved.push(channels);
            }
            Err(e) => excluded.push(ExcludedTie {
                tie: tie.id.clone(),
                reason: e.to_string(),
            }),
        }
    }
    excluded.sort_by(|a, b| a.tie.cmp(&b.tie));

    let ordered = order_ties(resolved);
    let leaf_counts: Vec<usize> = ordered
        .ties
        .iter()
        .map(|t| leaves.get(&t.tie).map_or(0, Vec::len))
        .collect();
    let skeleton = build_skeleton(&ordered, &leaf_counts, params);
    let (leaf_glyphs, fruit_glyphs) = place_adornments(&skeleton, &leaves, &fruits, params)?;

    let bands = spec.band_count();
    let glyphs = match resolver.resolve_ego(ego) {
        Ok(Some(channels)) => place_ego_glyph(channels, &skeleton, &leaf_glyphs, bands, params)?,
        // The bird is decoration; an ego without the mapped attributes has none.
        Ok(None) | Err(_) => Vec::new(),
    };

    let chains = smooth_lines(&skeleton, params)?;
    let style = StyleSheet::default();
    let curves: Vec<Curve> = skeleton
        .ties
        .iter()
        .zip(chains)
        .zip(&ordered.ties)
        .map(|((t, chain), channels)| Curve {
            tie: t.tie.clone(),
            base_index: t.base_index,
            side: t.side,
            band: t.band,
            branch_side: t.branch_side,
            fruit_count: channels.fruit_count,
            chain,
            stroke_width: params.stroke_width,
            color: style.trunk_color(t.band, bands),
            attributes: tie_attrs.remove(&t.tie).unwrap_or_default(),
        })
        .collect();

    let legend = legend_for(spec);
    let mut tree = Rect::EMPTY;
    for c in &curves {
        for p in c.chain.points() {
            tree.include_circle(p, params.stroke_width / 2.0);
        }
    }
    for l in &leaf_glyphs {
        tree.include_circle(l.center, l.radius);
    }
    for f in &fruit_glyphs {
        tree.include_circle(f.center, f.radius);
    }
    for g in &glyphs {
        tree.include_circle(g.position, g.size * 0.75);
    }

    let (lw, lh) = legend_size(&legend);
    let center_x = if tree.is_empty() { 0.0 } else { (tree.min_x + tree.max_x) / 2.0 };
    let legend_area = Rect::new(center_x - lw / 2.0, -LEGEND_GAP - lh, center_x + lw / 2.0, -LEGEND_GAP);
    let mut bounds = tree;
    bounds.include_rect(&legend_area);
    bounds.include(Point::new(center_x, 0.0));

    Ok(SceneGraph {
        meta: SceneMeta {
            ego: ego.id.clone(),
            period: period.copied(),
            mapping_name: spec.name.clone(),
            excluded,
        },
        bounds,
        legend_area,
        curves,
        leaves: leaf_glyphs,
        fruits: fruit_glyphs,
        glyphs,
        legend,
    })
}
