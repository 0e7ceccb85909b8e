//! Legend derived from a mapping: one entry per active channel.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::mapping::{BinKind, LeafSide, MappingSpec, Predicate, Ramp, Scalar, TrunkSide};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Swatch {
    Trunk,
    Branch,
    Fruit,
    Leaf,
    Bird,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendEntry {
    pub channel: String,
    pub description: String,
    /// Band labels, base first. Only the trunk-position entry has them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub swatch: Swatch,
}

impl LegendEntry {
    fn new(channel: &str, description: String, swatch: Swatch) -> Self {
        Self {
            channel: channel.into(),
            description,
            labels: Vec::new(),
            swatch,
        }
    }

    /// The single line drawn for this entry.
    pub fn text(&self) -> String {
        let mut s = alloc::format!("{}: {}", self.channel, self.description);
        if !self.labels.is_empty() {
            s.push_str(" [");
            s.push_str(&self.labels.join(" | "));
            s.push(']');
        }
        s
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LegendModel {
    pub entries: Vec<LegendEntry>,
}

impl LegendModel {
    pub fn entry(&self, channel: &str) -> Option<&LegendEntry> {
        self.entries.iter().find(|e| e.channel == channel)
    }
}

pub const LEGEND_LINE_HEIGHT: f64 = 14.0;
pub const LEGEND_PADDING: f64 = 8.0;
pub const LEGEND_SWATCH: f64 = 16.0;
/// Approximate advance of one character at the legend font size.
pub const LEGEND_CHAR_WIDTH: f64 = 5.6;

/// Width and height of the legend block.
pub fn legend_size(legend: &LegendModel) -> (f64, f64) {
    let chars = legend.entries.iter().map(|e| e.text().chars().count()).max().unwrap_or(0);
    let w = 2.0 * LEGEND_PADDING + LEGEND_SWATCH + 4.0 + chars as f64 * LEGEND_CHAR_WIDTH;
    let h = 2.0 * LEGEND_PADDING + legend.entries.len() as f64 * LEGEND_LINE_HEIGHT;
    (w, h)
}

fn join(values: &[Scalar]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" or ")
}

fn true_values(p: &Predicate) -> Option<Vec<Scalar>> {
    match p {
        Predicate::Equals(s) => Some(alloc::vec![s.clone()]),
        Predicate::OneOf(v) => Some(v.clone()),
        _ => None,
    }
}

/// "left = A, right = B", naming values when the channel has a domain.
fn side_text(side: &TrunkSide) -> String {
    let ch = &side.channel;
    let named = true_values(&ch.predicate).zip(ch.domain.as_ref()).and_then(|(yes, domain)| {
        let no: Vec<Scalar> = domain.iter().filter(|v| !yes.contains(v)).cloned().collect();
        (!no.is_empty()).then_some((yes, no))
    });
    let (when_true, when_false) = match named {
        Some((yes, no)) => (join(&yes), join(&no)),
        None => (ch.predicate.describe(&ch.source), "otherwise".into()),
    };
    if side.left_when {
        alloc::format!("left = {when_true}, right = {when_false}")
    } else {
        alloc::format!("left = {when_false}, right = {when_true}")
    }
}

pub fn legend_for(spec: &MappingSpec) -> LegendModel {
    let mut entries = Vec::new();
    entries.push(LegendEntry::new("trunk side", side_text(&spec.trunk_side), Swatch::Trunk));

    let tp = &spec.trunk_position;
    let how = match &tp.kind {
        BinKind::DecadeBins => "by decade",
        BinKind::ThresholdBins { .. } => "by threshold",
        BinKind::OrdinalPassthrough => "by level",
    };
    let mut bands = LegendEntry::new(
        "trunk position",
        alloc::format!("{} {how}, base band lowest", tp.source),
        Swatch::Trunk,
    );
    bands.labels = tp.band_labels.clone();
    entries.push(bands);

    entries.push(LegendEntry::new(
        "branch side",
        alloc::format!(
            "above = {}, below = otherwise",
            spec.branch_side.predicate.describe(&spec.branch_side.source)
        ),
        Swatch::Branch,
    ));

    let fruits: Vec<String> = spec
        .fruit_count
        .entries
        .iter()
        .map(|e| alloc::format!("{} = {}", e.value, e.fruits))
        .collect();
    entries.push(LegendEntry::new(
        "fruits",
        alloc::format!("{}: {}", spec.fruit_count.source, fruits.join(", ")),
        Swatch::Fruit,
    ));

    entries.push(LegendEntry::new(
        "leaf order",
        alloc::format!("by {} from branch start", spec.leaf_order),
        Swatch::Leaf,
    ));
    entries.push(LegendEntry::new(
        "leaf size",
        alloc::format!("larger = higher {}", spec.leaf_size.source),
        Swatch::Leaf,
    ));
    let ramp = match spec.leaf_darkness.direction {
        Ramp::HigherIsDarker => "higher",
        Ramp::LowerIsDarker => "lower",
    };
    entries.push(LegendEntry::new(
        "leaf darkness",
        alloc::format!("darker = {ramp} {}", spec.leaf_darkness.source),
        Swatch::Leaf,
    ));
    if let LeafSide::Channel(ch) = &spec.leaf_side {
        entries.push(LegendEntry::new(
            "leaf side",
            alloc::format!("above = {}, below = otherwise", ch.predicate.describe(&ch.source)),
            Swatch::Leaf,
        ));
    }
    if let Some(g) = &spec.ego_glyph {
        entries.push(LegendEntry::new(
            "ego",
            alloc::format!(
                "bird by {} ({}), band by {}, two birds when {}",
                g.side.channel.source,
                side_text(&g.side),
                g.band_source,
                g.pair.predicate.describe(&g.pair.source)
            ),
            Swatch::Bird,
        ));
    }
    LegendModel { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::preset_mapping;

    #[test]
    fn default_side_entry() {
        let l = legend_for(&preset_mapping("diary-default").unwrap());
        assert_eq!(l.entry("trunk side").unwrap().description, "left = male, right = female");
        assert!(l.entry("leaf side").is_none());
        assert!(l.entry("ego").is_some());
    }

    #[test]
    fn tenure_band_labels() {
        let l = legend_for(&preset_mapping("liking-tenure").unwrap());
        assert_eq!(
            l.entry("trunk position").unwrap().labels,
            ["strangers", "<1y", "1–4y", "5–19y", "≥20y"]
        );
        assert_eq!(l.entry("trunk side").unwrap().description, "left = somewhat, right = very much");
        assert!(l.entry("ego").is_none());
    }

    #[test]
    fn leaf_side_channel_gets_entry() {
        let mut spec = preset_mapping("diary-default").unwrap();
        spec.leaf_side = LeafSide::Channel(crate::mapping::BooleanChannel::new(
            "duration",
            Predicate::GreaterThan(30.0),
        ));
        let l = legend_for(&spec);
        assert_eq!(l.entry("leaf side").unwrap().description, "above = duration > 30, below = otherwise");
    }

    #[test]
    fn size_grows_with_entries() {
        let (w, h) = legend_size(&LegendModel::default());
        assert_eq!(h, 2.0 * LEGEND_PADDING);
        assert!(w > 0.0);
        let l = legend_for(&preset_mapping("diary-default").unwrap());
        assert_eq!(legend_size(&l).1, 2.0 * LEGEND_PADDING + 8.0 * LEGEND_LINE_HEIGHT);
    }
}
