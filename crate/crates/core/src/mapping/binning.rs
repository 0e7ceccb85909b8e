use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::MappingError;
use crate::attr::{AttributeKind, AttributeValue};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BinKind {
    /// `floor(value / 10)`, clamped to the last band.
    DecadeBins,
    /// Band = number of edges `<=` value, clamped to the last band.
    ThresholdBins { edges: Vec<f64> },
    /// Band = ordinal level.
    OrdinalPassthrough,
}

impl BinKind {
    fn name(&self) -> &'static str {
        match self {
            Self::DecadeBins => "decade",
            Self::ThresholdBins { .. } => "threshold",
            Self::OrdinalPassthrough => "ordinal-passthrough",
        }
    }

    pub fn accepts(&self, kind: AttributeKind) -> bool {
        match self {
            Self::DecadeBins | Self::ThresholdBins { .. } => kind.is_numeric(),
            Self::OrdinalPassthrough => kind == AttributeKind::Ordinal,
        }
    }
}

/// Forces a band when the source attribute is absent or a flag attribute is
/// true. Used for "strangers", who have no meaningful tenure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentinelBand {
    pub band: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinningSpec {
    pub source: String,
    #[serde(flatten)]
    pub kind: BinKind,
    /// One label per band, bottom to top.
    pub band_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sentinel: Option<SentinelBand>,
}

impl BinningSpec {
    pub fn band_count(&self) -> usize {
        self.band_labels.len()
    }

    /// Structural problems (empty labels, unsorted edges, label count).
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.band_labels.len();
        if n == 0 {
            out.push("no bands declared".into());
        }
        if let BinKind::ThresholdBins { edges } = &self.kind {
            if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[0] >= w[1]) {
                out.push("threshold edges must be finite and strictly ascending".into());
            }
            if edges.len() + 1 != n {
                out.push(alloc::format!(
                    "{} edges define {} bands but {n} labels are given",
                    edges.len(),
                    edges.len() + 1
                ));
            }
        }
        if let Some(s) = &self.sentinel {
            if s.band >= n {
                out.push(alloc::format!("sentinel band {} outside {n} bands", s.band));
            }
        }
        out
    }
}

/// Maps a value onto a band index `0..band_count`, bottom to top.
pub fn bin_value(spec: &BinningSpec, value: &AttributeValue) -> Result<usize, MappingError> {
    let last = spec.band_count().saturating_sub(1);
    let incompatible = || MappingError::IncompatibleKind {
        kind: value.kind(),
        binning: spec.kind.name(),
    };
    if !spec.kind.accepts(value.kind()) {
        return Err(incompatible());
    }
    let band = match &spec.kind {
        BinKind::DecadeBins => {
            let v = value.as_f64().filter(|v| !v.is_nan()).ok_or_else(incompatible)?;
            let d = libm::floor(v / 10.0);
            if d <= 0.0 {
                0
            } else if d >= last as f64 {
                last
            } else {
                d as usize
            }
        }
        BinKind::ThresholdBins { edges } => {
            let v = value.as_f64().filter(|v| !v.is_nan()).ok_or_else(incompatible)?;
            edges.iter().filter(|e| **e <= v).count()
        }
        BinKind::OrdinalPassthrough => match value {
            AttributeValue::Ordinal { level, .. } => *level as usize,
            _ => return Err(incompatible()),
        },
    };
    Ok(band.min(last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn decades() -> BinningSpec {
        BinningSpec {
            source: "age".into(),
            kind: BinKind::DecadeBins,
            band_labels: (0..10).map(|d| alloc::format!("{}-{}", d * 10, d * 10 + 9)).collect(),
            sentinel: None,
        }
    }

    #[test]
    fn decade_examples() {
        let s = decades();
        assert_eq!(bin_value(&s, &AttributeValue::Integer(25)).unwrap(), 2);
        assert_eq!(bin_value(&s, &AttributeValue::Integer(0)).unwrap(), 0);
        assert_eq!(bin_value(&s, &AttributeValue::Integer(9)).unwrap(), 0);
        assert_eq!(bin_value(&s, &AttributeValue::Integer(10)).unwrap(), 1);
        assert_eq!(bin_value(&s, &AttributeValue::Integer(104)).unwrap(), 9);
        assert_eq!(bin_value(&s, &AttributeValue::Integer(-3)).unwrap(), 0);
        assert_eq!(bin_value(&s, &AttributeValue::Real(19.99)).unwrap(), 1);
    }

    #[test]
    fn threshold_counts_edges_at_or_below() {
        let s = BinningSpec {
            source: "years_known".into(),
            kind: BinKind::ThresholdBins {
                edges: vec![0.0, 1.0, 5.0, 20.0],
            },
            band_labels: vec!["s".into(), "a".into(), "b".into(), "c".into(), "d".into()],
            sentinel: None,
        };
        // Brute-force oracle: count edges <= v.
        for v in [-1.0, 0.0, 0.5, 1.0, 4.9, 5.0, 7.0, 19.9, 20.0, 60.0] {
            let expected = [0.0, 1.0, 5.0, 20.0].iter().filter(|e| **e <= v).count();
            assert_eq!(bin_value(&s, &AttributeValue::Real(v)).unwrap(), expected, "v={v}");
        }
        assert_eq!(bin_value(&s, &AttributeValue::Real(7.0)).unwrap(), 3);
        assert!(s.problems().is_empty());
    }

    #[test]
    fn incompatible_kinds() {
        let s = decades();
        assert!(matches!(
            bin_value(&s, &AttributeValue::text("old")),
            Err(MappingError::IncompatibleKind { .. })
        ));
        assert!(bin_value(&s, &AttributeValue::Real(f64::NAN)).is_err());
    }

    #[test]
    fn malformed_binning_reported() {
        let mut s = decades();
        s.kind = BinKind::ThresholdBins {
            edges: vec![5.0, 1.0],
        };
        assert_eq!(s.problems().len(), 2);
    }
}
