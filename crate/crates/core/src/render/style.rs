//! Colors, font and number formatting for SVG output.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Palette {
    /// Trunk and branch strokes, from the base band to the top band.
    pub trunk_ramp: [String; 2],
    /// Leaf fill from darkness 0 to darkness 1.
    pub leaf_ramp: [String; 2],
    pub fruit: String,
    pub bird: String,
    pub background: String,
    pub ink: String,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            trunk_ramp: ["#3e2614".into(), "#a47449".into()],
            leaf_ramp: ["#cfe8a9".into(), "#1e5b1e".into()],
            fruit: "#e8552d".into(),
            bird: "#3a3a3a".into(),
            background: "#ffffff".into(),
            ink: "#222222".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StyleSheet {
    pub palette: Palette,
    pub font_family: String,
    /// Decimal places of every number written to SVG.
    pub precision: usize,
}

impl Default for StyleSheet {
    fn default() -> Self {
        Self {
            palette: Palette::default(),
            font_family: "sans-serif".into(),
            precision: 3,
        }
    }
}

fn parse_hex(color: &str) -> Option<[u8; 3]> {
    let hex = color.strip_prefix('#')?;
    if hex.len() != 6 || !hex.is_ascii() {
        return None;
    }
    let byte = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).ok();
    Some([byte(0)?, byte(2)?, byte(4)?])
}

/// Linear blend of two `#rrggbb` colors; `t` is clamped to [0, 1].
pub fn mix(a: &str, b: &str, t: f64) -> String {
    let (Some(a), Some(b)) = (parse_hex(a), parse_hex(b)) else {
        return String::from(a);
    };
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let c = |i: usize| libm::round(f64::from(a[i]) + (f64::from(b[i]) - f64::from(a[i])) * t) as u8;
    alloc::format!("#{:02x}{:02x}{:02x}", c(0), c(1), c(2))
}

impl StyleSheet {
    /// Stroke color of band `band` out of `bands`; band 0 is darkest.
    pub fn trunk_color(&self, band: usize, bands: usize) -> String {
        let t = if bands > 1 { band as f64 / (bands - 1) as f64 } else { 0.0 };
        mix(&self.palette.trunk_ramp[0], &self.palette.trunk_ramp[1], t)
    }

    pub fn leaf_color(&self, darkness: f64) -> String {
        mix(&self.palette.leaf_ramp[0], &self.palette.leaf_ramp[1], darkness)
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.precision < 1 {
            out.push("precision must be at least 1".into());
        }
        let p = &self.palette;
        for (name, c) in [
            ("trunk_ramp[0]", &p.trunk_ramp[0]),
            ("trunk_ramp[1]", &p.trunk_ramp[1]),
            ("leaf_ramp[0]", &p.leaf_ramp[0]),
            ("leaf_ramp[1]", &p.leaf_ramp[1]),
            ("fruit", &p.fruit),
            ("bird", &p.bird),
            ("background", &p.background),
            ("ink", &p.ink),
        ] {
            if parse_hex(c).is_none() {
                out.push(alloc::format!("{name} `{c}` is not a #rrggbb color"));
            }
        }
        if p.trunk_ramp[0].eq_ignore_ascii_case(&p.trunk_ramp[1]) {
            out.push("trunk ramp endpoints must differ".into());
        }
        if p.leaf_ramp[0].eq_ignore_ascii_case(&p.leaf_ramp[1]) {
            out.push("leaf ramp endpoints must differ".into());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix_endpoints_and_middle() {
        assert_eq!(mix("#000000", "#ffffff", 0.0), "#000000");
        assert_eq!(mix("#000000", "#ffffff", 1.0), "#ffffff");
        assert_eq!(mix("#000000", "#ff0000", 0.5), "#800000");
        assert_eq!(mix("#000000", "#ffffff", 7.0), "#ffffff");
    }

    #[test]
    fn base_band_is_darkest() {
        let s = StyleSheet::default();
        let lum = |c: &str| parse_hex(c).unwrap().iter().map(|&v| u32::from(v)).sum::<u32>();
        assert!(lum(&s.trunk_color(0, 10)) < lum(&s.trunk_color(9, 10)));
        assert_eq!(s.trunk_color(0, 1), s.palette.trunk_ramp[0]);
    }

    #[test]
    fn default_is_valid() {
        assert!(StyleSheet::default().problems().is_empty());
        let mut s = StyleSheet {
            precision: 0,
            ..StyleSheet::default()
        };
        s.palette.leaf_ramp[1] = s.palette.leaf_ramp[0].clone();
        assert_eq!(s.problems().len(), 2);
    }
}
