use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// Geometry constants of the tree drawing. Every field has a default, so a
/// params file only lists what it overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LayoutParams {
    /// Horizontal distance between adjacent trunk base nodes.
    pub line_spacing: f64,
    pub stroke_width: f64,
    /// Rise of the trunk below the lowest main branch.
    pub base_rise: f64,
    /// Trunk rise per band.
    pub band_height: f64,
    /// Extra vertical gap between consecutive bands.
    pub main_branch_gap: f64,
    pub seg2_base_length: f64,
    /// Segment-2 length factor per band, in (0, 1].
    pub seg2_shrink: f64,
    /// Segment-2 angle from vertical at band 0, degrees.
    pub branch_base_angle: f64,
    /// Degrees removed per band.
    pub angle_sharpen: f64,
    /// Lower bound of the segment-2 angle, degrees.
    pub min_branch_angle: f64,
    pub seg3_step: f64,
    pub seg4_length: f64,
    /// Angle of segment 4 off the main-branch axis, degrees.
    pub seg4_angle: f64,
    pub seg5_per_leaf: f64,
    pub seg5_min: f64,
    pub leaf_radius_range: [f64; 2],
    pub leaf_spacing: f64,
    pub fruit_radius: f64,
    /// Minimum number of samples per polyline for smoothing.
    pub spline_samples: usize,
    /// Upper bound on the arc length between smoothing samples; long
    /// polylines get more samples. `None` keeps exactly `spline_samples`.
    pub spline_max_step: Option<f64>,
    /// Horizontal clearance between a band's outermost geometry and the bird.
    pub bird_margin: f64,
    /// Size of one bird glyph.
    pub bird_size: f64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        Self {
            line_spacing: 2.0,
            stroke_width: 2.4,
            base_rise: 24.0,
            band_height: 36.0,
            main_branch_gap: 10.0,
            seg2_base_length: 60.0,
            seg2_shrink: 0.85,
            branch_base_angle: 60.0,
            angle_sharpen: 8.0,
            min_branch_angle: 15.0,
            seg3_step: 10.0,
            seg4_length: 8.0,
            seg4_angle: 35.0,
            seg5_per_leaf: 6.0,
            seg5_min: 10.0,
            leaf_radius_range: [2.0, 6.0],
            leaf_spacing: 6.0,
            fruit_radius: 3.5,
            spline_samples: 16,
            spline_max_step: Some(4.0),
            bird_margin: 8.0,
            bird_size: 10.0,
        }
    }
}

impl LayoutParams {
    pub fn band_height(&self, _band: usize) -> f64 {
        self.band_height
    }

    /// Height of the main-branch anchors of `band`.
    pub fn band_y(&self, band: usize) -> f64 {
        self.base_rise + (0..band).map(|b| self.band_height(b) + self.main_branch_gap).sum::<f64>()
    }

    /// Segment-2 angle from vertical, degrees.
    pub fn branch_angle(&self, band: usize) -> f64 {
        (self.branch_base_angle - band as f64 * self.angle_sharpen).max(self.min_branch_angle)
    }

    pub fn seg2_length(&self, band: usize) -> f64 {
        self.seg2_base_length * libm::pow(self.seg2_shrink, band as f64)
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let positive = [
            ("line_spacing", self.line_spacing),
            ("stroke_width", self.stroke_width),
            ("base_rise", self.base_rise),
            ("band_height", self.band_height),
            ("seg2_base_length", self.seg2_base_length),
            ("seg3_step", self.seg3_step),
            ("seg4_length", self.seg4_length),
            ("seg5_per_leaf", self.seg5_per_leaf),
            ("seg5_min", self.seg5_min),
            ("leaf_spacing", self.leaf_spacing),
            ("fruit_radius", self.fruit_radius),
            ("bird_size", self.bird_size),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                out.push(alloc::format!("{name} must be a positive length"));
            }
        }
        let non_negative = [
            ("main_branch_gap", self.main_branch_gap),
            ("angle_sharpen", self.angle_sharpen),
            ("bird_margin", self.bird_margin),
        ];
        for (name, v) in non_negative {
            if !(v >= 0.0 && v.is_finite()) {
                out.push(alloc::format!("{name} must be non-negative"));
            }
        }
        if !(self.seg2_shrink > 0.0 && self.seg2_shrink <= 1.0) {
            out.push("seg2_shrink must lie in (0, 1]".into());
        }
        if !(0.0 < self.min_branch_angle && self.min_branch_angle <= self.branch_base_angle && self.branch_base_angle < 90.0) {
            out.push("branch angles must satisfy 0 < min_branch_angle <= branch_base_angle < 90".into());
        }
        if !(0.0..90.0).contains(&self.seg4_angle) {
            out.push("seg4_angle must lie in [0, 90)".into());
        }
        let [lo, hi] = self.leaf_radius_range;
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            out.push("leaf_radius_range needs 0 < min < max".into());
        }
        if self.spline_samples < 4 {
            out.push("spline_samples must be at least 4".into());
        }
        if let Some(step) = self.spline_max_step {
            if !(step > 0.0 && step.is_finite()) {
                out.push("spline_max_step must be positive".into());
            }
        }
        out
    }
}
