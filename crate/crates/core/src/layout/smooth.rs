//! Replaces skeleton polylines by cubic Bézier chains through points spread
//! uniformly along them.

use alloc::vec::Vec;

use super::{LayoutError, LayoutParams, Skeleton};
use crate::geom::Point;
use crate::scene::{CubicChain, CubicPiece};

fn polyline_length(points: &[Point]) -> f64 {
    points.windows(2).map(|w| w[0].distance(w[1])).sum()
}

/// `count` points at equal arc-length spacing, first and last exactly the
/// polyline's endpoints.
pub fn sample_uniform(points: &[Point], count: usize) -> Vec<Point> {
    let total = polyline_length(points);
    let last = *points.last().expect("non-empty polyline");
    let mut out = Vec::with_capacity(count);
    out.push(points[0]);
    let mut seg = 0;
    let mut seg_start = 0.0;
    for k in 1..count.saturating_sub(1) {
        let target = total * k as f64 / (count - 1) as f64;
        loop {
            let len = points[seg].distance(points[seg + 1]);
            if seg_start + len >= target || seg + 2 == points.len() {
                let t = if len > 0.0 { ((target - seg_start) / len).clamp(0.0, 1.0) } else { 0.0 };
                out.push(points[seg].lerp(points[seg + 1], t));
                break;
            }
            seg_start += len;
            seg += 1;
        }
    }
    if count > 1 {
        out.push(last);
    }
    out
}

/// C¹ cubic chain through `samples` with Catmull-Rom interior tangents and
/// end tangents along the first and last chords.
pub fn interpolate(samples: &[Point]) -> CubicChain {
    let n = samples.len();
    let tangent = |k: usize| -> Point {
        if n < 2 {
            Point::ORIGIN
        } else if k == 0 {
            samples[1] - samples[0]
        } else if k == n - 1 {
            samples[n - 1] - samples[n - 2]
        } else {
            (samples[k + 1] - samples[k - 1]) * 0.5
        }
    };
    let pieces = (0..n.saturating_sub(1))
        .map(|k| CubicPiece {
            c1: samples[k] + tangent(k) * (1.0 / 3.0),
            c2: samples[k + 1] - tangent(k + 1) * (1.0 / 3.0),
            end: samples[k + 1],
        })
        .collect();
    CubicChain {
        start: samples[0],
        pieces,
    }
}

/// Number of samples used for a polyline of the given length.
pub fn sample_count(length: f64, params: &LayoutParams) -> usize {
    let min = params.spline_samples.max(4);
    match params.spline_max_step {
        Some(step) if step > 0.0 => min.max(libm::ceil(length / step) as usize + 1),
        _ => min,
    }
}

pub fn smooth_polyline(points: &[Point], params: &LayoutParams) -> Result<CubicChain, LayoutError> {
    let distinct = points.windows(2).any(|w| w[0] != w[1]);
    if points.len() < 2 || !distinct {
        return Err(LayoutError::DegeneratePolyline);
    }
    let samples = sample_uniform(points, sample_count(polyline_length(points), params));
    Ok(interpolate(&samples))
}

/// One chain per skeleton tie, in base order.
pub fn smooth_lines(skeleton: &Skeleton, params: &LayoutParams) -> Result<Vec<CubicChain>, LayoutError> {
    skeleton
        .ties
        .iter()
        .map(|t| smooth_polyline(&t.points, params))
        .collect()
}
