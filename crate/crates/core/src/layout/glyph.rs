//! Step 4: the bird glyph for the diary keeper.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{LayoutError, LayoutParams, Skeleton};
use crate::geom::Point;
use crate::mapping::EgoChannels;
use crate::scene::{Glyph, GlyphKind, Leaf};

/// Birds sit level with the ego's band, on the ego's side, just outside the
/// widest geometry of that main branch. Two birds side by side for a pair.
pub fn place_ego_glyph(
    ego: EgoChannels,
    skeleton: &Skeleton,
    leaves: &[Leaf],
    band_count: usize,
    params: &LayoutParams,
) -> Result<Vec<Glyph>, LayoutError> {
    if ego.band >= band_count {
        return Err(LayoutError::BandOutOfRange {
            band: ego.band,
            bands: band_count,
        });
    }
    let sign = ego.side.sign();
    let group: BTreeSet<&str> = skeleton
        .ties
        .iter()
        .filter(|t| t.side == ego.side && t.band == ego.band)
        .map(|t| t.tie.as_str())
        .collect();

    // Outward extent measured as sign * x.
    let mut widest = params.line_spacing / 2.0;
    for t in skeleton.ties.iter().filter(|t| t.side == ego.side) {
        widest = widest.max(sign * t.points[0].x + params.stroke_width / 2.0);
        if group.contains(t.tie.as_str()) {
            for p in &t.points {
                widest = widest.max(sign * p.x + params.stroke_width / 2.0);
            }
        }
    }
    for l in leaves.iter().filter(|l| group.contains(l.tie.as_str())) {
        widest = widest.max(sign * l.center.x + l.radius);
    }

    let size = params.bird_size;
    let y = params.band_y(ego.band);
    Ok((0..ego.count.clamp(1, 2))
        .map(|slot| {
            let out = widest + params.bird_margin + size / 2.0 + f64::from(slot) * (size + 2.0);
            Glyph {
                kind: GlyphKind::Bird,
                position: Point::new(sign * out, y),
                slot,
                size,
                side: ego.side,
                band: ego.band,
            }
        })
        .collect())
}
