//! Step 3: leaves and fruits on the small branches.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{LayoutError, LayoutParams, Skeleton};
use crate::diary::TieId;
use crate::geom::Point;
use crate::mapping::{LeafChannelValues, LeafSlot};
use crate::scene::{Fruit, Leaf};

/// Unit normal of `dir` on its upper side (positive y). A vertical
/// direction picks the normal pointing away from the trunk.
pub(crate) fn upper_normal(dir: Point, outward: f64) -> Point {
    let n = Point::new(-dir.y, dir.x);
    if n.y < 0.0 || (n.y == 0.0 && n.x * outward < 0.0) {
        -n
    } else {
        n
    }
}

/// Places leaves along segment 5 (sorted by order key, then contact id) and
/// fruits on the lower side near its start.
pub fn place_adornments(
    skeleton: &Skeleton,
    leaves: &BTreeMap<TieId, Vec<LeafChannelValues>>,
    fruit_counts: &BTreeMap<TieId, u8>,
    params: &LayoutParams,
) -> Result<(Vec<Leaf>, Vec<Fruit>), LayoutError> {
    let index: BTreeMap<&str, usize> = skeleton
        .ties
        .iter()
        .enumerate()
        .map(|(i, t)| (t.tie.as_str(), i))
        .collect();
    for tie in leaves.keys().chain(fruit_counts.keys()) {
        if !index.contains_key(tie.as_str()) {
            return Err(LayoutError::UnknownTie(tie.clone()));
        }
    }

    let [r_min, r_max] = params.leaf_radius_range;
    let half_stroke = params.stroke_width / 2.0;
    let mut leaf_out = Vec::new();
    let mut fruit_out = Vec::new();

    for t in &skeleton.ties {
        let start = t.points[4];
        let dir = t.small_branch_direction();
        let length = t.segment_length(4);
        let up = upper_normal(dir, t.side.sign());
        let angle = dir.angle_deg();

        if let Some(list) = leaves.get(&t.tie) {
            let mut sorted: Vec<&LeafChannelValues> = list.iter().collect();
            sorted.sort_by(|a, b| a.order_key.cmp(&b.order_key).then_with(|| a.contact.cmp(&b.contact)));
            let n = sorted.len();
            let mut spacing = params.leaf_spacing;
            if n > 1 && (n - 1) as f64 * spacing > length {
                spacing = length / (n - 1) as f64;
            }
            for (i, leaf) in sorted.iter().enumerate() {
                let above = match leaf.side {
                    LeafSlot::Above => true,
                    LeafSlot::Below => false,
                    LeafSlot::Alternate => i % 2 == 0,
                };
                let radius = r_min + leaf.size.clamp(0.0, 1.0) * (r_max - r_min);
                let normal = if above { up } else { -up };
                let on_branch = start + dir * (i as f64 * spacing);
                leaf_out.push(Leaf {
                    contact: leaf.contact.clone(),
                    tie: t.tie.clone(),
                    center: on_branch + normal * (radius + half_stroke),
                    angle,
                    radius,
                    darkness: leaf.darkness.clamp(0.0, 1.0),
                });
            }
        }

        let fruits = fruit_counts.get(&t.tie).copied().unwrap_or(0).min(2);
        let fr = params.fruit_radius;
        for k in 0..fruits {
            let along = fr + f64::from(k) * fr * 2.5;
            fruit_out.push(Fruit {
                tie: t.tie.clone(),
                center: start + dir * along - up * (fr + half_stroke),
                radius: fr,
            });
        }
    }

    leaf_out.sort_by(|a, b| a.contact.cmp(&b.contact));
    Ok((leaf_out, fruit_out))
}
