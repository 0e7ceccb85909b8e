//! Step 2: the five-segment line of every tie.
//!
//! Segment 1 climbs the trunk to the band's height, segment 2 leaves the
//! trunk along the main branch, segment 3 continues along it until the tie
//! peels off, segment 4 bends toward the small branch's side and segment 5
//! carries the leaves.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{LayoutParams, OrderedTies};
use crate::diary::TieId;
use crate::geom::Point;
use crate::mapping::{BranchSide, Side};

#[derive(Debug, Clone, PartialEq)]
pub struct TieSkeleton {
    pub tie: TieId,
    pub base_index: usize,
    pub side: Side,
    pub band: usize,
    pub branch_side: BranchSide,
    /// Peel-off order within the main branch, per branch side.
    pub rank: usize,
    pub points: [Point; 6],
}

impl TieSkeleton {
    pub fn segment(&self, i: usize) -> (Point, Point) {
        (self.points[i], self.points[i + 1])
    }

    pub fn segment_length(&self, i: usize) -> f64 {
        let (a, b) = self.segment(i);
        a.distance(b)
    }

    /// Unit direction of segment 5.
    pub fn small_branch_direction(&self) -> Point {
        (self.points[5] - self.points[4]).normalized()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainBranch {
    pub side: Side,
    pub band: usize,
    /// Where the axis leaves the trunk, between the below and above bundles.
    pub anchor: Point,
    /// Unit direction of the axis.
    pub axis: Point,
}

impl MainBranch {
    /// Unit normal pointing to the upper side of the axis.
    pub fn above_normal(&self) -> Point {
        above_normal(self.side, self.axis)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Skeleton {
    /// In base order.
    pub ties: Vec<TieSkeleton>,
    /// Sorted by (side, band).
    pub branches: Vec<MainBranch>,
}

impl Skeleton {
    pub fn branch(&self, side: Side, band: usize) -> Option<&MainBranch> {
        self.branches.iter().find(|b| b.side == side && b.band == band)
    }

    pub fn tie(&self, id: &str) -> Option<&TieSkeleton> {
        self.ties.iter().find(|t| t.tie.as_str() == id)
    }
}

fn above_normal(side: Side, axis: Point) -> Point {
    // Perpendicular with positive y; the axis always climbs.
    let n = Point::new(-axis.y, axis.x);
    let n = if n.y < 0.0 || (n.y == 0.0 && n.x * side.sign() < 0.0) { -n } else { n };
    n.normalized()
}

/// Axis direction for a band: tilted outward from vertical.
pub fn axis_direction(side: Side, band: usize, params: &LayoutParams) -> Point {
    let theta = params.branch_angle(band).to_radians();
    Point::new(side.sign() * libm::sin(theta), libm::cos(theta))
}

/// Length of segment 5 for a tie carrying `leaves` leaves.
pub fn seg5_length(leaves: usize, params: &LayoutParams) -> f64 {
    (leaves as f64 * params.seg5_per_leaf).max(params.seg5_min)
}

/// Builds the skeleton. `leaf_counts[i]` is the leaf count of the tie at
/// base index `i`; missing entries count as zero.
pub fn build_skeleton(ordered: &OrderedTies, leaf_counts: &[usize], params: &LayoutParams) -> Skeleton {
    let ls = params.line_spacing;
    let center_offset = ordered.left_count() as f64 * ls - ls / 2.0;
    let base_x = |i: usize| i as f64 * ls - center_offset;

    let mut groups: BTreeMap<(Side, usize), Vec<usize>> = BTreeMap::new();
    for (i, t) in ordered.ties.iter().enumerate() {
        groups.entry((t.side, t.band)).or_default().push(i);
    }

    let mut ranks = alloc::vec![0usize; ordered.len()];
    let mut group_branch: BTreeMap<(Side, usize), MainBranch> = BTreeMap::new();
    for (&(side, band), members) in &groups {
        let axis = axis_direction(side, band, params);
        let normal = above_normal(side, axis);
        let xs = |which: BranchSide| {
            members
                .iter()
                .filter(move |&&i| ordered.ties[i].branch_side == which)
                .map(|&i| base_x(i))
        };
        // Sign of x along the above normal: the above bundle lies toward it.
        let up = if normal.x >= 0.0 { 1.0 } else { -1.0 };
        let below_edge = xs(BranchSide::Below).map(|x| x * up).fold(f64::NEG_INFINITY, f64::max);
        let above_edge = xs(BranchSide::Above).map(|x| x * up).fold(f64::INFINITY, f64::min);
        let boundary = match (below_edge.is_finite(), above_edge.is_finite()) {
            (true, true) => (below_edge + above_edge) / 2.0,
            (true, false) => below_edge + ls / 2.0,
            (false, true) => above_edge - ls / 2.0,
            (false, false) => unreachable!("group has members"),
        } * up;
        let anchor = Point::new(boundary, params.band_y(band));

        // Outermost line of each bundle peels off first.
        let lateral = |i: usize| (base_x(i) - anchor.x) * normal.x;
        let mut below: Vec<usize> = members.iter().copied().filter(|&i| ordered.ties[i].branch_side == BranchSide::Below).collect();
        let mut above: Vec<usize> = members.iter().copied().filter(|&i| ordered.ties[i].branch_side == BranchSide::Above).collect();
        below.sort_by(|&a, &b| lateral(a).total_cmp(&lateral(b)));
        above.sort_by(|&a, &b| lateral(b).total_cmp(&lateral(a)));
        for (rank, &i) in below.iter().enumerate() {
            ranks[i] = rank;
        }
        for (rank, &i) in above.iter().enumerate() {
            ranks[i] = rank;
        }
        group_branch.insert((side, band), MainBranch { side, band, anchor, axis });
    }

    let phi4 = params.seg4_angle.to_radians();
    let ties = ordered
        .ties
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let branch = &group_branch[&(t.side, t.band)];
            let u = branch.axis;
            let n_up = branch.above_normal();
            let n_side = match t.branch_side {
                BranchSide::Above => n_up,
                BranchSide::Below => -n_up,
            };
            let p0 = Point::new(base_x(i), 0.0);
            let p1 = Point::new(p0.x, branch.anchor.y);
            let p2 = p1 + u * params.seg2_length(t.band);
            let p3 = p2 + u * (ranks[i] as f64 * params.seg3_step);
            let d4 = u * libm::cos(phi4) + n_side * libm::sin(phi4);
            let p4 = p3 + d4 * params.seg4_length;
            let d5 = (u * libm::cos(phi4 / 2.0) + n_side * libm::sin(phi4 / 2.0)).normalized();
            let leaves = leaf_counts.get(i).copied().unwrap_or(0);
            let p5 = p4 + d5 * seg5_length(leaves, params);
            TieSkeleton {
                tie: t.tie.clone(),
                base_index: i,
                side: t.side,
                band: t.band,
                branch_side: t.branch_side,
                rank: ranks[i],
                points: [p0, p1, p2, p3, p4, p5],
            }
        })
        .collect();

    Skeleton {
        ties,
        branches: group_branch.into_values().collect(),
    }
}
