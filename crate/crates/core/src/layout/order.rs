//! Step 1: order ties along the trunk base.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::mapping::{BranchSide, Side, TieChannelValues};

/// Ties in base order, left to right. `ties[i]` sits at base index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderedTies {
    pub ties: Vec<TieChannelValues>,
}

impl OrderedTies {
    pub fn len(&self) -> usize {
        self.ties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ties.is_empty()
    }

    pub fn left_count(&self) -> usize {
        self.ties.iter().take_while(|t| t.side == Side::Left).count()
    }

    pub fn base_index(&self, tie: &str) -> Option<usize> {
        self.ties.iter().position(|t| t.tie.as_str() == tie)
    }
}

fn branch_rank(side: BranchSide) -> u8 {
    match side {
        BranchSide::Below => 0,
        BranchSide::Above => 1,
    }
}

fn base_order(a: &TieChannelValues, b: &TieChannelValues) -> Ordering {
    match (a.side, b.side) {
        (Side::Left, Side::Right) => Ordering::Less,
        (Side::Right, Side::Left) => Ordering::Greater,
        // Left block: bands bottom to top, below before above.
        (Side::Left, Side::Left) => a
            .band
            .cmp(&b.band)
            .then(branch_rank(a.branch_side).cmp(&branch_rank(b.branch_side)))
            .then_with(|| a.tie.cmp(&b.tie)),
        // Right block mirrors it: bands top to bottom, above before below.
        (Side::Right, Side::Right) => b
            .band
            .cmp(&a.band)
            .then(branch_rank(b.branch_side).cmp(&branch_rank(a.branch_side)))
            .then_with(|| a.tie.cmp(&b.tie)),
    }
}

/// Left ties from the lowest band up, then right ties from the highest band
/// down. Within a main branch, left ties go below-then-above and right ties
/// above-then-below; tie id breaks the remaining ties.
pub fn order_ties(mut resolved: Vec<TieChannelValues>) -> OrderedTies {
    resolved.sort_by(base_order);
    OrderedTies { ties: resolved }
}
