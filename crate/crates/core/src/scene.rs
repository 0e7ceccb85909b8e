//! Render-ready scene graph.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::attr::Period;
use crate::diary::{ContactId, EgoId, TieId};
use crate::geom::{Point, Rect};
use crate::mapping::{BranchSide, Scalar, Side};
use crate::render::LegendModel;

/// One cubic Bézier piece: two control points and the end point. The start
/// is the previous piece's end (or the chain start).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicPiece {
    pub c1: Point,
    pub c2: Point,
    pub end: Point,
}

impl CubicPiece {
    pub fn eval(&self, start: Point, t: f64) -> Point {
        let s = 1.0 - t;
        start * (s * s * s) + self.c1 * (3.0 * s * s * t) + self.c2 * (3.0 * s * t * t) + self.end * (t * t * t)
    }
}

impl Serialize for CubicPiece {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.c1.x, self.c1.y, self.c2.x, self.c2.y, self.end.x, self.end.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for CubicPiece {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, c, e, f, g] = <[f64; 6]>::deserialize(d)?;
        Ok(Self {
            c1: Point::new(a, b),
            c2: Point::new(c, e),
            end: Point::new(f, g),
        })
    }
}

/// A C¹ chain of cubic pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicChain {
    pub start: Point,
    pub pieces: Vec<CubicPiece>,
}

impl CubicChain {
    pub fn end(&self) -> Point {
        self.pieces.last().map_or(self.start, |p| p.end)
    }

    /// Evaluates the chain at `u ∈ [0, 1]`, each piece spanning an equal
    /// share of the parameter range.
    pub fn eval(&self, u: f64) -> Point {
        let n = self.pieces.len();
        if n == 0 {
            return self.start;
        }
        let scaled = (u.clamp(0.0, 1.0)) * n as f64;
        let i = (libm::floor(scaled) as usize).min(n - 1);
        let t = scaled - i as f64;
        let start = if i == 0 { self.start } else { self.pieces[i - 1].end };
        self.pieces[i].eval(start, t)
    }

    /// Start point followed by every control and end point.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        core::iter::once(self.start).chain(self.pieces.iter().flat_map(|p| [p.c1, p.c2, p.end]))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub tie: TieId,
    pub base_index: usize,
    pub side: Side,
    pub band: usize,
    pub branch_side: BranchSide,
    pub fruit_count: u8,
    pub chain: CubicChain,
    pub stroke_width: f64,
    pub color: String,
    /// Raw tie attributes, for search and highlight in viewers.
    pub attributes: BTreeMap<String, Scalar>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leaf {
    pub contact: ContactId,
    pub tie: TieId,
    pub center: Point,
    /// Orientation of the leaf's long axis, degrees from +x.
    pub angle: f64,
    pub radius: f64,
    pub darkness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fruit {
    pub tie: TieId,
    pub center: Point,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlyphKind {
    Bird,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Glyph {
    pub kind: GlyphKind,
    pub position: Point,
    /// 0 for the first bird, 1 for its partner.
    pub slot: u8,
    pub size: f64,
    pub side: Side,
    pub band: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedTie {
    pub tie: TieId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneMeta {
    pub ego: EgoId,
    pub period: Option<Period>,
    pub mapping_name: String,
    /// Ties of the ego left out because a mapped attribute was unusable.
    #[serde(default)]
    pub excluded: Vec<ExcludedTie>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneGraph {
    pub meta: SceneMeta,
    pub bounds: Rect,
    /// Rectangle reserved for the legend strip below the tree.
    pub legend_area: Rect,
    /// In base order.
    pub curves: Vec<Curve>,
    /// By contact id.
    pub leaves: Vec<Leaf>,
    pub fruits: Vec<Fruit>,
    pub glyphs: Vec<Glyph>,
    pub legend: LegendModel,
}

impl SceneGraph {
    /// Visits every coordinate and length. Used to quantize floats before
    /// serialization.
    pub fn visit_numbers(&mut self, f: &mut dyn FnMut(&mut f64)) {
        let pt = |p: &mut Point, f: &mut dyn FnMut(&mut f64)| {
            f(&mut p.x);
            f(&mut p.y);
        };
        for r in [&mut self.bounds, &mut self.legend_area] {
            f(&mut r.min_x);
            f(&mut r.min_y);
            f(&mut r.max_x);
            f(&mut r.max_y);
        }
        for c in &mut self.curves {
            pt(&mut c.chain.start, f);
            for p in &mut c.chain.pieces {
                pt(&mut p.c1, f);
                pt(&mut p.c2, f);
                pt(&mut p.end, f);
            }
            f(&mut c.stroke_width);
        }
        for l in &mut self.leaves {
            pt(&mut l.center, f);
            f(&mut l.angle);
            f(&mut l.radius);
            f(&mut l.darkness);
        }
        for fr in &mut self.fruits {
            pt(&mut fr.center, f);
            f(&mut fr.radius);
        }
        for g in &mut self.glyphs {
            pt(&mut g.position, f);
            f(&mut g.size);
        }
    }

    /// Rounds every number to `places` decimals and clears negative zero.
    pub fn quantize(&mut self, places: u32) {
        let k = libm::pow(10.0, f64::from(places));
        self.visit_numbers(&mut |v| {
            let r = libm::round(*v * k) / k;
            *v = if r == 0.0 { 0.0 } else { r };
        });
    }

    /// Every number in the scene is finite.
    pub fn is_finite(&self) -> bool {
        let mut ok = true;
        self.clone().visit_numbers(&mut |v| ok &= v.is_finite());
        ok
    }
}
