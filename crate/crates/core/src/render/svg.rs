//! Deterministic SVG 1.1 writer. Scene coordinates are y-up; the document
//! flips them so the trunk grows upward on screen.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::legend::{LEGEND_LINE_HEIGHT, LEGEND_PADDING, LEGEND_SWATCH};
use super::{StyleSheet, Swatch};
use crate::geom::{Point, Rect};
use crate::scene::SceneGraph;

/// Blank margin around the scene bounds.
pub const SVG_MARGIN: f64 = 10.0;
const CAPTION_HEIGHT: f64 = 18.0;
const PANEL_GAP: f64 = 24.0;

/// Bird outline in units of the glyph size, centered on the glyph position.
const BIRD: [(f64, f64); 12] = [
    (-0.50, 0.10),
    (-0.30, 0.35),
    (-0.10, 0.15),
    (0.00, 0.20),
    (0.10, 0.15),
    (0.30, 0.35),
    (0.50, 0.10),
    (0.20, 0.00),
    (0.10, -0.25),
    (0.00, -0.35),
    (-0.10, -0.25),
    (-0.20, 0.00),
];

struct Writer<'a> {
    out: String,
    style: &'a StyleSheet,
}

pub fn escape(text: &str) -> String {
    let mut s = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => s.push_str("&amp;"),
            '<' => s.push_str("&lt;"),
            '>' => s.push_str("&gt;"),
            '"' => s.push_str("&quot;"),
            '\'' => s.push_str("&apos;"),
            _ => s.push(c),
        }
    }
    s
}

/// Fixed-point formatting without a negative zero.
pub fn format_number(v: f64, precision: usize) -> String {
    let v = if v.is_finite() { v } else { 0.0 };
    let s = alloc::format!("{v:.precision$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        String::from(&s[1..])
    } else {
        s
    }
}

impl Writer<'_> {
    fn n(&self, v: f64) -> String {
        format_number(v, self.style.precision)
    }

    /// "x y" of a scene point after the y flip.
    fn p(&self, p: Point) -> String {
        alloc::format!("{} {}", self.n(p.x), self.n(-p.y))
    }

    fn line(&mut self, s: &str) {
        self.out.push_str(s);
        self.out.push('\n');
    }

    fn scene_body(&mut self, scene: &SceneGraph) {
        let style = self.style;
        let pal = &style.palette;
        let b = scene.bounds.expanded(SVG_MARGIN);
        let bg = alloc::format!(
            "<rect class=\"background\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
            self.n(b.min_x),
            self.n(-b.max_y),
            self.n(b.width()),
            self.n(b.height()),
            pal.background
        );
        self.line(&bg);

        self.line("<g class=\"curves\" fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">");
        let mut curves: Vec<_> = scene.curves.iter().collect();
        curves.sort_by_key(|c| c.base_index);
        for c in curves {
            let mut d = alloc::format!("M{}", self.p(c.chain.start));
            for piece in &c.chain.pieces {
                let _ = write!(d, " C{} {} {}", self.p(piece.c1), self.p(piece.c2), self.p(piece.end));
            }
            let el = alloc::format!(
                "<path data-tie=\"{}\" d=\"{d}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                escape(c.tie.as_str()),
                escape(&c.color),
                self.n(c.stroke_width)
            );
            self.line(&el);
        }
        self.line("</g>");

        self.line("<g class=\"leaves\" stroke=\"none\">");
        let mut leaves: Vec<_> = scene.leaves.iter().collect();
        leaves.sort_by(|a, b| a.contact.cmp(&b.contact));
        for l in leaves {
            let d = self.leaf_path(l.center, l.angle, l.radius);
            let el = alloc::format!(
                "<path data-contact=\"{}\" d=\"{d}\" fill=\"{}\"/>",
                escape(l.contact.as_str()),
                style.leaf_color(l.darkness)
            );
            self.line(&el);
        }
        self.line("</g>");

        let fruit_group = alloc::format!("<g class=\"fruits\" fill=\"{}\">", pal.fruit);
        self.line(&fruit_group);
        for f in &scene.fruits {
            let el = alloc::format!(
                "<circle data-tie=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                escape(f.tie.as_str()),
                self.n(f.center.x),
                self.n(-f.center.y),
                self.n(f.radius)
            );
            self.line(&el);
        }
        self.line("</g>");

        let glyph_group = alloc::format!("<g class=\"glyphs\" fill=\"{}\">", pal.bird);
        self.line(&glyph_group);
        for g in &scene.glyphs {
            let mut d = String::new();
            for (i, (x, y)) in BIRD.iter().enumerate() {
                // Mirror so the bird faces away from the trunk.
                let q = g.position + Point::new(x * g.size * g.side.sign(), y * g.size);
                let _ = write!(d, "{}{}", if i == 0 { "M" } else { " L" }, self.p(q));
            }
            d.push_str(" Z");
            let el = alloc::format!(
                "<path class=\"bird\" data-ego=\"{}\" data-slot=\"{}\" d=\"{d}\"/>",
                escape(scene.meta.ego.as_str()),
                g.slot
            );
            self.line(&el);
        }
        self.line("</g>");

        self.legend(scene);
    }

    /// Pointed ellipse: two mirrored quadratic arcs between the tips.
    fn leaf_path(&self, center: Point, angle_deg: f64, r: f64) -> String {
        let a = angle_deg.to_radians();
        let along = Point::new(libm::cos(a), libm::sin(a)) * r;
        let across = Point::new(-along.y, along.x);
        let tail = center - along;
        let tip = center + along;
        alloc::format!(
            "M{} Q{} {} Q{} {} Z",
            self.p(tail),
            self.p(center + across),
            self.p(tip),
            self.p(center - across),
            self.p(tail)
        )
    }

    fn legend(&mut self, scene: &SceneGraph) {
        let style = self.style;
        let pal = &style.palette;
        let area = scene.legend_area;
        let head = alloc::format!(
            "<g class=\"legend\" font-family=\"{}\" font-size=\"10\" fill=\"{}\">",
            escape(&style.font_family),
            pal.ink
        );
        self.line(&head);
        let frame = alloc::format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"0.5\"/>",
            self.n(area.min_x),
            self.n(-area.max_y),
            self.n(area.width()),
            self.n(area.height()),
            pal.ink
        );
        self.line(&frame);
        for (i, e) in scene.legend.entries.iter().enumerate() {
            let row_top = area.max_y - LEGEND_PADDING - i as f64 * LEGEND_LINE_HEIGHT;
            let mid = row_top - LEGEND_LINE_HEIGHT / 2.0;
            let x0 = area.min_x + LEGEND_PADDING;
            let swatch = match e.swatch {
                Swatch::Trunk | Swatch::Branch => {
                    let color = if e.swatch == Swatch::Trunk { &pal.trunk_ramp[0] } else { &pal.trunk_ramp[1] };
                    alloc::format!(
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>",
                        self.n(x0),
                        self.n(-mid),
                        self.n(x0 + LEGEND_SWATCH),
                        self.n(-mid),
                        color
                    )
                }
                Swatch::Fruit => alloc::format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>",
                    self.n(x0 + LEGEND_SWATCH / 2.0),
                    self.n(-mid),
                    pal.fruit
                ),
                Swatch::Leaf => alloc::format!(
                    "<path d=\"{}\" fill=\"{}\"/>",
                    self.leaf_path(Point::new(x0 + LEGEND_SWATCH / 2.0, mid), 0.0, 5.0),
                    pal.leaf_ramp[1]
                ),
                Swatch::Bird => alloc::format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{}\"/>",
                    self.n(x0 + LEGEND_SWATCH / 2.0),
                    self.n(-mid),
                    pal.bird
                ),
            };
            self.line(&swatch);
            let text = alloc::format!(
                "<text x=\"{}\" y=\"{}\">{}</text>",
                self.n(x0 + LEGEND_SWATCH + 4.0),
                self.n(-(mid - 3.5)),
                escape(&e.text())
            );
            self.line(&text);
        }
        self.line("</g>");
    }

    fn open(&mut self, view: Rect) {
        self.line("<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
        let head = alloc::format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
            self.n(view.min_x),
            self.n(-view.max_y),
            self.n(view.width()),
            self.n(view.height()),
            self.n(view.width()),
            self.n(view.height())
        );
        self.line(&head);
    }
}

/// Standalone SVG document for one scene.
pub fn scene_to_svg(scene: &SceneGraph, style: &StyleSheet) -> Vec<u8> {
    let mut w = Writer {
        out: String::new(),
        style,
    };
    w.open(scene.bounds.expanded(SVG_MARGIN));
    w.scene_body(scene);
    w.line("</svg>");
    w.out.into_bytes()
}

/// Panels side by side on a common ground line and scale, each captioned.
pub fn panels_to_svg(panels: &[(String, SceneGraph)], style: &StyleSheet) -> Vec<u8> {
    let mut w = Writer {
        out: String::new(),
        style,
    };
    let top = panels.iter().map(|(_, s)| s.bounds.max_y).fold(0.0, f64::max) + SVG_MARGIN;
    let bottom = panels.iter().map(|(_, s)| s.bounds.min_y).fold(0.0, f64::min) - SVG_MARGIN;
    let mut offsets = Vec::with_capacity(panels.len());
    let mut cursor = 0.0;
    for (i, (_, s)) in panels.iter().enumerate() {
        if i > 0 {
            cursor += PANEL_GAP;
        }
        let b = s.bounds.expanded(SVG_MARGIN);
        offsets.push(cursor - b.min_x);
        cursor += b.width();
    }
    w.open(Rect::new(0.0, bottom, cursor.max(1.0), top + CAPTION_HEIGHT));
    let bg = alloc::format!(
        "<rect class=\"canvas\" x=\"0\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
        w.n(-(top + CAPTION_HEIGHT)),
        w.n(cursor.max(1.0)),
        w.n(top + CAPTION_HEIGHT - bottom),
        style.palette.background
    );
    w.line(&bg);
    for ((caption, scene), dx) in panels.iter().zip(offsets) {
        let g = alloc::format!("<g class=\"panel\" transform=\"translate({} 0)\">", w.n(dx));
        w.line(&g);
        let cx = (scene.bounds.min_x + scene.bounds.max_x) / 2.0;
        let text = alloc::format!(
            "<text class=\"caption\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"{}\" font-size=\"12\" fill=\"{}\">{}</text>",
            w.n(cx),
            w.n(-(top + 4.0)),
            escape(&style.font_family),
            style.palette.ink,
            escape(caption)
        );
        w.line(&text);
        w.scene_body(scene);
        w.line("</g>");
    }
    w.line("</svg>");
    w.out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_fixed_point() {
        assert_eq!(format_number(-0.0001, 3), "0.000");
        assert_eq!(format_number(-0.0, 3), "0.000");
        assert_eq!(format_number(1e21, 3), "1000000000000000000000.000");
        assert_eq!(format_number(-2.5, 1), "-2.5");
        assert_eq!(format_number(0.0005, 3), "0.001");
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }
}
