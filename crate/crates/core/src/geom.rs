//! 2D points and rectangles. y points up.

use core::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Self = Self { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn length(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn distance(self, o: Self) -> f64 {
        (self - o).length()
    }

    /// Unit vector, or zero for a zero vector.
    pub fn normalized(self) -> Self {
        let l = self.length();
        if l > 0.0 {
            self * (1.0 / l)
        } else {
            Self::ORIGIN
        }
    }

    pub fn lerp(self, o: Self, t: f64) -> Self {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counter-clockwise rotation by `radians`.
    pub fn rotated(self, radians: f64) -> Self {
        let (s, c) = (libm::sin(radians), libm::cos(radians));
        Self::new(self.x * c - self.y * s, self.x * s + self.y * c)
    }

    /// Angle from the +x axis in degrees.
    pub fn angle_deg(self) -> f64 {
        libm::atan2(self.y, self.x).to_degrees()
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(f(self.x), f(self.y))
    }
}

impl Add for Point {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        Ok(Self { x, y })
    }
}

/// Distance from `p` to the closed segment `a`–`b`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// True when the open segments cross at a single interior point.
pub fn segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = (b - a).cross(c - a);
    let d2 = (b - a).cross(d - a);
    let d3 = (d - c).cross(a - c);
    let d4 = (d - c).cross(b - c);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Rect {
    pub const EMPTY: Self = Self {
        min_x: f64::INFINITY,
        min_y: f64::INFINITY,
        max_x: f64::NEG_INFINITY,
        max_y: f64::NEG_INFINITY,
    };

    pub fn new(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Self {
        Self {
            min_x,
            min_y,
            max_x,
            max_y,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.min_x > self.max_x || self.min_y > self.max_y
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    pub fn include(&mut self, p: Point) {
        self.include_circle(p, 0.0);
    }

    pub fn include_circle(&mut self, c: Point, r: f64) {
        self.min_x = self.min_x.min(c.x - r);
        self.min_y = self.min_y.min(c.y - r);
        self.max_x = self.max_x.max(c.x + r);
        self.max_y = self.max_y.max(c.y + r);
    }

    pub fn include_rect(&mut self, o: &Rect) {
        if !o.is_empty() {
            self.min_x = self.min_x.min(o.min_x);
            self.min_y = self.min_y.min(o.min_y);
            self.max_x = self.max_x.max(o.max_x);
            self.max_y = self.max_y.max(o.max_y);
        }
    }

    pub fn contains_circle(&self, c: Point, r: f64) -> bool {
        c.x - r >= self.min_x && c.x + r <= self.max_x && c.y - r >= self.min_y && c.y + r <= self.max_y
    }

    pub fn expanded(&self, m: f64) -> Self {
        Self::new(self.min_x - m, self.min_y - m, self.max_x + m, self.max_y + m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_predicate() {
        let o = Point::ORIGIN;
        assert!(segments_properly_cross(o, Point::new(2.0, 2.0), Point::new(0.0, 2.0), Point::new(2.0, 0.0)));
        // Touching at an endpoint is not a proper crossing.
        assert!(!segments_properly_cross(o, Point::new(2.0, 2.0), Point::new(2.0, 2.0), Point::new(3.0, 0.0)));
        // Parallel.
        assert!(!segments_properly_cross(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0)));
    }

    #[test]
    fn segment_distance() {
        let d = point_segment_distance(Point::new(1.0, 1.0), Point::ORIGIN, Point::new(2.0, 0.0));
        assert!((d - 1.0).abs() < 1e-12);
        let d = point_segment_distance(Point::new(-3.0, 4.0), Point::ORIGIN, Point::new(2.0, 0.0));
        assert!((d - 5.0).abs() < 1e-12);
    }
}
