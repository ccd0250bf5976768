use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exact::{rational, Interval, SqrtSum};

/// A point with binary floating-point coordinates, each taken as an exact value.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn x_exact(&self) -> BigRational {
        rational(self.x)
    }

    pub fn y_exact(&self) -> BigRational {
        rational(self.y)
    }

    /// Lexicographic order on `(x, y)`.
    #[inline]
    pub fn lex_cmp(&self, o: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }

    /// Approximate distance, for heuristics only.
    #[inline]
    pub fn dist(&self, o: &Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    #[inline]
    pub fn sq_dist_f64(&self, o: &Point) -> f64 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy
    }
}

impl Eq for Point {}

impl std::hash::Hash for Point {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.x.to_bits().hash(state);
        self.y.to_bits().hash(state);
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Exact squared distance.
pub fn sq_dist_exact(a: &Point, b: &Point) -> BigRational {
    let dx = a.x_exact() - b.x_exact();
    let dy = a.y_exact() - b.y_exact();
    &dx * &dx + &dy * &dy
}

#[inline]
fn two_sum_exact(a: f64, b: f64) -> Option<f64> {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (err == 0.0 && s.is_finite()).then_some(s)
}

#[inline]
fn square_exact(x: f64) -> Option<f64> {
    let p = x * x;
    (x.mul_add(x, -p) == 0.0 && p.is_finite()).then_some(p)
}

/// Enclosure of the squared distance; a point interval whenever the `f64`
/// evaluation happens to be exact, which is common for integer coordinates.
#[inline]
pub fn sq_dist_interval(a: &Point, b: &Point) -> Interval {
    let exact = two_sum_exact(a.x, -b.x)
        .zip(two_sum_exact(a.y, -b.y))
        .and_then(|(dx, dy)| square_exact(dx).zip(square_exact(dy)))
        .and_then(|(x2, y2)| two_sum_exact(x2, y2));
    if let Some(v) = exact {
        return Interval::point(v);
    }
    let dx = Interval::point(a.x) - Interval::point(b.x);
    let dy = Interval::point(a.y) - Interval::point(b.y);
    dx.square() + dy.square()
}

/// Enclosure of the distance.
#[inline]
pub fn dist_interval(a: &Point, b: &Point) -> Interval {
    sq_dist_interval(a, b).sqrt()
}

/// The distance as an exact square-root sum.
pub fn dist_exact(a: &Point, b: &Point) -> SqrtSum {
    SqrtSum::sqrt(sq_dist_exact(a, b))
}

/// Canonical undirected edge between two point ids, stored with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: u32,
    pub b: u32,
}

impl Edge {
    #[inline]
    pub fn new(u: usize, v: usize) -> Self {
        debug_assert_ne!(u, v, "degenerate edge");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        Edge {
            a: a as u32,
            b: b as u32,
        }
    }

    #[inline]
    pub fn u(&self) -> usize {
        self.a as usize
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.b as usize
    }

    #[inline]
    pub fn has(&self, p: usize) -> bool {
        self.u() == p || self.v() == p
    }

    #[inline]
    pub fn other(&self, p: usize) -> usize {
        if self.u() == p {
            self.v()
        } else {
            self.u()
        }
    }

    #[inline]
    pub fn key(&self) -> u64 {
        ((self.a as u64) << 32) | self.b as u64
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}
