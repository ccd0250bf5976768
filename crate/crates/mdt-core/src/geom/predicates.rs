//! Exact orientation, in-circle and segment predicates.
//!
//! The underlying adaptive predicates are exact for `f64` inputs whose
//! intermediate products neither overflow nor underflow.

use std::cmp::Ordering;

use robust::Coord;

use super::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Cw,
    Ccw,
    Collinear,
}

#[inline]
fn c(p: &Point) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

/// Sign of the cross product `(q - p) x (r - p)`; `Greater` is counterclockwise.
#[inline]
pub fn orient(p: &Point, q: &Point, r: &Point) -> Ordering {
    let d = robust::orient2d(c(p), c(q), c(r));
    d.partial_cmp(&0.0).expect("orientation is finite")
}

#[inline]
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    match orient(p, q, r) {
        Ordering::Greater => Orientation::Ccw,
        Ordering::Less => Orientation::Cw,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// `Greater` iff `d` lies strictly inside the circle through the
/// counterclockwise triangle `a, b, c`.
#[inline]
pub fn incircle(a: &Point, b: &Point, cc: &Point, d: &Point) -> Ordering {
    let v = robust::incircle(c(a), c(b), c(cc), c(d));
    v.partial_cmp(&0.0).expect("incircle is finite")
}

/// Whether the open segments `ab` and `cd` share a point.
///
/// Segments meeting only at an endpoint of either one do not cross.
pub fn segments_cross(a: &Point, b: &Point, cc: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, cc);
    let o2 = orient(a, b, d);
    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        return collinear_open_overlap(a, b, cc, d);
    }
    let o3 = orient(cc, d, a);
    let o4 = orient(cc, d, b);
    o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
        && o1 != o2
        && o3 != o4
}

/// Proper crossing: the segments meet in a single point interior to both.
#[inline]
pub fn segments_cross_properly(a: &Point, b: &Point, cc: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, cc);
    let o2 = orient(a, b, d);
    if o1 == Ordering::Equal || o2 == Ordering::Equal || o1 == o2 {
        return false;
    }
    let o3 = orient(cc, d, a);
    let o4 = orient(cc, d, b);
    o3 != Ordering::Equal && o4 != Ordering::Equal && o3 != o4
}

fn collinear_open_overlap(a: &Point, b: &Point, cc: &Point, d: &Point) -> bool {
    let key = |p: &Point| if a.x != b.x { p.x } else { p.y };
    let (a0, a1) = minmax(key(a), key(b));
    let (c0, c1) = minmax(key(cc), key(d));
    a0.max(c0) < a1.min(c1)
}

#[inline]
fn minmax(x: f64, y: f64) -> (f64, f64) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Whether `p` lies in the relative interior of segment `ab`.
pub fn on_open_segment(a: &Point, b: &Point, p: &Point) -> bool {
    if orient(a, b, p) != Ordering::Equal {
        return false;
    }
    let (k, ka, kb) = if a.x != b.x { (p.x, a.x, b.x) } else { (p.y, a.y, b.y) };
    let (lo, hi) = minmax(ka, kb);
    lo < k && k < hi
}

/// Upper half (angles in `[0, pi)`) versus lower half of the direction `p - o`.
#[inline]
fn half(o: &Point, p: &Point) -> u8 {
    if p.y > o.y || (p.y == o.y && p.x > o.x) {
        0
    } else {
        1
    }
}

/// Compares the polar angles of `a - o` and `b - o`, measured counterclockwise
/// from the positive x axis in `[0, 2 pi)`.
pub fn cmp_polar(o: &Point, a: &Point, b: &Point) -> Ordering {
    half(o, a).cmp(&half(o, b)).then_with(|| orient(o, b, a))
}

/// Whether direction `p - o` lies strictly inside the counterclockwise wedge
/// from direction `from - o` to direction `to - o`, which must turn by less
/// than pi.
pub fn strictly_in_wedge(o: &Point, from: &Point, to: &Point, p: &Point) -> bool {
    orient(o, from, p) == Ordering::Greater && orient(o, p, to) == Ordering::Greater
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orientation_basics() {
        assert_eq!(orientation(&p(0., 0.), &p(1., 0.), &p(2., 0.)), Orientation::Collinear);
        assert_eq!(orientation(&p(0., 0.), &p(1., 0.), &p(1., 1.)), Orientation::Ccw);
        assert_eq!(orientation(&p(0., 0.), &p(1., 1.), &p(1., 0.)), Orientation::Cw);
    }

    #[test]
    fn crossing_basics() {
        assert!(segments_cross(&p(0., 0.), &p(2., 2.), &p(0., 2.), &p(2., 0.)));
        assert!(!segments_cross(&p(0., 0.), &p(1., 1.), &p(1., 1.), &p(2., 0.)));
        // T junction touching at an endpoint
        assert!(!segments_cross(&p(0., 0.), &p(2., 0.), &p(1., 0.), &p(1., 1.)));
        // collinear overlap
        assert!(segments_cross(&p(0., 0.), &p(2., 0.), &p(1., 0.), &p(3., 0.)));
        assert!(!segments_cross(&p(0., 0.), &p(1., 0.), &p(1., 0.), &p(3., 0.)));
    }

    #[test]
    fn polar_order() {
        let o = p(0., 0.);
        let dirs = [p(1., 0.), p(1., 1.), p(0., 1.), p(-1., 0.5), p(-1., -1.), p(0.5, -1.)];
        for i in 0..dirs.len() {
            for j in 0..dirs.len() {
                assert_eq!(cmp_polar(&o, &dirs[i], &dirs[j]), i.cmp(&j), "{i} {j}");
            }
        }
    }

    #[test]
    fn open_segment_membership() {
        assert!(on_open_segment(&p(0., 0.), &p(2., 2.), &p(1., 1.)));
        assert!(!on_open_segment(&p(0., 0.), &p(2., 2.), &p(2., 2.)));
        assert!(on_open_segment(&p(0., 0.), &p(0., 2.), &p(0., 1.)));
    }
}
