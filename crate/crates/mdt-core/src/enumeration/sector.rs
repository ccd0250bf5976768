//! Dead sectors and the set of angular intervals they cover around a source.

use std::cmp::Ordering;

use crate::exact::Interval;
use crate::geom::predicates::orient;
use crate::geom::{dist_interval, ellipse_rect, sq_dist_interval, Point};
use crate::spatial::BBox;

/// A wedge around `source` from direction `l` counterclockwise to direction
/// `r`, dead beyond squared radius `activation_sq`.
///
/// Every point `t` in the closed wedge with `d(source, t)^2 >= activation_sq`
/// gives an edge `source-t` that either passes through `l` or `r`, or crosses
/// `l-r` while both endpoints lie outside the ellipse of `l-r`.
#[derive(Clone, Copy, Debug)]
pub struct DeadSector {
    pub source: Point,
    pub l: Point,
    pub r: Point,
    pub activation_sq: f64,
}

/// Builds the dead sector of `p` with respect to the segment `a-b` and the
/// exact bound `rho`, or `None` if it is empty or cannot be certified.
pub fn dead_sector(p: &Point, a: &Point, b: &Point, rho: f64) -> Option<DeadSector> {
    if !(rho > 1.0) || !rho.is_finite() || p == a || p == b || a == b {
        return None;
    }
    let (l, r) = match orient(p, a, b) {
        Ordering::Greater => (*a, *b),
        Ordering::Less => (*b, *a),
        Ordering::Equal => return None,
    };
    let rho_i = Interval::point(rho);
    let rhs = rho_i * dist_interval(&l, &r);
    let detour = dist_interval(&l, p) + dist_interval(p, &r);
    if detour.lo() < rhs.hi() {
        return None;
    }

    let rect = ellipse_rect(&l, &r, rho_i);
    let (px, py) = (Interval::point(p.x), Interval::point(p.y));
    let (lx, ly) = (Interval::point(l.x), Interval::point(l.y));
    let (rx, ry) = (Interval::point(r.x), Interval::point(r.y));
    let p_side = orient(&l, &r, p);

    let mut far_sq = 0.0f64;
    for (cx, cy) in rect.corners() {
        let (vx, vy) = (cx - px, cy - py);
        let from_l = (lx - px) * vy - (ly - py) * vx;
        let to_r = vx * (ry - py) - vy * (rx - px);
        if from_l.hi() < 0.0 || to_r.hi() < 0.0 {
            continue;
        }
        let side = (rx - lx) * (cy - ly) - (ry - ly) * (cx - lx);
        if side.sign() == Some(p_side) {
            continue;
        }
        far_sq = far_sq.max((vx.square() + vy.square()).hi());
    }

    let (ux, uy) = rect.axis;
    let (mx, my) = rect.center;
    let uu = ux.square() + uy.square();
    let a_lim = rect.alpha * uu;
    let b_lim = rect.beta * uu;
    let xp = (px - mx) * ux + (py - my) * uy;
    let yp = -(px - mx) * uy + (py - my) * ux;
    for q in [&l, &r] {
        let (wx, wy) = (Interval::point(q.x) - px, Interval::point(q.y) - py);
        let wu = wx * ux + wy * uy;
        let wv = -wx * uy + wy * ux;
        let mut lambda = f64::INFINITY;
        for (w, x0, lim) in [(wu, xp, a_lim), (wv, yp, b_lim)] {
            let exit = match w.sign() {
                Some(Ordering::Greater) => (lim - x0) / w,
                Some(Ordering::Less) => (-lim - x0) / w,
                _ => continue,
            };
            lambda = lambda.min(exit.hi());
        }
        if !lambda.is_finite() {
            return None;
        }
        let lam = Interval::point(lambda.max(1.0));
        far_sq = far_sq.max((lam.square() * sq_dist_interval(p, q)).hi());
    }

    let near = sq_dist_interval(p, &l).hi().max(sq_dist_interval(p, &r).hi());
    if !far_sq.is_finite() || far_sq <= near {
        return None;
    }
    Some(DeadSector {
        source: *p,
        l,
        r,
        activation_sq: far_sq,
    })
}

/// 0 if direction `x` lies in the half-turn `[a, a + pi)` measured from `a`.
fn rel_half(o: &Point, a: &Point, x: &Point) -> u8 {
    match orient(o, a, x) {
        Ordering::Greater => 0,
        Ordering::Less => 1,
        Ordering::Equal => {
            let same = (x.x - o.x).signum() == (a.x - o.x).signum() && (x.y - o.y).signum() == (a.y - o.y).signum();
            if same {
                0
            } else {
                1
            }
        }
    }
}

/// Compares the counterclockwise angles from direction `a` to `x` and `y`.
fn cmp_from(o: &Point, a: &Point, x: &Point, y: &Point) -> Ordering {
    rel_half(o, a, x).cmp(&rel_half(o, a, y)).then_with(|| orient(o, y, x))
}

#[derive(Clone, Copy, Debug)]
struct Arc {
    a: Point,
    b: Point,
}

/// Union of closed counterclockwise arcs of directions around a center.
///
/// Directions are represented by witness points and compared exactly.
#[derive(Clone, Debug)]
pub struct ArcSet {
    center: Point,
    arcs: Vec<Arc>,
    full: bool,
}

impl ArcSet {
    pub fn new(center: Point) -> Self {
        ArcSet {
            center,
            arcs: Vec::new(),
            full: false,
        }
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn len(&self) -> usize {
        if self.full {
            1
        } else {
            self.arcs.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.arcs.is_empty()
    }

    fn arc_contains(&self, m: &Arc, x: &Point) -> bool {
        cmp_from(&self.center, &m.a, x, &m.b) != Ordering::Greater
    }

    /// Adds the arc from direction `a` counterclockwise to direction `b`.
    pub fn insert(&mut self, a: Point, b: Point) {
        if self.full {
            return;
        }
        let mut n = Arc { a, b };
        loop {
            let mut changed = false;
            let mut k = 0;
            while k < self.arcs.len() {
                let m = self.arcs[k];
                let a_in = self.arc_contains(&m, &n.a);
                let b_in = self.arc_contains(&m, &n.b);
                if a_in && b_in {
                    if cmp_from(&self.center, &m.a, &n.a, &n.b) != Ordering::Greater {
                        return;
                    }
                    self.full = true;
                    self.arcs.clear();
                    return;
                } else if a_in {
                    n = Arc { a: m.a, b: n.b };
                } else if b_in {
                    n = Arc { a: n.a, b: m.b };
                } else if !self.arc_contains(&n, &m.a) {
                    k += 1;
                    continue;
                }
                self.arcs.swap_remove(k);
                changed = true;
            }
            if !changed {
                break;
            }
        }
        self.arcs.push(n);
    }

    /// Whether the direction of `x` lies in some arc. `x` must differ from the center.
    pub fn covers_point(&self, x: &Point) -> bool {
        self.full || self.arcs.iter().any(|m| self.arc_contains(m, x))
    }

    /// Whether every direction toward the box lies in one arc. Always false
    /// when the box contains the center.
    pub fn covers_box(&self, bbox: &BBox) -> bool {
        if bbox.contains(&self.center) {
            return false;
        }
        if self.full {
            return true;
        }
        if self.arcs.is_empty() {
            return false;
        }
        let o = &self.center;
        let corners = bbox.corners();
        let mut first = corners[0];
        let mut last = corners[0];
        for c in &corners[1..] {
            if orient(o, &first, c) == Ordering::Less {
                first = *c;
            }
            if orient(o, &last, c) == Ordering::Greater {
                last = *c;
            }
        }
        self.arcs.iter().any(|m| {
            self.arc_contains(m, &first)
                && self.arc_contains(m, &last)
                && cmp_from(o, &m.a, &first, &last) != Ordering::Greater
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn arcs_merge_to_full_circle() {
        let mut s = ArcSet::new(p(0., 0.));
        s.insert(p(1., 0.), p(0., 1.));
        s.insert(p(-1., 0.), p(0., -1.));
        assert_eq!(s.len(), 2);
        assert!(s.covers_point(&p(1., 1.)));
        assert!(!s.covers_point(&p(-1., 1.)));
        s.insert(p(0., 2.), p(-3., 0.));
        assert_eq!(s.len(), 1);
        assert!(s.covers_point(&p(-1., 1.)));
        assert!(!s.covers_point(&p(1., -1.)));
        s.insert(p(0., -1.), p(2., 0.));
        assert!(s.is_full());
    }

    #[test]
    fn contained_arc_is_absorbed() {
        let mut s = ArcSet::new(p(0., 0.));
        s.insert(p(1., -1.), p(-1., 1.));
        s.insert(p(1., 0.), p(1., 1.));
        assert_eq!(s.len(), 1);
        s.insert(p(2., -3.), p(-1., 2.));
        assert_eq!(s.len(), 1);
        assert!(s.covers_point(&p(1., -1.4)));
        assert!(!s.covers_point(&p(-1., -1.)));
    }

    #[test]
    fn box_coverage_needs_both_extremes() {
        let mut s = ArcSet::new(p(0., 0.));
        s.insert(p(1., 0.), p(0., 1.));
        let inside = BBox {
            min_x: 1.,
            min_y: 1.,
            max_x: 2.,
            max_y: 2.,
        };
        let straddle = BBox {
            min_x: 1.,
            min_y: -1.,
            max_x: 2.,
            max_y: 1.,
        };
        assert!(s.covers_box(&inside));
        assert!(!s.covers_box(&straddle));
        let around = BBox {
            min_x: -1.,
            min_y: -1.,
            max_x: 1.,
            max_y: 1.,
        };
        s.insert(p(0., 1.), p(1., 0.));
        assert!(s.is_full());
        assert!(!s.covers_box(&around));
    }

    #[test]
    fn square_diagonal_sector() {
        // p = (0,0), segment from (2,0) to (0,2): crossings beyond it are dead
        // once far enough away.
        let s = dead_sector(&p(0., 0.), &p(0., 2.), &p(2., 0.), 1.2).expect("sector");
        assert_eq!(s.l, p(2., 0.));
        assert_eq!(s.r, p(0., 2.));
        assert!(s.activation_sq > 4.0);
        assert!(dead_sector(&p(1., 0.9), &p(0., 2.), &p(2., 0.), 1.2).is_none());
        assert!(dead_sector(&p(1., 1.), &p(0., 2.), &p(2., 0.), 1.2).is_none());
    }
}
