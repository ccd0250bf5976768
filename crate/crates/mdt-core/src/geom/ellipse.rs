//! The ellipse with foci `l`, `r` and focal sum `rho * d(l, r)`, its bounding
//! rectangle, and the ellipse-property test for crossing segments.

use num_rational::BigRational;

use super::{dist_exact, dist_interval, Point};
use crate::exact::{rational, Interval, SqrtSum};

/// Rectangle aligned with `l -> r` containing the ellipse
/// `{x : d(x, l) + d(x, r) <= rho * d(l, r)}`.
///
/// With `u = r - l` and `u⊥` its counterclockwise perpendicular, the corners
/// are `m ± alpha u ± beta u⊥` where `m` is the midpoint, `alpha = rho / 2`
/// and `beta = sqrt(rho^2 - 1) / 2`, so no distance needs to be normalized.
#[derive(Clone, Copy, Debug)]
pub struct EllipseRect {
    pub l: Point,
    pub r: Point,
    pub center: (Interval, Interval),
    pub axis: (Interval, Interval),
    pub alpha: Interval,
    pub beta: Interval,
    /// Half-extent along `l -> r`, enclosing `rho * d(l, r) / 2`.
    pub half_major: Interval,
    /// Half-extent across, enclosing `d(l, r) * sqrt(rho^2 - 1) / 2`.
    pub half_minor: Interval,
}

/// Bounding rectangle for the upper end of `rho`.
pub fn ellipse_rect(l: &Point, r: &Point, rho: Interval) -> EllipseRect {
    let rho = Interval::point(rho.hi().max(1.0));
    let half = Interval::point(0.5);
    let alpha = rho * half;
    let beta = ((rho.square() - Interval::ONE).max(Interval::ZERO)).sqrt() * half;
    let (lx, ly) = (Interval::point(l.x), Interval::point(l.y));
    let (rx, ry) = (Interval::point(r.x), Interval::point(r.y));
    let center = ((lx + rx) * half, (ly + ry) * half);
    let axis = (rx - lx, ry - ly);
    let d = dist_interval(l, r);
    EllipseRect {
        l: *l,
        r: *r,
        center,
        axis,
        alpha,
        beta,
        half_major: alpha * d,
        half_minor: beta * d,
    }
}

impl EllipseRect {
    /// Corner boxes in counterclockwise order starting at `m + alpha u + beta u⊥`.
    pub fn corners(&self) -> [(Interval, Interval); 4] {
        let (ux, uy) = self.axis;
        let (px, py) = (-uy, ux);
        let (mx, my) = self.center;
        let mut out = [(Interval::ZERO, Interval::ZERO); 4];
        for (k, (sa, sb)) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
            .into_iter()
            .enumerate()
        {
            let a = self.alpha * sa;
            let b = self.beta * sb;
            out[k] = (mx + a * ux + b * px, my + a * uy + b * py);
        }
        out
    }
}

/// Outcome of an interval-level ellipse-property test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EllipseCheck {
    /// Both detours are at least `rho * d(l, r)`: `l-r` excludes `s-t`.
    Violates,
    /// Some detour is shorter than `rho * d(l, r)`.
    Satisfies,
    Undecided,
}

/// Tests whether `s-t`, which crosses `l-r`, fails the ellipse property
/// for the exact bound `rho`, deciding with intervals only.
pub fn violates_ellipse_property(s: &Point, t: &Point, l: &Point, r: &Point, rho: f64) -> EllipseCheck {
    let rhs = Interval::point(rho) * dist_interval(l, r);
    let ds = dist_interval(l, s) + dist_interval(s, r);
    let dt = dist_interval(l, t) + dist_interval(t, r);
    if ds.hi() < rhs.lo() || dt.hi() < rhs.lo() {
        EllipseCheck::Satisfies
    } else if ds.lo() >= rhs.hi() && dt.lo() >= rhs.hi() {
        EllipseCheck::Violates
    } else {
        EllipseCheck::Undecided
    }
}

/// Detour through `p` minus `rho * d(l, r)`, exactly.
pub fn detour_excess(p: &Point, l: &Point, r: &Point, rho: &BigRational) -> SqrtSum {
    let lhs = dist_exact(l, p) + dist_exact(p, r);
    lhs - dist_exact(l, r).scale(rho)
}

/// Exact ellipse-property violation test, with the interval filter first.
pub fn violates_ellipse_property_exact(s: &Point, t: &Point, l: &Point, r: &Point, rho: f64) -> bool {
    match violates_ellipse_property(s, t, l, r, rho) {
        EllipseCheck::Violates => true,
        EllipseCheck::Satisfies => false,
        EllipseCheck::Undecided => {
            let q = rational(rho);
            detour_excess(s, l, r, &q).signum().is_ge() && detour_excess(t, l, r, &q).signum().is_ge()
        }
    }
}
