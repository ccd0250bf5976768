//! Pseudo-angles: arc length along the l1 unit circle.
//!
//! The value lies in `[0, 4)`, starts at direction `(1, 0)` and increases
//! counterclockwise, with quadrant boundaries at the integers.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::geom::Point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoAngle {
    pub value: BigRational,
    /// The point whose direction this angle measures.
    pub witness: Point,
}

impl PartialOrd for PseudoAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PseudoAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

/// Pseudo-angle of `p` around `origin`; `None` if the points coincide.
pub fn pseudo_angle(origin: Point, p: Point) -> Option<PseudoAngle> {
    if origin == p {
        return None;
    }
    let dx = p.x_exact() - origin.x_exact();
    let dy = p.y_exact() - origin.y_exact();
    let l1 = dx.abs() + dy.abs();
    let (base, part) = match (dx.is_negative(), dy.is_negative()) {
        // First quadrant including the positive x axis, excluding positive y.
        (false, false) if !dx.is_zero() => (0, &dy / &l1),
        (false, false) | (true, false) => (1, -&dx / &l1),
        (true, true) => (2, -&dy / &l1),
        (false, true) => (3, &dx / &l1),
    };
    let value = BigRational::from_integer(base.into()) + part;
    debug_assert!(!value.is_negative() && value < BigRational::from_integer(4.into()));
    Some(PseudoAngle { value, witness: p })
}

/// Fast approximation of [`pseudo_angle`], monotone up to rounding.
pub fn pseudo_angle_f64(origin: Point, p: Point) -> f64 {
    let dx = p.x - origin.x;
    let dy = p.y - origin.y;
    let l1 = dx.abs() + dy.abs();
    if dy >= 0.0 && dx > 0.0 {
        dy / l1
    } else if dy >= 0.0 {
        1.0 - dx / l1
    } else if dx <= 0.0 {
        2.0 - dy / l1
    } else {
        3.0 + dx / l1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(x: f64, y: f64) -> BigRational {
        pseudo_angle(Point::new(0.0, 0.0), Point::new(x, y)).unwrap().value
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn axis_directions() {
        assert_eq!(pa(1.0, 0.0), int(0));
        assert_eq!(pa(0.0, 1.0), int(1));
        assert_eq!(pa(-1.0, 0.0), int(2));
        assert_eq!(pa(0.0, -1.0), int(3));
        assert_eq!(pa(1.0, 1.0), BigRational::new(1.into(), 2.into()));
        assert_eq!(pa(1.0, -1.0), BigRational::new(7.into(), 2.into()));
    }

    #[test]
    fn coincident_rejected() {
        assert!(pseudo_angle(Point::new(1.0, 2.0), Point::new(1.0, 2.0)).is_none());
    }

    #[test]
    fn approximation_agrees_on_quadrants() {
        for &(x, y) in &[(1.0, 0.0), (0.3, 0.7), (-0.2, 0.9), (-1.0, -1.0), (0.5, -2.0)] {
            let exact = pa(x, y);
            let approx = pseudo_angle_f64(Point::new(0.0, 0.0), Point::new(x, y));
            let e = num_traits::ToPrimitive::to_f64(&exact).unwrap();
            assert!((e - approx).abs() < 1e-12);
        }
    }
}
