//! Regular n-gons: correctly rounded vertex coordinates and certified
//! bounds transferring an optimum on the rounded points to the exact polygon.
//!
//! Trigonometric values are computed with fixed-point ball arithmetic on big
//! integers: a ball `(m, r)` at precision `p` stands for the real interval
//! `[(m - r) 2^-p, (m + r) 2^-p]`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::Interval;
use crate::geom::{convex_hull, orientation, sq_dist_exact, Orientation, Point};

/// Precision of the first attempt; raised until rounding is decided.
const START_BITS: u64 = 192;
const MAX_BITS: u64 = 960;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Ball {
    mid: BigInt,
    rad: BigInt,
}

impl Ball {
    fn exact(mid: BigInt) -> Ball {
        Ball {
            mid,
            rad: BigInt::zero(),
        }
    }

    fn add(&self, o: &Ball) -> Ball {
        Ball {
            mid: &self.mid + &o.mid,
            rad: &self.rad + &o.rad,
        }
    }

    fn sub(&self, o: &Ball) -> Ball {
        Ball {
            mid: &self.mid - &o.mid,
            rad: &self.rad + &o.rad,
        }
    }

    fn mul(&self, o: &Ball, p: u64) -> Ball {
        let prod = &self.mid * &o.mid;
        let err = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        Ball {
            mid: prod >> p,
            rad: ceil_shift(&err, p) + 1,
        }
    }

    fn mul_int(&self, k: i64) -> Ball {
        Ball {
            mid: &self.mid * k,
            rad: &self.rad * k.unsigned_abs(),
        }
    }

    fn div_int(&self, k: u64) -> Ball {
        Ball {
            mid: self.mid.div_floor(&BigInt::from(k)),
            rad: ceil_div(&self.rad, k) + 1,
        }
    }

    fn lo(&self) -> BigInt {
        &self.mid - &self.rad
    }

    fn hi(&self) -> BigInt {
        &self.mid + &self.rad
    }

    fn abs_hi(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }
}

fn ceil_shift(x: &BigInt, p: u64) -> BigInt {
    -((-x) >> p)
}

fn ceil_div(x: &BigInt, k: u64) -> BigInt {
    let k = BigInt::from(k);
    -((-x).div_floor(&k))
}

/// `atan(1/x)` by its alternating series.
fn atan_inv(x: u64, p: u64) -> Ball {
    let x2 = BigInt::from(x) * x;
    let mut power = (BigInt::one() << p).div_floor(&BigInt::from(x));
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !power.is_zero() {
        let t = power.div_floor(&BigInt::from(2 * j + 1));
        if j % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        power = power.div_floor(&x2);
        terms += 1;
        j += 1;
    }
    // Each term is off by less than 2 units; the tail is below one unit.
    Ball {
        mid: sum,
        rad: BigInt::from(2 * terms + 1),
    }
}

fn pi(p: u64) -> Ball {
    atan_inv(5, p).mul_int(16).sub(&atan_inv(239, p).mul_int(4))
}

/// `sin` and `cos` of a ball argument with `|x| <= 8`, by Taylor series.
fn sin_cos(x: &Ball, p: u64) -> (Ball, Ball) {
    let x2 = x.mul(x, p);
    // Rounding keeps every term at least a couple of units wide.
    let tiny = BigInt::from(8);
    let series = |first: Ball, start: u64| {
        let mut term = first;
        let mut sum = Ball::exact(BigInt::zero());
        let mut k = start;
        loop {
            // Terms decrease from here on, so the first omitted one bounds the tail.
            if k > 8 && term.abs_hi() <= tiny {
                sum.rad += term.abs_hi();
                return sum;
            }
            sum = sum.add(&term);
            term = term.mul(&x2, p).div_int((k + 1) * (k + 2)).mul_int(-1);
            k += 2;
        }
    };
    let one = Ball::exact(BigInt::one() << p);
    (series(x.clone(), 1), series(one, 0))
}

/// Rounds `m 2^-p` to the nearest double, ties to even.
fn nearest_f64(m: &BigInt, p: u64) -> f64 {
    let (sign, a) = (m.sign(), m.abs());
    if a.is_zero() {
        return 0.0;
    }
    let bits = a.bits();
    let (q, shift) = if bits > 53 {
        let shift = bits - 53;
        let q = &a >> shift;
        let rem = &a - (&q << shift);
        let half = BigInt::one() << (shift - 1);
        let up = rem > half || (rem == half && q.is_odd());
        (if up { q + 1 } else { q }, shift as i64)
    } else {
        (a, 0)
    };
    let q: u64 = q.try_into().expect("at most 54 bits");
    let v = q as f64 * pow2(shift - p as i64);
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

fn pow2(e: i64) -> f64 {
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// Exact value of `cos(2 pi k / n)` when it is rational (0, 1/2 or 1 up to sign).
fn rational_cos(k: usize, n: usize) -> Option<f64> {
    let g = k.gcd(&n);
    let (k, n) = (k / g, n / g);
    match n {
        1 => Some(1.0),
        2 => Some(-1.0),
        3 => Some(-0.5),
        4 => Some(0.0),
        6 => Some(if k == 1 || k == 5 { 0.5 } else { -0.5 }),
        _ => None,
    }
}

/// The vertex `(cos 2 pi k/n, sin 2 pi k/n)` rounded coordinatewise to
/// nearest, and whether both coordinates are exact.
fn vertex(k: usize, n: usize) -> (Point, bool) {
    let cos_exact = rational_cos(k, n);
    // sin(2 pi k/n) = cos(2 pi (n - 4k)/(4n)).
    let sin_exact = rational_cos((5 * n - 4 * k) % (4 * n), 4 * n);
    if let (Some(c), Some(s)) = (cos_exact, sin_exact) {
        return (Point::new(c, s), true);
    }
    let mut p = START_BITS;
    loop {
        let angle = pi(p).mul_int(2 * k as i64).div_int(n as u64);
        let (s, c) = sin_cos(&angle, p);
        let round = |b: &Ball, exact: Option<f64>| match exact {
            Some(v) => Some(v),
            None => {
                let lo = nearest_f64(&b.lo(), p);
                (lo == nearest_f64(&b.hi(), p)).then_some(lo)
            }
        };
        if let (Some(x), Some(y)) = (round(&c, cos_exact), round(&s, sin_exact)) {
            return (Point::new(x, y), false);
        }
        assert!(p < MAX_BITS, "rounding of vertex {k} of the {n}-gon undecided");
        p *= 2;
    }
}

/// Vertices of the regular `n`-gon on the unit circle, each coordinate the
/// correctly rounded double of its exact value. Convex position is checked
/// with exact predicates.
pub fn ngon_points(n: usize) -> Vec<Point> {
    assert!(n >= 3, "an n-gon needs n >= 3");
    let pts: Vec<Point> = (0..n).map(|k| vertex(k, n).0).collect();
    for k in 0..n {
        let o = orientation(&pts[k], &pts[(k + 1) % n], &pts[(k + 2) % n]);
        assert_eq!(o, Orientation::Ccw, "rounded {n}-gon is not strictly convex");
    }
    assert_eq!(convex_hull(&pts).len(), n, "rounded {n}-gon is not in convex position");
    pts
}

/// Bounds relating an optimum on the rounded points `Q` to the exact n-gon `P`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NgonCertificate {
    pub n: usize,
    /// Optimal dilation of `Q` as computed by the solver.
    pub solver_bound: Interval,
    /// Upper bound on `|d(p_i, p_j) - d(q_i, q_j)|` over all pairs.
    pub epsilon: f64,
    /// Upper bound on `|d(q_i, q_j) / d(p_i, p_j) - 1|` over all pairs.
    pub delta: f64,
    /// Lower bound on the smallest distance in `Q`.
    pub min_distance: f64,
    /// Rigorous lower bound on the MDT dilation of `P`.
    pub lower: f64,
    /// Rigorous upper bound on the MDT dilation of `P`.
    pub upper: f64,
}

impl NgonCertificate {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Distortion bounds `(epsilon, delta, min_distance)` of the rounded n-gon.
pub fn distortion(n: usize) -> (f64, f64, f64) {
    let verts: Vec<(Point, bool)> = (0..n).map(|k| vertex(k, n)).collect();
    let p = START_BITS;
    let pi = pi(p);
    // d(p_i, p_j) = 2 sin(pi m / n) depends only on m = j - i.
    let chord: Vec<Ball> = (0..n)
        .map(|m| sin_cos(&pi.mul_int(m as i64).div_int(n as u64), p).0.mul_int(2))
        .collect();
    let scale = BigInt::one() << p;
    let mut eps = BigRational::zero();
    let mut delta = BigRational::zero();
    let mut min_sq: Option<BigRational> = None;
    for i in 0..n {
        for j in i + 1..n {
            let q2 = sq_dist_exact(&verts[i].0, &verts[j].0);
            if min_sq.as_ref().is_none_or(|m| &q2 < m) {
                min_sq = Some(q2.clone());
            }
            if verts[i].1 && verts[j].1 {
                continue;
            }
            // floor(sqrt(q2) 2^p) <= sqrt(q2) 2^p < that + 1.
            let root = (q2.numer() * &scale * &scale / q2.denom()).sqrt();
            let dq = Ball {
                mid: root,
                rad: BigInt::one(),
            };
            let diff = dq.sub(&chord[j - i]).abs_hi();
            let e = BigRational::new(diff.clone(), scale.clone());
            let d = BigRational::new(diff, chord[j - i].lo());
            if e > eps {
                eps = e;
            }
            if d > delta {
                delta = d;
            }
        }
    }
    let min_sq = min_sq.expect("n >= 3");
    let min_distance = Interval::from_rational(&min_sq).sqrt().lo();
    (
        Interval::from_rational(&eps).hi(),
        Interval::from_rational(&delta).hi(),
        min_distance,
    )
}

/// Certifies the exact n-gon from the optimum `solver_bound` on [`ngon_points`].
///
/// For the optimal triangulation `T` of `P` with dilation `rho`, mapping it
/// to `Q` changes every path of at most `n - 1` edges by at most
/// `(n - 1) eps` and every distance by a factor within `1 -+ delta`, so
/// `rho_Q <= rho / (1 - delta) + (n - 1) eps / min d_Q`. Solving for `rho`
/// gives the lower bound; mapping the optimum of `Q` back to `P` gives the
/// upper one.
pub fn certify(n: usize, solver_bound: Interval) -> NgonCertificate {
    let (epsilon, delta, min_distance) = distortion(n);
    let slack = Interval::point((n - 1) as f64) * Interval::point(epsilon) / Interval::point(min_distance);
    let one = Interval::ONE;
    let lower = ((Interval::point(solver_bound.lo()) - slack) * (one - Interval::point(delta))).lo();
    let upper = ((Interval::point(solver_bound.hi()) + slack) * (one + Interval::point(delta))).hi();
    NgonCertificate {
        n,
        solver_bound,
        epsilon,
        delta,
        min_distance,
        lower,
        upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let b = pi(128);
        let lo = nearest_f64(&b.lo(), 128);
        assert_eq!(lo, std::f64::consts::PI);
        assert_eq!(nearest_f64(&b.hi(), 128), std::f64::consts::PI);
    }

    #[test]
    fn square_is_exact() {
        let pts = ngon_points(4);
        assert_eq!(
            pts,
            vec![
                Point::new(1.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(-1.0, 0.0),
                Point::new(0.0, -1.0)
            ]
        );
        let (e, d, _) = distortion(4);
        assert_eq!((e, d), (0.0, 0.0));
    }

    #[test]
    fn hexagon_matches_libm() {
        let pts = ngon_points(6);
        assert_eq!(pts[1], Point::new(0.5, 3f64.sqrt() / 2.0));
        assert_eq!(pts[3], Point::new(-1.0, 0.0));
    }

    #[test]
    fn rounding_ties_to_even() {
        // 1 + 2^-53 is halfway between 1 and the next double.
        let m = (BigInt::one() << 60u32) + (BigInt::one() << 7u32);
        assert_eq!(nearest_f64(&m, 60), 1.0);
        let m = (BigInt::one() << 60u32) + (BigInt::one() << 7u32) + 1;
        assert_eq!(nearest_f64(&m, 60), 1.0 + f64::EPSILON);
        assert_eq!(nearest_f64(&BigInt::from(-3), 1), -1.5);
    }
}
