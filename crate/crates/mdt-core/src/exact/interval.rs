//! Machine-precision interval arithmetic with outward rounding.
//!
//! Every operation evaluates the endpoint formulas in round-to-nearest and
//! then steps one ulp outward, which encloses the exact result because a
//! correctly rounded operation is off by at most half an ulp.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A closed interval `[lo, hi]` of reals with `f64` endpoints.
///
/// Infinite endpoints mark an unbounded interval. NaN endpoints are never
/// produced from finite inputs.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[inline]
fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const UNBOUNDED_ABOVE: Interval = Interval {
        lo: f64::INFINITY,
        hi: f64::INFINITY,
    };

    #[inline]
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// The degenerate interval `[x, x]`; `x` is taken as an exact value.
    #[inline]
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    #[inline]
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Sign of every member, if it is the same for all of them.
    ///
    /// `[0, 0]` reports `Equal`; an interval straddling or touching zero
    /// otherwise is undecided.
    #[inline]
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo > 0.0 {
            Some(Ordering::Greater)
        } else if self.hi < 0.0 {
            Some(Ordering::Less)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Order of the exact values if it follows from the enclosures alone.
    #[inline]
    pub fn certainly_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    #[inline]
    pub fn sqrt(self) -> Interval {
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            let s = self.lo.sqrt();
            if s.mul_add(s, -self.lo) == 0.0 {
                s
            } else {
                down(s).max(0.0)
            }
        };
        let hi = if self.hi <= 0.0 {
            0.0
        } else {
            let s = self.hi.sqrt();
            if s.mul_add(s, -self.hi) == 0.0 {
                s
            } else {
                up(s)
            }
        };
        Interval { lo, hi }
    }

    #[inline]
    pub fn square(self) -> Interval {
        if self.lo >= 0.0 {
            Interval::new(down(self.lo * self.lo).max(0.0), up(self.hi * self.hi))
        } else if self.hi <= 0.0 {
            Interval::new(down(self.hi * self.hi).max(0.0), up(self.lo * self.lo))
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            Interval::new(0.0, up(m * m))
        }
    }

    #[inline]
    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval::new(0.0, self.hi.max(-self.lo))
        }
    }

    /// Enclosure of `max(a, b)` for members `a`, `b`.
    #[inline]
    pub fn max(self, other: Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    #[inline]
    pub fn min(self, other: Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    /// Smallest interval containing both.
    #[inline]
    pub fn hull(self, other: Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Encloses the exact rational `q`.
    pub fn from_rational(q: &BigRational) -> Interval {
        if q.is_zero() {
            return Interval::ZERO;
        }
        let neg = q.is_negative();
        let num = q.numer().abs();
        let den = q.denom();
        // Scale so the integer quotient carries ~64 significant bits.
        let shift = 64 + den.bits() as i64 - num.bits() as i64;
        let (quot, exact) = if shift >= 0 {
            let scaled: BigInt = &num << shift as u64;
            let (qt, r) = (&scaled / den, &scaled % den);
            (qt, r.is_zero())
        } else {
            let scaled_den: BigInt = den << (-shift) as u64;
            let (qt, r) = (&num / &scaled_den, &num % &scaled_den);
            (qt, r.is_zero())
        };
        let lo_m = big_to_f64_down(&quot);
        let hi_m = if exact {
            big_to_f64_up(&quot)
        } else {
            big_to_f64_up(&(quot + 1u32))
        };
        let lo = ldexp_down(lo_m, -shift);
        let hi = ldexp_up(hi_m, -shift);
        if neg {
            Interval::new(-hi, -lo)
        } else {
            Interval::new(lo, hi)
        }
    }
}

/// Nonnegative big integer to the largest `f64` not above it.
fn big_to_f64_down(x: &BigInt) -> f64 {
    let f = x.to_f64().unwrap_or(f64::INFINITY);
    if f.is_infinite() {
        return f64::MAX;
    }
    match exact_cmp_f64(x, f) {
        Ordering::Less => down(f),
        _ => f,
    }
}

fn big_to_f64_up(x: &BigInt) -> f64 {
    let f = x.to_f64().unwrap_or(f64::INFINITY);
    if f.is_infinite() {
        return f;
    }
    match exact_cmp_f64(x, f) {
        Ordering::Greater => up(f),
        _ => f,
    }
}

/// Compares an integer against an integral `f64` exactly.
fn exact_cmp_f64(x: &BigInt, f: f64) -> Ordering {
    let fb = BigRational::from_float(f).expect("finite").to_integer();
    x.cmp(&fb)
}

/// `m * 2^e` rounded toward negative infinity, for `m >= 0`.
fn ldexp_down(m: f64, e: i64) -> f64 {
    let r = ldexp(m, e);
    if m != 0.0 && (r == 0.0 || !r.is_normal()) {
        // Underflow may have rounded up; step down past it.
        down(r).max(0.0)
    } else {
        r
    }
}

fn ldexp_up(m: f64, e: i64) -> f64 {
    let r = ldexp(m, e);
    if m != 0.0 && (r == 0.0 || !r.is_normal()) {
        up(r)
    } else {
        r
    }
}

fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
    }
    m * 2f64.powi(e as i32)
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, o: Interval) -> Interval {
        let lo = self.lo + o.lo;
        let hi = self.hi + o.hi;
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, o: Interval) -> Interval {
        let lo = self.lo - o.hi;
        let hi = self.hi - o.lo;
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, o: Interval) -> Interval {
        if self.lo >= 0.0 && o.lo >= 0.0 {
            return Interval {
                lo: down(self.lo * o.lo).max(0.0),
                hi: up(self.hi * o.hi),
            };
        }
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Division by an interval containing zero yields the unbounded interval.
    #[inline]
    fn div(self, o: Interval) -> Interval {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        let p = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, c: f64) -> Interval {
        self * Interval::point(c)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_two_is_tight() {
        let s = Interval::point(2.0).sqrt();
        assert!(s.lo() < std::f64::consts::SQRT_2 || s.lo() == std::f64::consts::SQRT_2);
        assert!(s.hi() >= std::f64::consts::SQRT_2);
        assert!(s.width() <= 2.0 * f64::EPSILON * 1.5);
    }

    #[test]
    fn perfect_squares_stay_exact() {
        assert_eq!(Interval::point(9.0).sqrt(), Interval::point(3.0));
    }

    #[test]
    fn rational_enclosure_of_one_third() {
        let i = Interval::from_rational(&rat(1, 3));
        let third = rat(1, 3);
        assert!(BigRational::from_float(i.lo()).unwrap() < third);
        assert!(BigRational::from_float(i.hi()).unwrap() > third);
        assert!(i.width() < 1e-16);
        let n = Interval::from_rational(&rat(-1, 3));
        assert_eq!(n, -i);
    }

    #[test]
    fn exact_rationals_are_points() {
        assert_eq!(Interval::from_rational(&rat(3, 4)), Interval::point(0.75));
        assert_eq!(Interval::from_rational(&rat(5, 1)), Interval::point(5.0));
    }

    #[test]
    fn tiny_and_huge_rationals() {
        let tiny = BigRational::new(BigInt::from(1), BigInt::from(10).pow(320));
        let i = Interval::from_rational(&tiny);
        assert!(i.lo() >= 0.0 && i.hi() > 0.0 && i.lo() <= 1e-320);
        let huge = BigRational::from_integer(BigInt::from(10).pow(300));
        let h = Interval::from_rational(&huge);
        assert!(h.contains(1e300));
    }

    #[test]
    fn sum_is_enclosing() {
        let a = Interval::point(0.1);
        let b = Interval::point(0.2);
        let s = a + b;
        let exact = BigRational::from_float(0.1).unwrap() + BigRational::from_float(0.2).unwrap();
        assert!(BigRational::from_float(s.lo()).unwrap() <= exact);
        assert!(BigRational::from_float(s.hi()).unwrap() >= exact);
    }

    #[test]
    fn sign_and_ordering() {
        assert_eq!(Interval::new(1.0, 2.0).sign(), Some(Ordering::Greater));
        assert_eq!(Interval::new(-1.0, 2.0).sign(), None);
        assert_eq!(Interval::ZERO.sign(), Some(Ordering::Equal));
        assert_eq!(
            Interval::new(0.0, 1.0).certainly_cmp(&Interval::new(2.0, 3.0)),
            Some(Ordering::Less)
        );
        assert_eq!(Interval::new(0.0, 2.0).certainly_cmp(&Interval::new(1.0, 3.0)), None);
    }
}
