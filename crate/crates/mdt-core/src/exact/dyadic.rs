//! Arbitrary-precision dyadic intervals.
//!
//! A value is stored as `[lo, hi] * 2^exp` with big-integer mantissas. Only
//! the operations needed by the sqrt-sum comparator are provided.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    exp: i64,
}

impl DyadicInterval {
    pub fn zero() -> Self {
        DyadicInterval {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn lo_mantissa(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_mantissa(&self) -> &BigInt {
        &self.hi
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Encloses `q` with about `prec` significant bits.
    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let num = q.numer();
        let den = q.denom();
        let k = prec as i64 - (num.bits() as i64 - den.bits() as i64);
        let (scaled_num, scaled_den) = scale(num, den, k);
        let (fl, r) = scaled_num.div_mod_floor(&scaled_den);
        let hi = if r.is_zero() { fl.clone() } else { &fl + 1 };
        DyadicInterval { lo: fl, hi, exp: -k }
    }

    /// Encloses `sqrt(q)` for `q >= 0` with about `prec` significant bits.
    pub fn sqrt_rational(q: &BigRational, prec: u64) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return Self::zero();
        }
        let num = q.numer();
        let den = q.denom();
        let k = prec as i64 - (num.bits() as i64 - den.bits() as i64).div_euclid(2);
        // floor(q * 4^k) then the integer square root brackets sqrt(q) * 2^k.
        let (sn, sd) = scale(num, den, 2 * k);
        let (n, r) = sn.div_mod_floor(&sd);
        let m = n.sqrt();
        let exact = r.is_zero() && &m * &m == n;
        let hi = if exact { m.clone() } else { &m + 1 };
        DyadicInterval { lo: m, hi, exp: -k }
    }

    fn align(&self, exp: i64) -> (BigInt, BigInt) {
        debug_assert!(exp <= self.exp);
        let sh = (self.exp - exp) as u64;
        (&self.lo << sh, &self.hi << sh)
    }

    pub fn add(&self, other: &DyadicInterval) -> DyadicInterval {
        if self.lo.is_zero() && self.hi.is_zero() {
            return other.clone();
        }
        if other.lo.is_zero() && other.hi.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let (al, ah) = self.align(e);
        let (bl, bh) = other.align(e);
        DyadicInterval {
            lo: al + bl,
            hi: ah + bh,
            exp: e,
        }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval {
            lo: -&self.hi,
            hi: -&self.lo,
            exp: self.exp,
        }
    }

    /// Multiplies by an exact integer.
    pub fn scale_int(&self, c: &BigInt) -> DyadicInterval {
        if c.is_negative() {
            DyadicInterval {
                lo: &self.hi * c,
                hi: &self.lo * c,
                exp: self.exp,
            }
        } else {
            DyadicInterval {
                lo: &self.lo * c,
                hi: &self.hi * c,
                exp: self.exp,
            }
        }
    }

    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Exact lower endpoint as a rational.
    pub fn lo_rational(&self) -> BigRational {
        to_rational(&self.lo, self.exp)
    }

    pub fn hi_rational(&self) -> BigRational {
        to_rational(&self.hi, self.exp)
    }

    /// Outward `f64` enclosure.
    pub fn to_interval(&self) -> Interval {
        let lo = Interval::from_rational(&self.lo_rational());
        let hi = Interval::from_rational(&self.hi_rational());
        Interval::new(lo.lo(), hi.hi())
    }
}

fn to_rational(m: &BigInt, exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(m << exp as u64)
    } else {
        BigRational::new(m.clone(), BigInt::one() << (-exp) as u64)
    }
}

/// Returns `(num * 2^k, den)` or `(num, den * 2^-k)` so the quotient is `num/den * 2^k`.
fn scale(num: &BigInt, den: &BigInt, k: i64) -> (BigInt, BigInt) {
    if k >= 0 {
        (num << k as u64, den.clone())
    } else {
        (num.clone(), den << (-k) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_two_brackets() {
        let s = DyadicInterval::sqrt_rational(&rat(2, 1), 200);
        let lo = s.lo_rational();
        let hi = s.hi_rational();
        let two = rat(2, 1);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!(s.hi_mantissa() - s.lo_mantissa() == BigInt::one());
    }

    #[test]
    fn exact_square_root_is_a_point() {
        let s = DyadicInterval::sqrt_rational(&rat(9, 4), 64);
        assert_eq!(s.lo_rational(), rat(3, 2));
        assert_eq!(s.hi_rational(), rat(3, 2));
    }

    #[test]
    fn rational_brackets_negative() {
        let q = rat(-7, 3);
        let d = DyadicInterval::from_rational(&q, 100);
        assert!(d.lo_rational() <= q && d.hi_rational() >= q);
        assert_eq!(d.sign(), Some(Ordering::Less));
    }

    #[test]
    fn cancelling_sum_straddles_zero() {
        let a = DyadicInterval::sqrt_rational(&rat(2, 1), 128);
        let b = a.neg();
        let s = a.add(&b);
        assert_eq!(s.sign(), None);
        let s = a.add(&DyadicInterval::from_rational(&rat(-1, 1), 128));
        assert_eq!(s.sign(), Some(Ordering::Greater));
    }
}
