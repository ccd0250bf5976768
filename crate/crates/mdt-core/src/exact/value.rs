//! Exactly known real values such as dilations and bounds.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use super::{compare_sqrt_sums, rational, Interval, SqrtSum};

/// A real number stored exactly as a sum of square roots together with a
/// cached enclosure.
#[derive(Clone)]
pub struct ExactValue {
    value: SqrtSum,
    approx: Interval,
}

impl ExactValue {
    pub fn new(value: SqrtSum) -> Self {
        let approx = value.interval();
        ExactValue { value, approx }
    }

    pub fn from_f64(x: f64) -> Self {
        ExactValue {
            value: SqrtSum::from_f64(x),
            approx: Interval::point(x),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(SqrtSum::from_rational(q))
    }

    /// `len / sqrt(sq_dist)`, the ratio of a path length to a distance.
    pub fn ratio(len: &SqrtSum, sq_dist: &BigRational) -> Self {
        Self::new(len.div_sqrt(sq_dist))
    }

    pub fn exact(&self) -> &SqrtSum {
        &self.value
    }

    pub fn interval(&self) -> Interval {
        self.approx
    }

    /// `self * sqrt(q)` exactly.
    pub fn times_sqrt(&self, q: &BigRational) -> SqrtSum {
        self.value.div_sqrt(&q.recip())
    }

    /// Exact comparison, filtered by the cached enclosures.
    pub fn cmp_exact(&self, other: &ExactValue) -> Ordering {
        match self.approx.certainly_cmp(&other.approx) {
            Some(o) => o,
            None => compare_sqrt_sums(&self.value, &other.value),
        }
    }

    pub fn cmp_f64(&self, x: f64) -> Ordering {
        match self.approx.certainly_cmp(&Interval::point(x)) {
            Some(o) => o,
            None => compare_sqrt_sums(&self.value, &SqrtSum::from_rational(rational(x))),
        }
    }

    /// Whether the value is exactly one.
    pub fn is_one(&self) -> bool {
        self.cmp_f64(1.0) == Ordering::Equal
    }
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.approx)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.approx, f)
    }
}
