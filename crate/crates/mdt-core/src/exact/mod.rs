//! Exact and certified arithmetic.

mod dyadic;
mod interval;
mod pseudo_angle;
mod sqrt_sum;
mod value;

use num_rational::BigRational;

pub use dyadic::DyadicInterval;
pub use interval::Interval;
pub use pseudo_angle::{pseudo_angle, pseudo_angle_f64, PseudoAngle};
pub use sqrt_sum::{compare_sqrt_sums, compare_sqrt_sums_staged, rational_sqrt, SqrtSum, Stage, DYADIC_BITS};
pub use value::ExactValue;

/// Precision level for [`interval_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Machine,
    /// Mantissas of at least this many bits per term.
    Extended(u64),
}

/// Encloses the value of `x` at the requested precision.
pub fn interval_of(x: &SqrtSum, precision: Precision) -> Interval {
    match precision {
        Precision::Machine => x.interval(),
        Precision::Extended(bits) => {
            let wide = x.dyadic(bits.max(64)).to_interval();
            // The f64 conversion of a tight enclosure can only lose by an ulp
            // per side, so intersecting with the machine result never hurts.
            let m = x.interval();
            Interval::new(wide.lo().max(m.lo()), wide.hi().min(m.hi()))
        }
    }
}

/// Exact rational value of a finite `f64`.
#[inline]
pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}
