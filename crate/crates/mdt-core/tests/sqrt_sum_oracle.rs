//! The staged sqrt-sum comparator against a 4096-bit floating-point oracle.

use std::cmp::Ordering;

use astro_float::{BigFloat, RoundingMode};
use mdt_core::exact::{compare_sqrt_sums, compare_sqrt_sums_staged, SqrtSum, Stage};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const P: usize = 4096;
const RM: RoundingMode = RoundingMode::ToEven;

type Terms = Vec<(i64, u64, u64)>;

fn rat(n: i64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `sum c * sqrt(a / b)` for terms `(c, a, b)`.
fn exact(terms: &Terms) -> SqrtSum {
    terms.iter().fold(SqrtSum::zero(), |acc, &(c, a, b)| {
        acc + SqrtSum::term(rat(c, 1), rat(a as i64, b))
    })
}

fn oracle_value(terms: &Terms) -> BigFloat {
    let mut acc = BigFloat::from_u64(0, P);
    for &(c, a, b) in terms {
        let q = BigFloat::from_u64(a, P).div(&BigFloat::from_u64(b, P), P, RM);
        let t = q.sqrt(P, RM).mul(&BigFloat::from_i64(c, P), P, RM);
        acc = acc.add(&t, P, RM);
    }
    acc
}

/// Sign of the difference, with anything below 2^-3000 taken as zero.
fn oracle(a: &Terms, b: &Terms) -> Ordering {
    let d = oracle_value(a).sub(&oracle_value(b), P, RM);
    if d.is_zero() || d.exponent().is_some_and(|e| e < -3000) {
        Ordering::Equal
    } else if d.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn terms(max_len: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((-3i64..=3, 1u64..2000, 1u64..50), 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn agrees_with_oracle(a in terms(4), b in terms(4)) {
        prop_assert_eq!(compare_sqrt_sums(&exact(&a), &exact(&b)), oracle(&a, &b));
    }

    #[test]
    fn antisymmetric(a in terms(3), b in terms(3)) {
        let (x, y) = (exact(&a), exact(&b));
        prop_assert_eq!(compare_sqrt_sums(&x, &y), compare_sqrt_sums(&y, &x).reverse());
    }

    /// `sqrt(k^2 m) = k sqrt(m)` and splitting a term in parts preserve the value.
    #[test]
    fn hidden_ties_are_equal(m in 2u64..5000, k in 2u64..40, parts in 1u64..5) {
        let lhs: Terms = vec![(1, k * k * m, 1)];
        let rhs: Terms = (0..parts).map(|_| (1, m, 1)).chain(std::iter::once((k as i64 - parts as i64, m, 1))).collect();
        prop_assert_eq!(compare_sqrt_sums(&exact(&lhs), &exact(&rhs)), Ordering::Equal);
        let quarter: Terms = vec![(1, m, 4 * k * k), (1, m, 4 * k * k)];
        let whole: Terms = vec![(1, m, k * k)];
        let half: Terms = vec![(1, m, 4 * k * k)];
        let mut sum = quarter.clone();
        sum.extend(half);
        prop_assert_eq!(compare_sqrt_sums(&exact(&quarter), &exact(&whole)), Ordering::Equal);
        prop_assert_eq!(compare_sqrt_sums(&exact(&sum), &exact(&whole)), Ordering::Greater);
    }
}

#[test]
fn near_tie_needs_more_than_machine_precision() {
    // sqrt(10^12 + 1) + sqrt(10^12 - 1) is just below 2 * 10^6.
    let a: Terms = vec![(1, 1_000_000_000_001, 1), (1, 999_999_999_999, 1)];
    let b: Terms = vec![(2_000_000, 1, 1)];
    let (o, stage) = compare_sqrt_sums_staged(&exact(&a), &exact(&b));
    assert_eq!(o, Ordering::Less);
    assert_eq!(o, oracle(&a, &b));
    assert!(stage > Stage::Machine);
}

#[test]
fn scaled_radicands_tie() {
    let a: Terms = vec![(2, 6, 1)];
    let b: Terms = vec![(1, 24, 1)];
    assert_eq!(compare_sqrt_sums(&exact(&a), &exact(&b)), Ordering::Equal);
    let c: Terms = vec![(1, 2, 1), (1, 8, 1), (-1, 18, 1)];
    assert_eq!(compare_sqrt_sums(&exact(&c), &SqrtSum::zero()), Ordering::Equal);
}
