//! Exact sums of square roots of rationals.
//!
//! Values are kept in a canonical form: a rational part plus terms
//! `c * sqrt(q)` with distinct, non-square radicands `q > 0` and nonzero `c`.
//! Comparison runs through increasingly expensive stages and stops at the
//! first one that decides the sign of the difference.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::DyadicInterval;
use super::interval::Interval;

/// Precision of the first arbitrary-precision stage, in bits.
pub const DYADIC_BITS: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Term {
    coef: BigRational,
    radicand: BigRational,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SqrtSum {
    rational: BigRational,
    terms: Vec<Term>,
}

/// The comparison stage that produced a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    /// The canonical difference had no terms left.
    Cancelled,
    Machine,
    Dyadic,
    Exact,
}

/// Storage order of terms. Radicands are reduced, so this is a total order
/// consistent with equality and much cheaper than comparing values.
fn radicand_order(a: &BigRational, b: &BigRational) -> Ordering {
    a.denom().cmp(b.denom()).then_with(|| a.numer().cmp(b.numer()))
}

/// `sqrt(q)` as a rational if `q` is the square of one.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt_exact(x: &BigInt) -> Option<BigInt> {
    let r = x.sqrt();
    if &r * &r == *x {
        Some(r)
    } else {
        None
    }
}

impl SqrtSum {
    pub fn zero() -> Self {
        SqrtSum::default()
    }

    pub fn from_rational(q: BigRational) -> Self {
        SqrtSum {
            rational: q,
            terms: Vec::new(),
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_rational(BigRational::from_float(x).expect("finite value"))
    }

    /// `sqrt(q)` for `q >= 0`.
    pub fn sqrt(q: BigRational) -> Self {
        Self::term(BigRational::one(), q)
    }

    /// `c * sqrt(q)` for `q >= 0`.
    pub fn term(c: BigRational, q: BigRational) -> Self {
        assert!(!q.is_negative(), "negative radicand");
        if c.is_zero() || q.is_zero() {
            return Self::zero();
        }
        if let Some(r) = rational_sqrt(&q) {
            return Self::from_rational(c * r);
        }
        SqrtSum {
            rational: BigRational::zero(),
            terms: vec![Term { coef: c, radicand: q }],
        }
    }

    /// True when the canonical form is empty. Sums like `sqrt(2) + sqrt(8) -
    /// sqrt(18)` are zero without being syntactically zero; use
    /// [`SqrtSum::signum`] for a semantic test.
    pub fn is_syntactically_zero(&self) -> bool {
        self.rational.is_zero() && self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    /// Iterates `(coefficient, radicand)` pairs.
    pub fn radical_terms(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter().map(|t| (&t.coef, &t.radicand))
    }

    pub fn scale(&self, c: &BigRational) -> SqrtSum {
        if c.is_zero() {
            return Self::zero();
        }
        SqrtSum {
            rational: &self.rational * c,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: &t.coef * c,
                    radicand: t.radicand.clone(),
                })
                .collect(),
        }
    }

    /// Divides by `sqrt(q)` for `q > 0`.
    pub fn div_sqrt(&self, q: &BigRational) -> SqrtSum {
        assert!(q.is_positive(), "division by a non-positive radicand");
        let inv = q.recip();
        let mut out = SqrtSum::term(self.rational.clone(), inv.clone());
        for t in &self.terms {
            out = out + SqrtSum::term(t.coef.clone(), &t.radicand * &inv);
        }
        out
    }

    fn merged(a: &[Term], b: &[Term], negate_b: bool) -> Vec<Term> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let fix = |t: &Term| {
            if negate_b {
                Term {
                    coef: -&t.coef,
                    radicand: t.radicand.clone(),
                }
            } else {
                t.clone()
            }
        };
        while i < a.len() && j < b.len() {
            match radicand_order(&a[i].radicand, &b[j].radicand) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(fix(&b[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        &a[i].coef - &b[j].coef
                    } else {
                        &a[i].coef + &b[j].coef
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            coef: c,
                            radicand: a[i].radicand.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(fix));
        out
    }

    /// Machine-precision enclosure, summing terms by increasing magnitude.
    pub fn interval(&self) -> Interval {
        let mut parts: Vec<Interval> = Vec::with_capacity(self.terms.len() + 1);
        if !self.rational.is_zero() {
            parts.push(Interval::from_rational(&self.rational));
        }
        for t in &self.terms {
            let c = Interval::from_rational(&t.coef);
            let r = Interval::from_rational(&t.radicand).sqrt();
            parts.push(c * r);
        }
        parts.sort_by(|a, b| {
            let ma = a.lo().abs().max(a.hi().abs());
            let mb = b.lo().abs().max(b.hi().abs());
            ma.total_cmp(&mb)
        });
        parts.into_iter().fold(Interval::ZERO, |acc, p| acc + p)
    }

    /// Enclosure with about `prec` bits per term.
    pub fn dyadic(&self, prec: u64) -> DyadicInterval {
        let mut acc = DyadicInterval::from_rational(&self.rational, prec);
        for t in &self.terms {
            acc = acc.add(&signed_sqrt(&t.coef, &t.radicand, prec));
        }
        acc
    }

    /// Nearest-ish `f64` approximation, for reporting.
    pub fn to_f64(&self) -> f64 {
        self.interval().mid()
    }

    /// Sign of the exact value.
    pub fn signum(&self) -> Ordering {
        self.signum_with_stage().0
    }

    pub fn signum_with_stage(&self) -> (Ordering, Stage) {
        if self.terms.is_empty() {
            return (self.rational.cmp(&BigRational::zero()), Stage::Cancelled);
        }
        if let Some(s) = self.interval().sign() {
            return (s, Stage::Machine);
        }
        for bits in [DYADIC_BITS / 8, DYADIC_BITS] {
            if let Some(s) = self.dyadic(bits).sign() {
                return (s, Stage::Dyadic);
            }
        }
        (exact_sign(self), Stage::Exact)
    }
}

/// `sign(c) * sqrt(c^2 q)` as a dyadic enclosure.
fn signed_sqrt(c: &BigRational, q: &BigRational, prec: u64) -> DyadicInterval {
    let folded = c * c * q;
    let mag = DyadicInterval::sqrt_rational(&folded, prec);
    if c.is_negative() {
        mag.neg()
    } else {
        mag
    }
}

/// Splits a set of integers `> 1` into pairwise coprime factors such that
/// every input is a product of them.
fn coprime_basis(inputs: &[BigInt]) -> Vec<BigInt> {
    let mut set: Vec<BigInt> = inputs.iter().filter(|x| !x.is_one()).cloned().collect();
    loop {
        set.retain(|x| !x.is_one());
        let mut found = None;
        'outer: for i in 0..set.len() {
            for j in (i + 1)..set.len() {
                let g = set[i].gcd(&set[j]);
                if !g.is_one() {
                    found = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        match found {
            None => break,
            Some((i, j, g)) => {
                let b = set.swap_remove(j);
                let a = set.swap_remove(i);
                set.push(&a / &g);
                set.push(&b / &g);
                set.push(g);
            }
        }
    }
    // A perfect square basis element contributes nothing to the radical
    // part; replacing it by its root keeps the set coprime.
    let mut out = Vec::with_capacity(set.len());
    for mut b in set {
        while let Some(r) = int_sqrt_exact(&b) {
            if r.is_one() {
                break;
            }
            b = r;
        }
        out.push(b);
    }
    out.sort();
    out.dedup();
    out
}

/// Decides the sign of a sum that no interval stage could settle.
///
/// Every radical is rewritten over a coprime non-square basis, so that sums of
/// the same squarefree class merge and the remaining radicals are linearly
/// independent over the rationals. Zero is then a syntactic property and a
/// nonzero sum has its sign found by raising precision.
fn exact_sign(s: &SqrtSum) -> Ordering {
    // c * sqrt(n/d) = (c/d) * sqrt(n*d)
    let ints: Vec<(BigRational, BigInt)> = s
        .terms
        .iter()
        .map(|t| {
            let n = t.radicand.numer();
            let d = t.radicand.denom();
            (&t.coef / BigRational::from_integer(d.clone()), n * d)
        })
        .collect();
    let basis = coprime_basis(&ints.iter().map(|(_, m)| m.clone()).collect::<Vec<_>>());
    let mut groups: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    let mut rational = s.rational.clone();
    for (c, m) in ints {
        let mut rest = m;
        let mut key = Vec::new();
        let mut outside = BigInt::one();
        for (idx, b) in basis.iter().enumerate() {
            let mut e = 0u32;
            loop {
                let (q, r) = rest.div_rem(b);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                outside *= b.pow(e / 2);
                if e % 2 == 1 {
                    key.push(idx);
                }
            }
        }
        debug_assert!(rest.is_one(), "radicand not factored over its basis");
        let coef = c * BigRational::from_integer(outside);
        if key.is_empty() {
            rational += coef;
        } else {
            *groups.entry(key).or_insert_with(BigRational::zero) += coef;
        }
    }
    groups.retain(|_, c| !c.is_zero());
    if groups.is_empty() {
        return rational.cmp(&BigRational::zero());
    }
    let mut reduced = SqrtSum::from_rational(rational);
    for (key, c) in groups {
        let m: BigInt = key.iter().map(|&i| basis[i].clone()).product();
        reduced.terms.push(Term {
            coef: c,
            radicand: BigRational::from_integer(m),
        });
    }
    let mut prec = 2 * DYADIC_BITS;
    loop {
        if let Some(sign) = reduced.dyadic(prec).sign() {
            debug_assert_ne!(sign, Ordering::Equal);
            return sign;
        }
        prec *= 2;
    }
}

/// Compares two sums exactly.
pub fn compare_sqrt_sums(a: &SqrtSum, b: &SqrtSum) -> Ordering {
    (a - b).signum()
}

/// Like [`compare_sqrt_sums`] and also reports which stage decided.
pub fn compare_sqrt_sums_staged(a: &SqrtSum, b: &SqrtSum) -> (Ordering, Stage) {
    (a - b).signum_with_stage()
}

impl Add for &SqrtSum {
    type Output = SqrtSum;
    fn add(self, o: &SqrtSum) -> SqrtSum {
        SqrtSum {
            rational: &self.rational + &o.rational,
            terms: SqrtSum::merged(&self.terms, &o.terms, false),
        }
    }
}

impl Add for SqrtSum {
    type Output = SqrtSum;
    fn add(self, o: SqrtSum) -> SqrtSum {
        &self + &o
    }
}

impl Sub for &SqrtSum {
    type Output = SqrtSum;
    fn sub(self, o: &SqrtSum) -> SqrtSum {
        SqrtSum {
            rational: &self.rational - &o.rational,
            terms: SqrtSum::merged(&self.terms, &o.terms, true),
        }
    }
}

impl Sub for SqrtSum {
    type Output = SqrtSum;
    fn sub(self, o: SqrtSum) -> SqrtSum {
        &self - &o
    }
}

impl Neg for SqrtSum {
    type Output = SqrtSum;
    fn neg(self) -> SqrtSum {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Debug for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for t in &self.terms {
            write!(f, " + {}*sqrt({})", t.coef, t.radicand)?;
        }
        write!(f, " ~ {}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn equal_radicands_cancel() {
        let a = SqrtSum::sqrt(r(2)) + SqrtSum::sqrt(r(3));
        let b = SqrtSum::sqrt(r(3)) + SqrtSum::sqrt(r(2));
        assert_eq!(compare_sqrt_sums_staged(&a, &b), (Ordering::Equal, Stage::Cancelled));
    }

    #[test]
    fn perfect_squares_become_rational() {
        let a = SqrtSum::sqrt(rq(9, 4));
        assert_eq!(a.num_terms(), 0);
        assert_eq!(a.rational_part(), &rq(3, 2));
    }

    #[test]
    fn hidden_equality_needs_exact_stage() {
        // sqrt(2) + sqrt(8) = sqrt(18)
        let a = SqrtSum::sqrt(r(2)) + SqrtSum::sqrt(r(8));
        let b = SqrtSum::sqrt(r(18));
        assert_eq!(compare_sqrt_sums_staged(&a, &b), (Ordering::Equal, Stage::Exact));
        // sqrt(1/2) + sqrt(1/8) = sqrt(9/8)
        let a = SqrtSum::sqrt(rq(1, 2)) + SqrtSum::sqrt(rq(1, 8));
        let b = SqrtSum::sqrt(rq(9, 8));
        assert_eq!(compare_sqrt_sums(&a, &b), Ordering::Equal);
    }

    #[test]
    fn near_tie_is_resolved() {
        let a = SqrtSum::sqrt(r(10)) + SqrtSum::sqrt(r(11));
        let b = SqrtSum::sqrt(r(5)) + SqrtSum::sqrt(r(18));
        let expected = (10f64.sqrt() + 11f64.sqrt()).total_cmp(&(5f64.sqrt() + 18f64.sqrt()));
        assert_eq!(compare_sqrt_sums(&a, &b), expected);
    }

    #[test]
    fn tiny_difference_beyond_machine_precision() {
        let big = BigInt::from(10).pow(40);
        let q = BigRational::from_integer(big.clone());
        let q1 = BigRational::from_integer(big + 1);
        let a = SqrtSum::sqrt(q1);
        let b = SqrtSum::sqrt(q);
        let (ord, stage) = compare_sqrt_sums_staged(&a, &b);
        assert_eq!(ord, Ordering::Greater);
        assert!(stage >= Stage::Dyadic);
    }

    #[test]
    fn divide_by_sqrt() {
        // (sqrt(8) + 2) / sqrt(2) = 2 + sqrt(2)
        let a = SqrtSum::sqrt(r(8)) + SqrtSum::from_rational(r(2));
        let d = a.div_sqrt(&r(2));
        let e = SqrtSum::from_rational(r(2)) + SqrtSum::sqrt(r(2));
        assert_eq!(compare_sqrt_sums(&d, &e), Ordering::Equal);
    }

    #[test]
    fn coprime_basis_splits_shared_factors() {
        let b = coprime_basis(&[BigInt::from(12), BigInt::from(18)]);
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                assert!(b[i].gcd(&b[j]).is_one());
            }
            assert!(int_sqrt_exact(&b[i]).is_none() || b[i].is_one());
        }
    }

    #[test]
    fn exact_stage_finds_nonzero_sign() {
        // sqrt(2) + sqrt(8) = sqrt(18), perturbed by 2^-30.
        let a = SqrtSum::sqrt(r(2)) + SqrtSum::sqrt(r(8)) + SqrtSum::from_rational(rq(1, 1 << 30));
        let b = SqrtSum::sqrt(r(18));
        assert_eq!(compare_sqrt_sums(&a, &b), Ordering::Greater);
    }
}
