//! Exact sparse univariate polynomials over arbitrary-precision integers.
//!
//! A [`SparsePoly`] is a list of `(exponent, coefficient)` terms sorted by
//! strictly increasing exponent with no zero coefficients, so structural
//! equality is polynomial equality.

mod numeric;
mod quotient;
mod text;

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use numeric::{eval_numeric, NumericEval};
pub use quotient::{OneMinusZQuotient, Run, DENSE_GAP_THRESHOLD};
pub use text::ParsePolyError;

/// Exact rational number; always reduced with positive denominator.
pub type Rational = BigRational;

/// Default cap on the degree of a densified polynomial.
pub const DEFAULT_DEGREE_CAP: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is not divisible by 1 - z (value at 1 is {value})")]
    NotDivisible { value: BigInt },
    #[error("degree {degree} exceeds the densification cap {cap}")]
    DegreeCapExceeded { degree: u64, cap: u64 },
    #[error("working precision {0} is below 53 bits")]
    PrecisionTooLow(u32),
    #[error("exponent arithmetic overflowed")]
    ExponentOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exp: u64,
    pub coeff: BigInt,
}

impl Term {
    pub fn new(exp: u64, coeff: impl Into<BigInt>) -> Self {
        Term {
            exp,
            coeff: coeff.into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: Vec<Term>,
}

/// Sorts by exponent, merges equal exponents and drops zeros.
fn normalize(mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_unstable_by_key(|t| t.exp);
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.exp == t.exp => last.coeff += t.coeff,
            _ => {
                if let Some(last) = out.last() {
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                out.push(t);
            }
        }
    }
    if out.last().is_some_and(|t| t.coeff.is_zero()) {
        out.pop();
    }
    out
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: u64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            SparsePoly {
                terms: alloc::vec![Term { exp, coeff: c }],
            }
        }
    }

    /// `1 - z`.
    pub fn one_minus_z() -> Self {
        Self::from_terms([Term::new(0, 1), Term::new(1, -1)])
    }

    /// Builds a polynomial from terms in any order; equal exponents are merged.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        SparsePoly {
            terms: normalize(terms.into_iter().collect()),
        }
    }

    /// From dense coefficients `[c0, c1, ...]`.
    pub fn from_dense(coeffs: &[BigInt]) -> Self {
        SparsePoly {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| Term {
                    exp: e as u64,
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    /// Trusted constructor for already canonical term lists.
    pub(crate) fn from_sorted_unchecked(terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].exp < w[1].exp));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        SparsePoly { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|t| t.exp)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .last()
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |t| t.exp) {
            Ok(i) => self.terms[i].coeff.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Sum of all coefficients, i.e. the value at `z = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.iter().map(|t| &t.coeff).sum()
    }

    /// Lowest-exponent term with a negative coefficient.
    pub fn first_negative(&self) -> Option<&Term> {
        self.terms.iter().find(|t| t.coeff.is_negative())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: t.exp,
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    /// Multiplication by `c * z^shift`.
    pub fn mul_monomial(&self, c: &BigInt, shift: u64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: t.exp + shift,
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    /// Replaces `z` by `-z`.
    pub fn reflect(&self) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: t.exp,
                    coeff: if t.exp % 2 == 1 {
                        -&t.coeff
                    } else {
                        t.coeff.clone()
                    },
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn merge_with(&self, other: &Self, negate_other: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let flip = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].exp.cmp(&b[j].exp) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(Term {
                        exp: b[j].exp,
                        coeff: flip(&b[j].coeff),
                    });
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].coeff - &b[j].coeff
                    } else {
                        &a[i].coeff + &b[j].coeff
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            exp: a[i].exp,
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            exp: t.exp,
            coeff: flip(&t.coeff),
        }));
        SparsePoly { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let t = &small.terms[0];
            return large.mul_monomial(&t.coeff, t.exp);
        }
        let mut acc = Vec::with_capacity(small.len() * large.len());
        for s in &small.terms {
            for l in &large.terms {
                acc.push(Term {
                    exp: s.exp + l.exp,
                    coeff: &s.coeff * &l.coeff,
                });
            }
        }
        SparsePoly {
            terms: normalize(acc),
        }
    }

    /// Exact value at a rational point.
    ///
    /// Evaluated as a sparse Horner scheme on the numerator
    /// `sum c_k a^(e_k) b^(deg - e_k)` of `p(a/b)`: each exponent gap costs
    /// one square-and-multiply power of `a` and of `b`.
    pub fn eval_exact(&self, x: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let (num, den) = (x.numer(), x.denom());
        let mut iter = self.terms.iter().rev();
        let top = iter.next().expect("nonzero polynomial");
        let mut acc = top.coeff.clone();
        let mut den_pow_total = BigInt::one();
        let mut prev = top.exp;
        for t in iter {
            let gap = prev - t.exp;
            den_pow_total *= num_traits::pow(den.clone(), gap as usize);
            acc = acc * num_traits::pow(num.clone(), gap as usize) + &t.coeff * &den_pow_total;
            prev = t.exp;
        }
        // remaining factor x^(lowest exponent)
        acc *= num_traits::pow(num.clone(), prev as usize);
        den_pow_total *= num_traits::pow(den.clone(), prev as usize);
        debug_assert_eq!(den_pow_total, num_traits::pow(den.clone(), deg as usize));
        Rational::new(acc, den_pow_total)
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut prev: Option<u64> = None;
        for t in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= num_traits::pow(x.clone(), (p - t.exp) as usize);
            }
            acc += &t.coeff;
            prev = Some(t.exp);
        }
        if let Some(p) = prev {
            acc *= num_traits::pow(x.clone(), p as usize);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.exp > 0)
                .map(|t| Term {
                    exp: t.exp - 1,
                    coeff: &t.coeff * BigInt::from(t.exp),
                })
                .collect(),
        }
    }

    /// Quotient by `1 - z` in gap-aware form; see [`OneMinusZQuotient`].
    pub fn div_one_minus_z_runs(&self) -> Result<OneMinusZQuotient, PolyError> {
        OneMinusZQuotient::new(self)
    }

    /// The exact `q` with `(1 - z) q = p`.
    pub fn div_one_minus_z(&self) -> Result<Self, PolyError> {
        Ok(self.div_one_minus_z_runs()?.to_sparse())
    }

    /// Largest `k` with `(1 - z)^k | p`, and the cofactor `p / (1 - z)^k`.
    ///
    /// Panics on the zero polynomial.
    pub fn one_minus_z_multiplicity(&self) -> (u32, Self) {
        assert!(!self.is_zero(), "multiplicity of 1 - z in the zero polynomial");
        let mut k = 0;
        let mut cur = self.clone();
        while cur.coefficient_sum().is_zero() {
            cur = cur
                .div_one_minus_z()
                .expect("value at 1 checked to be zero");
            k += 1;
        }
        (k, cur)
    }

    /// Dense coefficient vector `[c0, ..., c_deg]`.
    pub fn to_dense(&self, cap: u64) -> Result<Vec<BigInt>, PolyError> {
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        if deg > cap {
            return Err(PolyError::DegreeCapExceeded { degree: deg, cap });
        }
        let mut out = alloc::vec![BigInt::zero(); deg as usize + 1];
        for t in &self.terms {
            out[t.exp as usize] = t.coeff.clone();
        }
        Ok(out)
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, t| g.gcd(&t.coeff))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.merge_with(rhs, false)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.merge_with(rhs, true)
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.product(rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&BigInt::from(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: &SparsePoly) -> SparsePoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl core::iter::Sum for SparsePoly {
    fn sum<I: Iterator<Item = SparsePoly>>(iter: I) -> Self {
        iter.fold(SparsePoly::zero(), |a, b| &a + &b)
    }
}

/// Schoolbook convolution of dense coefficient vectors.
pub fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(terms: &[(u64, i64)]) -> SparsePoly {
        SparsePoly::from_terms(terms.iter().map(|&(e, c)| Term::new(e, c)))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn add_cancels_and_merges() {
        assert_eq!(&p(&[(0, 3), (1, 1)]) + &p(&[(0, -3)]), p(&[(1, 1)]));
        assert_eq!(
            &p(&[(0, 1), (3, 1)]) + &p(&[(1, 1), (3, 1)]),
            p(&[(0, 1), (1, 1), (3, 2)])
        );
        // f_{2,2} + f_{2,1}
        assert_eq!(&p(&[(0, 3), (1, 1)]) + &p(&[(0, 2)]), p(&[(0, 5), (1, 1)]));
    }

    #[test]
    fn from_terms_drops_cancelled_middle_terms() {
        let poly = p(&[(2, 1), (1, 4), (2, -1), (0, 0), (5, 2)]);
        assert_eq!(poly.terms(), &[Term::new(1, 4), Term::new(5, 2)]);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[(0, 1), (1, 1)]) * &p(&[(0, 1), (1, -1)]), p(&[(0, 1), (2, -1)]));
        let f22 = p(&[(0, 3), (1, 1)]);
        assert_eq!(&f22 * &f22, p(&[(0, 9), (1, 6), (2, 1)]));
        assert!((&p(&[(0, 1), (1, 1)]) * &SparsePoly::zero()).is_zero());
    }

    #[test]
    fn eval_exact_examples() {
        let f23 = p(&[(0, 4), (1, 3), (3, 1)]);
        assert_eq!(f23.eval_exact(&q(1, 1)), q(8, 1));
        assert_eq!(f23.eval_exact(&q(-1, 1)), q(0, 1));
        let f34 = p(&[(0, 11), (1, 4), (4, 1)]);
        assert_eq!(f34.eval_exact(&q(0, 1)), q(11, 1));
        // 4 + 3/2 + 1/8
        assert_eq!(f23.eval_exact(&q(1, 2)), q(45, 8));
        assert_eq!(p(&[(3, 2)]).eval_exact(&q(-2, 3)), q(-16, 27));
        assert_eq!(SparsePoly::zero().eval_exact(&q(5, 7)), q(0, 1));
    }

    #[test]
    fn eval_int_matches_eval_exact() {
        let f = p(&[(0, 4), (1, 3), (3, 1), (7, -2)]);
        for x in -3..=3 {
            assert_eq!(
                Rational::from_integer(f.eval_int(&BigInt::from(x))),
                f.eval_exact(&q(x, 1))
            );
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[(0, 3), (1, 1)]).derivative(), p(&[(0, 1)]));
        assert_eq!(p(&[(0, 4), (1, 3), (3, 1)]).derivative(), p(&[(0, 3), (2, 3)]));
        assert!(p(&[(0, 9)]).derivative().is_zero());
    }

    #[test]
    fn div_one_minus_z_examples() {
        assert_eq!(p(&[(0, 1), (1, -1)]).div_one_minus_z().unwrap(), p(&[(0, 1)]));
        let num = p(&[(0, 1), (2, 1), (3, -2)]);
        let quo = num.div_one_minus_z().unwrap();
        assert_eq!(quo, p(&[(0, 1), (1, 1), (2, 2)]));
        assert_eq!(&SparsePoly::one_minus_z() * &quo, num);
        assert_eq!(
            p(&[(0, 1), (1, 1)]).div_one_minus_z(),
            Err(PolyError::NotDivisible { value: 2.into() })
        );
    }

    #[test]
    fn multiplicity_examples() {
        let cube = SparsePoly::one_minus_z().pow(3);
        assert_eq!(cube.one_minus_z_multiplicity(), (3, SparsePoly::one()));
        let (k, cof) = p(&[(0, 1), (2, 1), (3, -2)]).one_minus_z_multiplicity();
        assert_eq!(k, 1);
        assert_eq!(cof.coefficient_sum(), 4.into());
        assert_eq!(p(&[(0, 5)]).one_minus_z_multiplicity(), (0, p(&[(0, 5)])));
    }

    #[test]
    fn to_dense_examples() {
        let dense = p(&[(0, 4), (1, 3), (3, 1)]).to_dense(10).unwrap();
        assert_eq!(dense, vec![4.into(), 3.into(), BigInt::zero(), 1.into()]);
        assert_eq!(
            p(&[(15504, 1)]).to_dense(10_000),
            Err(PolyError::DegreeCapExceeded {
                degree: 15504,
                cap: 10_000
            })
        );
        assert!(SparsePoly::zero().to_dense(0).unwrap().is_empty());
    }

    #[test]
    fn reflect_and_pow() {
        let f = p(&[(0, 1), (1, 1)]);
        assert_eq!(f.pow(3), p(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
        assert_eq!(f.pow(3).reflect(), p(&[(0, 1), (1, -3), (2, 3), (3, -1)]));
        assert_eq!(f.pow(0), SparsePoly::one());
    }
}
