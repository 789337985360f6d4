use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{poly_mismatch, undefined};
use crate::binomial::binomial;
use crate::family::{ExponentRule, FamilyError, FamilyHandle};
use crate::mp::MpFloat;
use crate::poly::{Rational, SparsePoly};
use crate::report::{IdentityReport, Status, Witness};

/// Product of two integer power series truncated after `t^order`.
fn series_mul(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = alloc::vec![BigInt::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Generating function of `H_n`, checked as formal power series in `t`
/// through `t^order`: the right side
/// `1/(1-t) sum_j (t/(1-t))^j z^(h_j)` is expanded by actually multiplying
/// the series of `1/(1-t)` and `t/(1-t)`, and each coefficient is compared
/// with `H_n`.
pub fn check_gf(rule: &ExponentRule, order: u64) -> IdentityReport {
    let report = IdentityReport::new("gf.series")
        .param("rule", rule)
        .param("N", order);
    let mut handle = FamilyHandle::new(rule.clone());
    let lhs = match handle.upto(order) {
        Ok(h) => h.to_vec(),
        Err(e) => return undefined(report, e),
    };
    let n = order as usize;
    // 1/(1-t) and t/(1-t)
    let geometric = alloc::vec![BigInt::one(); n + 1];
    let mut ratio = geometric.clone();
    ratio[0] = BigInt::zero();
    let mut rhs = alloc::vec![SparsePoly::zero(); n + 1];
    let mut power = geometric;
    for j in 0..=n {
        let h = match rule.h_value(j as u64) {
            Ok(h) => h,
            Err(e) => return undefined(report, e),
        };
        for (k, c) in power.iter().enumerate() {
            if !c.is_zero() {
                rhs[k] = &rhs[k] + &SparsePoly::monomial(c.clone(), h);
            }
        }
        power = series_mul(&power, &ratio, n);
    }
    for (k, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
        if let Some(w) = poly_mismatch(a, b, &format!("t^{k} ")) {
            return report.fail(w);
        }
    }
    report
}

/// Rigorous upper bound on `x^h` for `0 <= x < 1`. Values below `2^-1000`
/// are reported as `2^-1000` to keep the exact comparisons small.
fn pow_upper(x: &Rational, h: u64) -> MpFloat {
    const PREC: u32 = 128;
    let floor = MpFloat::one().mul_pow2(-1000);
    if x.is_zero() {
        return if h == 0 { MpFloat::one() } else { MpFloat::zero() };
    }
    let base = MpFloat::from_rational(x, PREC);
    if h as f64 * base.log2_abs() < -1100.0 {
        return floor;
    }
    let mut acc = MpFloat::one();
    let mut sq = base;
    let mut e = h;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq, PREC);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq, PREC);
        }
    }
    // at most 130 roundings of 2^-127 each, plus the base raised to h < 2^64
    let acc = acc.mul(&MpFloat::one().add(&MpFloat::one().mul_pow2(-40), PREC), PREC);
    if acc.log2_abs() < -1000.0 {
        floor
    } else {
        acc
    }
}

fn mp(q: &Rational) -> MpFloat {
    MpFloat::from_rational(q, 128)
}

/// Truncated sums of the halving identity at a rational `z` with
/// `|z| < 1`, both computed exactly except for terms below `2^-300`
/// whose total is bounded by `dropped`.
#[derive(Debug, Clone)]
pub struct HalvingSums {
    /// `sum_{j<N} z^(h_j)`.
    pub left: Rational,
    /// `sum_{n<N} H_n(z) / 2^(n+1)`.
    pub right: Rational,
    /// Bound on `sum_{j>=N} |z|^(h_j)`.
    pub tail_left: Rational,
    /// Bound on `sum_{n>=N} |H_n(z)| / 2^(n+1)`.
    pub tail_right: Rational,
    /// Bound on the terms left out of `left` and `right`.
    pub dropped: Rational,
}

impl HalvingSums {
    pub fn discrepancy(&self) -> Rational {
        (&self.left - &self.right).abs()
    }

    /// Bound on the discrepancy implied by the tails alone.
    pub fn allowance(&self) -> Rational {
        &self.tail_left + &self.tail_right + &self.dropped
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HalvingError {
    #[error("|z| must be below 1")]
    InvalidDomain,
    #[error("the tail of a table rule is unknown")]
    UnknownTail,
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Bits below which a power of `|z|` is dropped from the exact sums.
const NEGLIGIBLE_BITS: f64 = 300.0;

pub fn halving_sums(rule: &ExponentRule, z: &Rational, n_terms: u64) -> Result<HalvingSums, HalvingError> {
    let abs_z = z.abs();
    if abs_z >= Rational::one() {
        return Err(HalvingError::InvalidDomain);
    }
    if matches!(rule, ExponentRule::Table(_)) {
        return Err(HalvingError::UnknownTail);
    }
    let n = n_terms as usize;
    let h = rule.h_values(n_terms)?;
    // log2(1/|z|), slightly underestimated so fewer terms are dropped
    let shrink = if abs_z.is_zero() {
        f64::INFINITY
    } else {
        -mp(&abs_z).log2_abs() * (1.0 - 1e-9)
    };
    let negligible = |e: u64| e > 0 && (e as f64) * shrink > NEGLIGIBLE_BITS;

    let mut left = Rational::zero();
    let mut dropped_mp = MpFloat::zero();
    let mut powers: Vec<Option<Rational>> = Vec::with_capacity(n);
    for &e in &h[..n] {
        if negligible(e) {
            dropped_mp = dropped_mp.add(&pow_upper(&abs_z, e), 128);
            powers.push(None);
        } else {
            let p = num_traits::pow(z.clone(), e as usize);
            left += &p;
            powers.push(Some(p));
        }
    }
    let mut right = Rational::zero();
    let mut scale = Rational::new(BigInt::one(), BigInt::from(2));
    for k in 0..n {
        let mut hk = Rational::zero();
        for (j, p) in powers.iter().enumerate().take(k + 1) {
            if let Some(p) = p {
                hk += p * Rational::from_integer(binomial(k as u64, j as i64));
            }
        }
        right += hk * &scale;
        scale /= Rational::from_integer(BigInt::from(2));
    }
    // each dropped |z|^h appears on the right with total weight below 1
    let dropped = mp(&Rational::from_integer(2.into())).mul(&dropped_mp, 128);

    let start = rule.increasing_from().max(n_terms);
    let mut tail_left = MpFloat::zero();
    for j in n_terms..start {
        tail_left = tail_left.add(&pow_upper(&abs_z, rule.h_value(j)?), 128);
    }
    let geometric = mp(&(Rational::one() / (Rational::one() - &abs_z)));
    let head = pow_upper(&abs_z, rule.h_value(start)?).mul(&geometric, 128);
    tail_left = tail_left
        .add(&head, 128)
        .mul(&mp(&Rational::new(BigInt::from(1001), BigInt::from(1000))), 128);

    // sum_{n>=N} C(n,j) / 2^(n+1) = P(Bin(N, 1/2) <= j)
    let total = BigInt::one() << n;
    let mut cdf = BigInt::zero();
    let mut tail_right = MpFloat::zero();
    for (j, &e) in h[..n].iter().enumerate() {
        cdf += binomial(n_terms, j as i64);
        let weight = Rational::new(cdf.clone(), total.clone());
        tail_right = tail_right.add(&pow_upper(&abs_z, e).mul(&mp(&weight), 128), 128);
    }
    tail_right = tail_right
        .mul(&mp(&Rational::new(BigInt::from(1001), BigInt::from(1000))), 128)
        .add(&tail_left, 128);

    Ok(HalvingSums {
        left,
        right,
        tail_left: tail_left.to_rational(),
        tail_right: tail_right.to_rational(),
        dropped: dropped.to_rational(),
    })
}

/// The identity `sum_j z^(h_j) = sum_n H_n(z) / 2^(n+1)` for `|z| < 1`,
/// checked on the first `n_terms` terms of each side: passes when the
/// truncated sums differ by at most `tol` plus rigorous tail bounds.
pub fn check_halving(rule: &ExponentRule, z: &Rational, n_terms: u64, tol: f64) -> IdentityReport {
    let report = IdentityReport::new("gf.halving")
        .param("rule", rule)
        .param("z", z)
        .param("N", n_terms)
        .param("tol", tol);
    let sums = match halving_sums(rule, z, n_terms) {
        Ok(s) => s,
        Err(HalvingError::Family(e)) => return undefined(report, e),
        Err(e @ HalvingError::InvalidDomain) => {
            return report.verdict(Status::NotApplicable, Witness::new("z", z, e))
        }
        Err(e @ HalvingError::UnknownTail) => {
            return report.verdict(Status::NotApplicable, Witness::new("tail", e, "bounded tail"))
        }
    };
    let tol_q = MpFloat::from_f64(tol).to_rational();
    let disc = sums.discrepancy();
    let f = |q: &Rational| mp(q).to_f64();
    let info = format!(
        "discrepancy={:.3e} tail_left={:.3e} tail_right={:.3e}",
        f(&disc),
        f(&sums.tail_left),
        f(&sums.tail_right)
    );
    let report = report.with_info(info);
    if disc <= tol_q + sums.allowance() {
        report
    } else {
        report.fail(Witness::new(
            format!("first {n_terms} terms"),
            f(&sums.left),
            f(&sums.right),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gf_examples() {
        assert!(check_gf(&ExponentRule::Binomial(1), 6).pass);
        assert!(check_gf(&ExponentRule::Binomial(2), 10).pass);
        assert!(check_gf(&ExponentRule::Table((0..=5).collect()), 5).pass);
        let short = check_gf(&ExponentRule::Table(alloc::vec![0, 1]), 3);
        assert_eq!(short.status, Status::NotApplicable);
    }

    #[test]
    fn halving_examples() {
        let r = check_halving(&ExponentRule::Binomial(2), &q(1, 2), 40, 1e-9);
        assert!(r.pass, "{r:?}");
        let r = check_halving(&ExponentRule::Geometric, &q(1, 3), 30, 1e-9);
        assert!(r.pass, "{r:?}");
        let r = check_halving(&ExponentRule::Binomial(2), &q(-3, 4), 60, 1e-9);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn halving_at_zero_counts_zero_exponents() {
        let s = halving_sums(&ExponentRule::Binomial(3), &q(0, 1), 4).unwrap();
        assert_eq!(s.left, q(3, 1));
        // the missing mass of the right side is exactly the binomial tail
        assert_eq!(&s.left - &s.right, q(17, 16));
        assert!(s.discrepancy() <= s.allowance());
        assert!(check_halving(&ExponentRule::Binomial(3), &q(0, 1), 4, 1e-12).pass);
    }

    #[test]
    fn halving_rejects_bad_input() {
        let r = check_halving(&ExponentRule::Binomial(2), &q(1, 1), 10, 1e-9);
        assert_eq!(r.status, Status::NotApplicable);
        let r = check_halving(&ExponentRule::Table(alloc::vec![0, 1, 2]), &q(1, 2), 2, 1e-9);
        assert_eq!(r.status, Status::NotApplicable);
    }

    #[test]
    fn halving_detects_a_wrong_sequence() {
        // feed the right side of one rule against the left side of another
        let a = halving_sums(&ExponentRule::Binomial(2), &q(1, 2), 40).unwrap();
        let b = halving_sums(&ExponentRule::Binomial(3), &q(1, 2), 40).unwrap();
        assert!((&a.left - &b.right).abs() > a.allowance() + b.allowance());
    }
}
