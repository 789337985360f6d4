use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{poly_mismatch, sign, undefined};
use crate::binomial::binomial;
use crate::family::{ExponentRule, FamilyHandle};
use crate::poly::{Rational, SparsePoly};
use crate::qpoly::QPoly;
use crate::report::{IdentityReport, Status, Witness};

fn t_mismatch(lhs: &[SparsePoly], rhs: &[SparsePoly]) -> Option<Witness> {
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .find_map(|(k, (a, b))| poly_mismatch(a, b, &format!("t^{k} ")))
}

/// `sum_k C(n,k) t^k H_k(z) = sum_j C(n,j) t^j (1+t)^(n-j) z^(h_j)` as
/// polynomials in `t` and `z`.
pub fn check_finite_transform(rule: &ExponentRule, n: u64) -> IdentityReport {
    let report = IdentityReport::new("transform.finite")
        .param("rule", rule)
        .param("n", n);
    let mut handle = FamilyHandle::new(rule.clone());
    let h = match handle.upto(n) {
        Ok(h) => h.to_vec(),
        Err(e) => return undefined(report, e),
    };
    let lhs: Vec<SparsePoly> = (0..=n)
        .map(|k| h[k as usize].scale(&binomial(n, k as i64)))
        .collect();
    let mut rhs = alloc::vec![SparsePoly::zero(); n as usize + 1];
    for j in 0..=n {
        let e = rule.h_value(j).expect("defined through n");
        let c = binomial(n, j as i64);
        // t^j (1+t)^(n-j)
        for i in 0..=(n - j) {
            let coeff = &c * binomial(n - j, i as i64);
            let k = (j + i) as usize;
            rhs[k] = &rhs[k] + &SparsePoly::monomial(coeff, e);
        }
    }
    report.check(t_mismatch(&lhs, &rhs))
}

/// `H_n(-z) = 2^n sum_k C(n,k) (-1/2)^k H_k(z)`, valid when every `h_j`
/// with `j <= n` has the parity of `j`.
pub fn check_parity_reflection(rule: &ExponentRule, n: u64) -> IdentityReport {
    let report = IdentityReport::new("transform.parity-reflection")
        .param("rule", rule)
        .param("n", n);
    let hs = match rule.h_values(n) {
        Ok(v) => v,
        Err(e) => return undefined(report, e),
    };
    if let Some((j, hj)) = hs.iter().enumerate().find(|(j, hj)| (*hj ^ *j as u64) & 1 == 1) {
        return report.verdict(
            Status::NotApplicable,
            Witness::new(format!("h_{j} mod 2"), hj % 2, j % 2),
        );
    }
    let mut handle = FamilyHandle::new(rule.clone());
    let h = handle.upto(n).expect("defined through n").to_vec();
    let lhs = h[n as usize].reflect();
    let rhs: SparsePoly = (0..=n)
        .map(|k| {
            let c = sign(k) * binomial(n, k as i64) * (BigInt::one() << (n - k));
            h[k as usize].scale(&c)
        })
        .sum();
    report.check(poly_mismatch(&lhs, &rhs, ""))
}

/// `sum_k C(n,k) (-1)^k k^nu H_k(z)`.
pub fn support_collapse_lhs(handle: &mut FamilyHandle, n: u64, nu: u32) -> Result<SparsePoly, crate::family::FamilyError> {
    let h = handle.upto(n)?;
    Ok((0..=n)
        .map(|k| {
            let c = sign(k) * binomial(n, k as i64) * num_traits::pow(BigInt::from(k), nu as usize);
            h[k as usize].scale(&c)
        })
        .sum())
}

/// The inverse binomial transform `sum_k C(n,k) (-1)^k H_k = (-1)^n z^(h_n)`
/// for `nu = 0`, and its weighted form
/// `sum_k C(n,k) (-1)^k k H_k = (-1)^n n (z^(h_n) + z^(h_(n-1)))` for `nu = 1`.
pub fn check_inverse_transform(rule: &ExponentRule, n: u64, nu: u32) -> IdentityReport {
    let id = if nu == 0 {
        "transform.inverse"
    } else {
        "transform.inverse-weighted"
    };
    let report = IdentityReport::new(id).param("rule", rule).param("n", n);
    if nu > 1 {
        return report.verdict(Status::NotApplicable, Witness::new("nu", nu, "0 or 1"));
    }
    let mut handle = FamilyHandle::new(rule.clone());
    let lhs = match support_collapse_lhs(&mut handle, n, nu) {
        Ok(p) => p,
        Err(e) => return undefined(report, e),
    };
    let hn = rule.h_value(n).expect("defined through n");
    let rhs = if nu == 0 {
        SparsePoly::monomial(sign(n), hn)
    } else if n == 0 {
        SparsePoly::zero()
    } else {
        let hn1 = rule.h_value(n - 1).expect("defined through n");
        let c = sign(n) * BigInt::from(n);
        &SparsePoly::monomial(c.clone(), hn) + &SparsePoly::monomial(c, hn1)
    };
    report.check(poly_mismatch(&lhs, &rhs, ""))
}

/// `sum_k (-1)^k C(n,k) C(k,j) k^nu`.
pub fn moment_sum(n: u64, j: u64, nu: u32) -> BigInt {
    (0..=n)
        .map(|k| {
            sign(k)
                * binomial(n, k as i64)
                * binomial(k, j as i64)
                * num_traits::pow(BigInt::from(k), nu as usize)
        })
        .sum()
}

/// `sum_k (-1)^k C(n,k) C(k,j) k^nu = 0` for `0 <= j <= n - nu - 1`.
pub fn check_moment_vanishing(n: u64, nu: u32) -> IdentityReport {
    let report = IdentityReport::new("transform.moment-vanishing")
        .param("n", n)
        .param("nu", nu);
    let count = n.saturating_sub(nu as u64);
    for j in 0..count {
        let s = moment_sum(n, j, nu);
        if !s.is_zero() {
            return report.fail(Witness::new(format!("j={j}"), s, 0));
        }
    }
    if count == 0 {
        report.with_info("no j in range")
    } else {
        report
    }
}

/// Support of `sum_k C(n,k) (-1)^k k^nu H_k` inside
/// `{h_(n-nu), ..., h_n}`, plus the shape of its coefficients.
///
/// The coefficient `a_i(n)` of `z^(h_(n-i))` equals `(-1)^n` times a
/// polynomial `b_i(n)` of degree at most `nu` with integer coefficients.
/// For `n >= nu` the checker reads `a_i` off the expansions at the
/// `nu + 3` consecutive values `n, ..., n + nu + 2`, interpolates `b_i`
/// and requires the degree and integrality; the two extra points make the
/// degree claim falsifiable. Colliding exponents in a window make the
/// coefficients unreadable, reported as [`Status::AmbiguousSupport`].
pub fn check_support_collapse(rule: &ExponentRule, n: u64, nu: u32) -> IdentityReport {
    let report = IdentityReport::new("transform.support-collapse")
        .param("rule", rule)
        .param("n", n)
        .param("nu", nu);
    let mut handle = FamilyHandle::new(rule.clone());
    let window = |n: u64| n.saturating_sub(nu as u64)..=n;
    let lhs = match support_collapse_lhs(&mut handle, n, nu) {
        Ok(p) => p,
        Err(e) => return undefined(report, e),
    };
    let support: Vec<u64> = window(n).map(|j| rule.h_value(j).expect("defined")).collect();
    if let Some(t) = lhs.terms().iter().find(|t| !support.contains(&t.exp)) {
        return report.fail(Witness::new(format!("z^{}", t.exp), &t.coeff, "outside support"));
    }
    let ambiguous = |n: u64| -> Option<Witness> {
        let w = window(n);
        let (lo, hi) = (*w.start(), *w.end());
        match rule.strictly_increasing_on(lo, hi) {
            Ok(true) => None,
            _ => Some(Witness::new(
                format!("h_{lo}..h_{hi}"),
                "colliding exponents",
                "distinct exponents",
            )),
        }
    };
    if let Some(w) = ambiguous(n) {
        return report.verdict(Status::AmbiguousSupport, w);
    }
    if n < nu as u64 {
        return report.with_info("support only; coefficient fit needs n >= nu");
    }
    let points = nu as u64 + 3;
    let mut samples: Vec<Vec<Rational>> = alloc::vec![Vec::new(); nu as usize + 1];
    for np in n..n + points {
        if let Some(w) = ambiguous(np) {
            return report.verdict(Status::AmbiguousSupport, w);
        }
        let p = match support_collapse_lhs(&mut handle, np, nu) {
            Ok(p) => p,
            Err(e) => return undefined(report, e),
        };
        for (i, s) in samples.iter_mut().enumerate() {
            let e = rule.h_value(np - i as u64).expect("defined");
            s.push(Rational::from_integer(sign(np) * p.coeff(e)));
        }
    }
    let mut info = String::new();
    for (i, s) in samples.iter().enumerate() {
        let b = QPoly::interpolate(n as i64, s);
        if !info.is_empty() {
            info.push_str("; ");
        }
        info.push_str(&format!("b_{i}(n) = {}", b.display("n")));
        if b.degree().is_some_and(|d| d > nu as usize) || !b.is_integral() {
            return report.fail(Witness::new(
                format!("b_{i}"),
                b.display("n"),
                format!("degree <= {nu} with integer coefficients"),
            ));
        }
    }
    report.with_info(info)
}

/// The binomial transform is invertible on `h`-monomials: each
/// `z^(h_j)`, `j <= n`, is rebuilt from `H_0, ..., H_j` by the inverse
/// transform, and the forward transform matrix `C(j, i)` is lower
/// unitriangular.
pub fn check_span(rule: &ExponentRule, n: u64) -> IdentityReport {
    let report = IdentityReport::new("transform.span")
        .param("rule", rule)
        .param("n", n);
    let mut handle = FamilyHandle::new(rule.clone());
    if let Err(e) = handle.ensure(n) {
        return undefined(report, e);
    }
    for j in 0..=n {
        let row = handle.pascal().row(j);
        if row[j as usize] != BigInt::one() {
            return report.fail(Witness::new(format!("C({j},{j})"), &row[j as usize], 1));
        }
        let rebuilt: SparsePoly = (0..=j)
            .map(|k| {
                let c = sign(j + k) * &row[k as usize];
                handle.h(k).expect("cached").scale(&c)
            })
            .sum();
        let target = SparsePoly::monomial(1, rule.h_value(j).expect("defined"));
        if let Some(w) = poly_mismatch(&rebuilt, &target, &format!("j={j} ")) {
            return report.fail(w);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn finite_transform_examples() {
        assert!(check_finite_transform(&ExponentRule::Binomial(2), 0).pass);
        assert!(check_finite_transform(&ExponentRule::Binomial(2), 4).pass);
        assert!(check_finite_transform(&ExponentRule::Binomial(3), 6).pass);
        assert!(check_finite_transform(&ExponentRule::Geometric, 7).pass);
    }

    #[test]
    fn parity_reflection_examples() {
        assert!(check_parity_reflection(&ExponentRule::Table((0..6).collect()), 5).pass);
        assert!(check_parity_reflection(&ExponentRule::Table(vec![0, 1, 2, 3, 8]), 4).pass);
        let odd_tail = check_parity_reflection(&ExponentRule::Table(vec![0, 1, 2, 3, 9]), 4);
        assert_eq!(odd_tail.status, Status::NotApplicable);
        let r = check_parity_reflection(&ExponentRule::Binomial(2), 4);
        assert_eq!(r.status, Status::NotApplicable);
        assert_eq!(r.witness.unwrap().location, "h_1 mod 2");
    }

    #[test]
    fn inverse_transform_examples() {
        let table = ExponentRule::Table(vec![0, 5]);
        assert!(check_inverse_transform(&table, 1, 0).pass);
        let mut h = FamilyHandle::new(table);
        assert_eq!(support_collapse_lhs(&mut h, 1, 0).unwrap(), SparsePoly::monomial(-1, 5));
        let b2 = ExponentRule::Binomial(2);
        assert!(check_inverse_transform(&b2, 5, 0).pass);
        assert!(check_inverse_transform(&b2, 5, 1).pass);
        let mut h = FamilyHandle::new(b2);
        let lhs = support_collapse_lhs(&mut h, 5, 1).unwrap();
        assert_eq!(lhs, &SparsePoly::monomial(-5, 10) + &SparsePoly::monomial(-5, 6));
    }

    #[test]
    fn moment_examples() {
        assert!(check_moment_vanishing(3, 0).pass);
        assert_eq!(moment_sum(5, 0, 2), BigInt::zero());
        assert_eq!(moment_sum(1, 0, 0), BigInt::zero());
        // j = n - nu is outside the claim and nonzero
        assert_ne!(moment_sum(4, 2, 2), BigInt::zero());
    }

    #[test]
    fn support_collapse_examples() {
        let b2 = ExponentRule::Binomial(2);
        let r = check_support_collapse(&b2, 6, 2);
        assert!(r.pass, "{r:?}");
        assert!(r.info.unwrap().contains("b_0(n) = n^2"));
        let r = check_support_collapse(&ExponentRule::Geometric, 4, 0);
        assert_eq!(r.info.as_deref(), Some("b_0(n) = 1"));
        let r = check_support_collapse(&ExponentRule::Binomial(3), 3, 2);
        assert_eq!(r.status, Status::AmbiguousSupport);
    }

    #[test]
    fn span_examples() {
        assert!(check_span(&ExponentRule::Binomial(3), 8).pass);
        assert!(check_span(&ExponentRule::Geometric, 6).pass);
    }
}
