//! Report-producing checks. Proved statements pass or fail; open ones
//! yield evidence or a refutation.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::lemma::{g_shifted, s_sequence, s_value};
use super::{a_closed_form, f_k_quotient, f_quotient, g_nu, g_quotient};
use crate::binomial::factorial;
use crate::family::f_poly;
use crate::identities::poly_mismatch;
use crate::poly::{Rational, SparsePoly, Term};
use crate::report::{IdentityReport, Status, Witness};

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn negative_witness(p: &SparsePoly, name: &str) -> Option<Witness> {
    p.first_negative()
        .map(|t| Witness::new(format!("{name} z^{}", t.exp), &t.coeff, ">= 0"))
}

fn summary(p: &SparsePoly) -> alloc::string::String {
    format!(
        "degree={} terms={} constant={}",
        p.degree().map_or("-".to_string(), |d| d.to_string()),
        p.len(),
        p.constant_term()
    )
}

/// The slice `g_nu` of `(1 - z) F_{m,n}`: the symmetrized coefficients,
/// their closed form, `g_nu(1) = 0`, vanishing for `nu < m`, and the sign
/// pattern of `a_(nu,j)` for `j <= nu/2`.
pub fn check_g_nu(m: u32, n: u64, nu: u64) -> IdentityReport {
    let report = IdentityReport::new("concavity.g-decomposition")
        .param("m", m)
        .param("n", n)
        .param("nu", nu);
    if m < 2 || n < 1 || nu > 2 * n {
        return report.verdict(
            Status::NotApplicable,
            Witness::new("domain", format!("m={m} n={n} nu={nu}"), "m >= 2, n >= 1, nu <= 2n"),
        );
    }
    let d = g_nu(m, n, nu);
    let doubled = SparsePoly::from_terms(
        d.a.iter()
            .enumerate()
            .map(|(j, a)| Term::new(super::exponent(m, j as u64, nu), a.clone())),
    );
    if let Some(w) = poly_mismatch(&d.g.scale(&BigInt::from(2)), &doubled, "2 g_nu ") {
        return report.fail(w);
    }
    for j in 0..=nu {
        let a = &d.a[j as usize];
        if let Some(c) = a_closed_form(n, nu, j) {
            if c != Rational::from_integer(a.clone()) {
                return report.fail(Witness::new(format!("a_(nu,{j}) closed form"), a, c));
            }
        }
        if a != &d.a[(nu - j) as usize] {
            return report.fail(Witness::new(
                format!("a_(nu,{j}) symmetry"),
                a,
                &d.a[(nu - j) as usize],
            ));
        }
    }
    let at_one = d.g.coefficient_sum();
    if !at_one.is_zero() {
        return report.fail(Witness::new("g_nu(1)", at_one, 0));
    }
    if nu < m as u64 && !d.g.is_zero() {
        return report.fail(Witness::new("g_nu", &d.g, 0));
    }
    if nu >= 2 {
        let lo = nu.saturating_sub(n + 1) as usize;
        let half = (nu / 2) as usize;
        if let Some(w) = sign_pattern(&d.a[lo..=half], lo) {
            return report.fail(w);
        }
    }
    report.with_info(format!("g_nu={}", d.g))
}

/// Negative on a nonempty prefix, then nonnegative with at most one zero,
/// ending positive.
fn sign_pattern(a: &[BigInt], lo: usize) -> Option<Witness> {
    let neg = a.iter().take_while(|x| x.is_negative()).count();
    let at = |i: usize| format!("a_(nu,{})", lo + i);
    if neg == 0 {
        return Some(Witness::new(at(0), &a[0], "< 0"));
    }
    let rest = &a[neg..];
    if let Some(i) = rest.iter().position(Signed::is_negative) {
        return Some(Witness::new(at(neg + i), &rest[i], ">= 0 after the sign change"));
    }
    let zeros: Vec<usize> = (0..rest.len()).filter(|&i| rest[i].is_zero()).collect();
    if zeros.len() > 1 {
        return Some(Witness::new(at(neg + zeros[1]), 0, "at most one zero"));
    }
    match a.last() {
        Some(x) if x.is_positive() => None,
        Some(x) => Some(Witness::new(at(a.len() - 1), x, "> 0")),
        None => None,
    }
}

/// `sum_nu g_nu = (1 - z) F_{m,n}`.
pub fn check_reassembly(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("concavity.reassembly").param("m", m).param("n", n);
    if m < 2 || n < 1 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("m={m} n={n}"), "m >= 2, n >= 1"));
    }
    let lhs: SparsePoly = (0..=2 * n).map(|nu| g_nu(m, n, nu).g).sum();
    let rhs = &SparsePoly::one_minus_z() * &f_quotient(m, n);
    report.check(poly_mismatch(&lhs, &rhs, ""))
}

/// `F_{m,n}` has no negative coefficients and `F_{m,n}(0) = S_m(n)`.
pub fn check_f_nonnegative(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("concavity.F-nonnegative").param("m", m).param("n", n);
    if m < 2 || n < 1 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("m={m} n={n}"), "m >= 2, n >= 1"));
    }
    let f = f_quotient(m, n);
    if let Some(w) = negative_witness(&f, "F") {
        return report.fail(w);
    }
    let s = s_value(m, n);
    if f.constant_term() != s {
        return report.fail(Witness::new("F(0)", f.constant_term(), s));
    }
    report.with_info(summary(&f))
}

/// `F^(k)_{m,n}` has no negative coefficients; an open statement.
pub fn check_f_k_nonnegative(m: u32, n: u64, k: u64) -> IdentityReport {
    let report = IdentityReport::new("concavity.F-k-nonnegative")
        .param("m", m)
        .param("n", n)
        .param("k", k);
    if m < 2 || k < 1 || k > n {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("n={n} k={k}"), "1 <= k <= n"));
    }
    let f = f_k_quotient(m, n, k);
    match negative_witness(&f, "F^(k)") {
        Some(w) => report.verdict(Status::Refuted, w),
        None => report.evidence().with_info(summary(&f)),
    }
}

/// `G^(k)_{m,n}` has no negative coefficients.
pub fn check_g_nonnegative(m: u32, n: u64, k: u64) -> IdentityReport {
    let report = IdentityReport::new("concavity.G-nonnegative")
        .param("m", m)
        .param("n", n)
        .param("k", k);
    if m < 2 || k < 1 || k > n {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("n={n} k={k}"), "1 <= k <= n"));
    }
    let g = g_quotient(m, n, k);
    match negative_witness(&g, "G^(k)") {
        Some(w) => report.fail(w),
        None => report.with_info(summary(&g)),
    }
}

/// `F_{m,m-1} = 2^(m-2)` and
/// `F_{m,m} = 2^(m-1)(z^m + ... + z^2) + (2^(m-1) - 1) z + (m-2) 2^(m-1) + 1`.
pub fn check_f_boundary(m: u32) -> IdentityReport {
    let report = IdentityReport::new("concavity.F-boundary").param("m", m);
    if !(2..=60).contains(&m) {
        return report.verdict(Status::NotApplicable, Witness::new("domain", m, "2 <= m <= 60"));
    }
    let p2 = |e: u32| BigInt::one() << e;
    let below = SparsePoly::constant(p2(m - 2));
    if let Some(w) = poly_mismatch(&f_quotient(m, m as u64 - 1), &below, "F_(m,m-1) ") {
        return report.fail(w);
    }
    let mut terms: Vec<Term> = (2..=m as u64).map(|e| Term::new(e, p2(m - 1))).collect();
    terms.push(Term::new(1, p2(m - 1) - 1));
    terms.push(Term::new(0, BigInt::from(m - 2) * p2(m - 1) + 1));
    let display = SparsePoly::from_terms(terms);
    report.check(poly_mismatch(&f_quotient(m, m as u64), &display, "F_(m,m) "))
}

/// Log-concavity of `n -> f_{m,n}(z)` at `z in {0, 1/4, 1/2, 3/4, 1}` and
/// `F_{m,n}(z) > 0` at `z in {0, 1/2, 1, 2}`, in exact arithmetic. Below
/// `n = m - 1` the sequence is `2^n` and `F` vanishes, so only the first
/// part applies there.
pub fn check_log_concave_samples(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("concavity.log-concave-samples").param("m", m).param("n", n);
    if m < 2 || n < 1 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("m={m} n={n}"), "m >= 2, n >= 1"));
    }
    let (a, b, c) = (f_poly(m, n - 1), f_poly(m, n), f_poly(m, n + 1));
    for z in [ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(1, 1)] {
        let fb = b.eval_exact(&z);
        let v = &fb * &fb - a.eval_exact(&z) * c.eval_exact(&z);
        if v.is_negative() {
            return report.fail(Witness::new(format!("L(f)({z})"), v, ">= 0"));
        }
    }
    if n + 1 < m as u64 {
        return report;
    }
    let f = f_quotient(m, n);
    for z in [ratio(0, 1), ratio(1, 2), ratio(1, 1), ratio(2, 1)] {
        let v = f.eval_exact(&z);
        if !v.is_positive() {
            return report.fail(Witness::new(format!("F({z})"), v, "> 0"));
        }
    }
    report
}

/// `F_{m,n}(z) >= 0` at `z in {-1, -1/2, -1/4}` for even `m`; an open
/// statement.
pub fn check_negative_axis(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("concavity.negative-axis").param("m", m).param("n", n);
    if m < 2 || m % 2 == 1 || n < 1 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("m={m} n={n}"), "even m >= 2, n >= 1"));
    }
    let f = f_quotient(m, n);
    for z in [ratio(-1, 1), ratio(-1, 2), ratio(-1, 4)] {
        let v = f.eval_exact(&z);
        if v.is_negative() {
            return report.verdict(Status::Refuted, Witness::new(format!("F({z})"), v, ">= 0"));
        }
    }
    report.evidence()
}

/// `S_m(n) >= 2^(m-2)` for `n >= m - 1`, with equality at `n = m - 1` and,
/// for `m >= 3`, only there; `S_m(n) = 0` for `1 <= n <= m - 2`.
pub fn check_s_lower_bound(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("concavity.S-lower-bound").param("m", m).param("n", n);
    if m < 2 || n < 1 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("m={m} n={n}"), "m >= 2, n >= 1"));
    }
    let s = s_value(m, n);
    let floor = BigInt::one() << (m - 2);
    let w = if n + 1 < m as u64 {
        (!s.is_zero()).then(|| Witness::new("S_m(n)", &s, 0))
    } else if n + 1 == m as u64 || m == 2 {
        (s != floor).then(|| Witness::new("S_m(m-1)", &s, &floor))
    } else {
        (s <= floor).then(|| Witness::new("S_m(n)", &s, format!("> {floor}")))
    };
    report.check(w).with_info(format!("S={s}"))
}

/// The recurrence for `s_m` against its definition
/// `s_m(n) prod_(j=1..m-2) (n - j) = (m-1) (m-2)!^2 S_m(n)` at
/// `n = m+1, ..., 3m`.
pub fn check_s_sequence(m: u32) -> IdentityReport {
    let report = IdentityReport::new("concavity.s-recurrence").param("m", m);
    if m < 2 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", m, "m >= 2"));
    }
    let s = s_sequence(m);
    let scale = BigInt::from(m - 1) * factorial(m as u64 - 2).pow(2);
    for n in m as u64 + 1..=3 * m as u64 {
        let prod: BigInt = (1..=m as u64 - 2).map(|j| BigInt::from(n - j)).product();
        let lhs = s.eval_int(n as i64) * Rational::from_integer(prod);
        let rhs = Rational::from_integer(&scale * s_value(m, n));
        if lhs != rhs {
            return report.fail(Witness::new(format!("n={n}"), lhs, rhs));
        }
    }
    report.with_info(format!("s_m(n) = {}", s.display("n")))
}

/// `g_m(t) = s_m(t + m - 1)` has degree `m - 2`, leading coefficient 1,
/// constant term `2^(m-2) (m-1)!`, positive integer coefficients, and
/// `a_(i,m) > 2(m-2) a_(i,m-1)` for `i <= m - 3`.
pub fn check_g_shifted(m: u32) -> IdentityReport {
    let report = IdentityReport::new("concavity.g-shifted").param("m", m);
    if m < 2 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", m, "m >= 2"));
    }
    let g = g_shifted(m);
    let shifted = s_sequence(m).shift(m as i64 - 1);
    if g != shifted {
        return report.fail(Witness::new("g_m(t) vs s_m(t+m-1)", g.display("t"), shifted.display("t")));
    }
    let deg = g.degree().unwrap_or(0);
    if deg != m as usize - 2 {
        return report.fail(Witness::new("degree", deg, m - 2));
    }
    if !g.leading().is_one() {
        return report.fail(Witness::new("leading", g.leading(), 1));
    }
    let c0 = Rational::from_integer(factorial(m as u64 - 1) << (m - 2));
    if g.coeff(0) != c0 {
        return report.fail(Witness::new("t^0", g.coeff(0), c0));
    }
    if !g.is_integral() {
        return report.fail(Witness::new("integrality", g.display("t"), "integer coefficients"));
    }
    if let Some(i) = g.coeffs().iter().position(|c| !c.is_positive()) {
        return report.fail(Witness::new(format!("t^{i}"), g.coeff(i), "> 0"));
    }
    if m >= 3 {
        let prev = g_shifted(m - 1);
        let factor = Rational::from_integer(BigInt::from(2 * (m - 2)));
        for i in 0..=m as usize - 3 {
            let bound = &factor * prev.coeff(i);
            if g.coeff(i) <= bound {
                return report.fail(Witness::new(format!("a_({i},m)"), g.coeff(i), format!("> {bound}")));
            }
        }
    }
    report.with_info(format!("g_m(t) = {}", g.display("t")))
}
