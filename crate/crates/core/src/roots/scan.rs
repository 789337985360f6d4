//! Instance checks of the root bounds, the real-root count tables, and
//! randomized families satisfying the hypotheses of the general bounds.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use super::certify::{all_roots, solve, RootReport, SolveOptions};
use super::parity::{binomial_parity, eventual_period, parity_period};
use super::sturm::{count_real_roots, RealRootCount};
use super::{epsilon_threshold, lower_bound, lower_threshold, upper_bound, RootsError};
use crate::binomial::{binomial, binomial_u64, factorial, to_f64};
use crate::poly::{SparsePoly, Term};
use crate::report::{IdentityReport, Status, Witness};

fn domain(report: IdentityReport, e: &RootsError) -> IdentityReport {
    let status = match e {
        RootsError::OutOfRegime { .. } => Status::NotApplicable,
        RootsError::DegreeCapExceeded { .. } => Status::Skipped,
        _ => Status::Fail,
    };
    report.verdict(status, Witness::new("error", e, "-"))
}

/// Certified roots of `f_{m,n}` lie strictly inside every annulus bound
/// whose hypotheses hold, with Vieta and root-count checks on the side.
pub fn check_annulus(m: u32, n: u64, opts: &SolveOptions) -> IdentityReport {
    annulus_study(m, n, opts).0
}

/// [`check_annulus`] together with the root report it was decided on.
pub fn annulus_study(m: u32, n: u64, opts: &SolveOptions) -> (IdentityReport, Option<RootReport>) {
    let report = IdentityReport::new("roots.annulus").param("m", m).param("n", n);
    let (lo, hi) = (lower_bound(m, n), upper_bound(m, n));
    if let (Err(_), Err(e)) = (&lo, &hi) {
        return (domain(report, e), None);
    }
    let r = match all_roots(m, n, opts) {
        Ok(r) => r,
        Err(e) => return (domain(report, &e), None),
    };
    let report = annulus_verdict(report, &r, lo.ok(), hi.ok());
    (report, Some(r))
}

fn annulus_verdict(report: IdentityReport, r: &RootReport, lo: Option<f64>, hi: Option<f64>) -> IdentityReport {
    let s = &r.solution;
    let show = |b: Option<f64>| b.map_or(String::from("-"), |b| format!("{b}"));
    let report = report.with_info(format!(
        "lower={} upper={} min_modulus={} max_modulus={} regime={:?} prec={} max_rel_radius={:e}",
        show(lo),
        show(hi),
        s.min_modulus,
        s.max_modulus,
        r.upper_regime,
        s.precision_used,
        s.max_relative_radius
    ));
    let degree = binomial_u64(r.n, r.m as u64).unwrap_or(0);
    if s.roots.len() as u64 != degree {
        return report.fail(Witness::new("root count", s.roots.len(), degree));
    }
    if !s.vieta_sum_ok {
        return report.fail(Witness::new("vieta sum", "mismatch", "sum of roots"));
    }
    if !s.vieta_product_ok {
        return report.fail(Witness::new("vieta product", "mismatch", "|f(0)|"));
    }
    if let Some(b) = lo {
        if s.min_modulus <= b {
            return report.fail(Witness::new("min |z|", s.min_modulus, format!("> {b}")));
        }
    }
    if let Some(b) = hi {
        if s.max_modulus >= b {
            return report.fail(Witness::new("max |z|", s.max_modulus, format!("< {b}")));
        }
    }
    report
}

/// The exact real-root count agrees with the disks proved to hold a real
/// root.
pub fn check_real_count_agreement(m: u32, n: u64, degree_cap: u64, opts: &SolveOptions) -> IdentityReport {
    let report = IdentityReport::new("roots.real-count-agreement").param("m", m).param("n", n);
    let exact = match count_real_roots(m, n, degree_cap) {
        Ok(c) => c,
        Err(e) => return domain(report, &e),
    };
    let numeric = match all_roots(m, n, opts) {
        Ok(r) => r,
        Err(e) => return domain(report, &e),
    };
    let found = numeric.solution.real_roots.len() as u64;
    report
        .check((found != exact.count).then(|| Witness::new("real roots", found, exact.count)))
        .with_info(format!("count={}", exact.count))
}

/// A predicted real root and the nearest isolated real root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicMatch {
    pub label: String,
    pub predicted: f64,
    pub matched: Option<f64>,
    pub gap: Option<f64>,
}

/// Root predictions from truncations of `f_{m,n}`: constant plus linear
/// term gives `-f(0)/C(n,m)`; for odd `m`, linear plus `C(n,m+1) z^(m+1)`
/// gives `-((m+1)/(n-m))^(1/m)`, reported next to the cruder
/// `-((m+1)/n)^(1/m)`.
pub fn heuristic_roots(m: u32, n: u64, count: &RealRootCount) -> Vec<HeuristicMatch> {
    let c_nm = to_f64(&binomial(n, m as i64));
    let f0: BigInt = (0..m as i64).map(|j| binomial(n, j)).sum();
    let mut preds = alloc::vec![(String::from("constant-linear"), -to_f64(&f0) / c_nm)];
    if m % 2 == 1 && n > m as u64 {
        let root = |x: f64| -libm::pow(x, 1.0 / m as f64);
        preds.push((String::from("linear-next"), root((m + 1) as f64 / (n - m as u64) as f64)));
        preds.push((String::from("linear-next-crude"), root((m + 1) as f64 / n as f64)));
    }
    let mids: Vec<f64> = count.isolating_intervals.iter().map(|iv| iv.midpoint_f64()).collect();
    preds
        .into_iter()
        .map(|(label, predicted)| {
            let matched = mids
                .iter()
                .copied()
                .min_by(|a, b| (a - predicted).abs().total_cmp(&(b - predicted).abs()));
            HeuristicMatch {
                label,
                predicted,
                matched,
                gap: matched.map(|x| (x - predicted).abs()),
            }
        })
        .collect()
}

/// One row of the real-root table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealRootRow {
    pub m: u32,
    pub n: u64,
    /// `None` when the degree cap was hit.
    pub count: Option<u64>,
    pub floor_n_over_m: u64,
    /// Whether `C(n, m)` is odd.
    pub leading_odd: bool,
    /// For odd `m`: the detected eventual period of the parity of `C(n, m)`
    /// over the scanned `n`, if the range covers two periods.
    pub period_detected: Option<u64>,
    pub status: Status,
}

/// `N_m(n)` over the given ranges. For `m = 2` a row is evidence when
/// `N = floor(n/2)`, for other even `m` when `N <= floor(n/m)`, and refuted
/// otherwise; odd `m` rows are evidence, carrying the detected parity
/// period.
pub fn real_root_scan(
    m_range: RangeInclusive<u32>,
    n_range: RangeInclusive<u64>,
    degree_cap: u64,
) -> Vec<RealRootRow> {
    let mut rows = Vec::new();
    for m in m_range {
        let start = rows.len();
        for n in n_range.clone() {
            let count = count_real_roots(m, n, degree_cap).ok().map(|c| c.count);
            let floor = n / m as u64;
            let status = match count {
                None => Status::Skipped,
                Some(c) if m == 2 && c != floor => Status::Refuted,
                Some(c) if m % 2 == 0 && c > floor => Status::Refuted,
                Some(_) => Status::Evidence,
            };
            rows.push(RealRootRow {
                m,
                n,
                count,
                floor_n_over_m: floor,
                leading_odd: binomial_parity(n, m as u64),
                period_detected: None,
                status,
            });
        }
        if m % 2 == 1 {
            let word: Vec<bool> = rows[start..].iter().map(|r| r.leading_odd).collect();
            let period = eventual_period(&word).map(|(_, p)| p as u64);
            for r in &mut rows[start..] {
                r.period_detected = period;
            }
        }
    }
    rows
}

/// Summary report for a block of rows sharing `m`.
pub fn real_root_report(m: u32, rows: &[RealRootRow]) -> IdentityReport {
    let id = if m % 2 == 0 { "roots.even-real-count" } else { "roots.odd-real-count" };
    let counts: String = rows
        .iter()
        .map(|r| r.count.map_or(String::from("-"), |c| format!("{c}")))
        .collect::<Vec<_>>()
        .join(",");
    let mut report = IdentityReport::new(id).param("m", m).with_info(format!(
        "counts={counts} parity_period={} period_detected={}",
        parity_period(m as u64),
        rows.first().and_then(|r| r.period_detected).map_or(String::from("-"), |p| format!("{p}"))
    ));
    if let Some(r) = rows.iter().find(|r| r.status == Status::Refuted) {
        return report.verdict(
            Status::Refuted,
            Witness::new(format!("n={}", r.n), r.count.unwrap_or(0), format!("floor(n/m)={}", r.floor_n_over_m)),
        );
    }
    if let Some(r) = rows.iter().find(|r| r.status == Status::Skipped) {
        return report.verdict(Status::Skipped, Witness::new(format!("n={}", r.n), "degree cap", "-"));
    }
    report = report.evidence();
    report
}

/// `C(m+j-1, m) >= (m+1)(j-1)` for `j = 2..=j_max`.
pub fn check_dj_growth(m: u32, j_max: u64) -> IdentityReport {
    let report = IdentityReport::new("roots.exponent-growth").param("m", m).param("j", format!("2..{j_max}"));
    let bad = (2..=j_max).find(|&j| binomial(m as u64 + j - 1, m as i64) < BigInt::from((m as u64 + 1) * (j - 1)));
    report.check(bad.map(|j| {
        Witness::new(format!("j={j}"), binomial(m as u64 + j - 1, m as i64), (m as u64 + 1) * (j - 1))
    }))
}

/// `g_m(n) <= m!/(n-m)^(m-2)` for `n >= 2m+1`, and `m!/(n-m)^(m-2) <= 2/5`
/// where the general argument needs it (`m >= 6`, or `m = 3, n >= 19`, or
/// `m = 4, 5` with `n >= 12`).
pub fn check_epsilon_threshold(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("roots.epsilon-threshold").param("m", m).param("n", n);
    if m < 3 || n < 2 * m as u64 + 1 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("m={m} n={n}"), "m >= 3, n >= 2m+1"));
    }
    let g = epsilon_threshold(m, n);
    let cap = to_f64(&factorial(m as u64)) / to_f64(&BigInt::from(n - m as u64).pow(m - 2));
    let report = report.with_info(format!("g={g} m!/(n-m)^(m-2)={cap}"));
    if g > cap {
        return report.fail(Witness::new("g_m(n)", g, format!("<= {cap}")));
    }
    let needs_small = m >= 6 || (m == 3 && n >= 19) || ((m == 4 || m == 5) && n >= 12);
    if needs_small && cap > 0.4 {
        return report.fail(Witness::new("m!/(n-m)^(m-2)", cap, "<= 2/5"));
    }
    report
}

fn uniform(rng: &mut ChaCha8Rng, bound: &BigInt) -> BigInt {
    // |x| <= bound, bound < 2^64 in every family used here
    let b: u64 = bound.try_into().unwrap_or(u64::MAX - 1);
    let span = 2 * b as u128 + 1;
    let x = ((rng.next_u64() as u128) << 64 | rng.next_u64() as u128) % span;
    BigInt::from(x as i128 - b as i128)
}

/// `z^C(n,m) + sum_(k<n) a_k z^(b_k)` with random `|a_k| <= C(n,k)` and
/// `0 <= b_k <= k C(n-1,m)/(n-m)`, and a nonzero constant term.
pub fn random_upper_family(m: u32, n: u64, seed: u64) -> SparsePoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = binomial_u64(n, m as u64).expect("degree fits");
    let width = binomial_u64(n - 1, m as u64).expect("fits") as u128;
    loop {
        let mut terms = alloc::vec![Term::new(top, 1)];
        for k in 0..n {
            let bmax = (k as u128 * width / (n - m as u64) as u128) as u64;
            let b = rng.next_u64() % (bmax + 1);
            terms.push(Term::new(b, uniform(&mut rng, &binomial(n, k as i64))));
        }
        let p = SparsePoly::from_terms(terms);
        if !p.constant_term().is_zero() {
            return p;
        }
    }
}

/// `c_0 + c_1 z + sum_(j=2..n-m+1) c_j z^(d_j)` with
/// `|c_0| >= C(n+1, m-1)`, `|c_j| <= C(n, m+j-1)` and
/// `(m+1)(j-1) <= d_j < (m+1) j`.
pub fn random_lower_family(m: u32, n: u64, seed: u64) -> SparsePoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c0_min = binomial(n + 1, m as i64 - 1);
    let extra = uniform(&mut rng, &c0_min);
    let mut c0 = &c0_min + num_traits::Signed::abs(&extra);
    if rng.next_u64() & 1 == 1 {
        c0 = -c0;
    }
    let mut terms = alloc::vec![Term::new(0, c0)];
    terms.push(Term::new(1, uniform(&mut rng, &binomial(n, m as i64))));
    for j in 2..=n + 1 - m as u64 {
        let d = (m as u64 + 1) * (j - 1) + rng.next_u64() % (m as u64 + 1);
        terms.push(Term::new(d, uniform(&mut rng, &binomial(n, (m as u64 + j - 1) as i64))));
    }
    SparsePoly::from_terms(terms)
}

/// Roots of `count` random upper-bound families stay inside
/// `|z| < 1 + m!/(n-m)^(m-2)`; needs `m >= 3`, `n >= 6m+1`.
pub fn check_random_upper_family(m: u32, n: u64, seed: u64, count: u32, opts: &SolveOptions) -> IdentityReport {
    let report = IdentityReport::new("roots.random-upper-family")
        .param("m", m)
        .param("n", n)
        .param("seed", seed);
    if m < 3 || n < 6 * m as u64 + 1 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("m={m} n={n}"), "m >= 3, n >= 6m+1"));
    }
    let bound = 1.0 + to_f64(&factorial(m as u64)) / to_f64(&BigInt::from(n - m as u64).pow(m - 2));
    let mut worst = 0.0f64;
    for i in 0..count {
        let p = random_upper_family(m, n, seed.wrapping_add(i as u64));
        match solve(&p, opts) {
            Ok(s) if s.max_modulus < bound => worst = worst.max(s.max_modulus),
            Ok(s) => return report.fail(Witness::new(format!("sample {i} max |z|"), s.max_modulus, format!("< {bound}"))),
            Err(e) => return report.fail(Witness::new(format!("sample {i}"), e, "certified roots")),
        }
    }
    report.with_info(format!("samples={count} bound={bound} worst={worst}"))
}

/// Roots of `count` random lower-bound families stay outside
/// `|z| <= m/(n-m+1)`; needs `m >= 3`, `n >= lower_threshold(m)`.
pub fn check_random_lower_family(m: u32, n: u64, seed: u64, count: u32, opts: &SolveOptions) -> IdentityReport {
    let report = IdentityReport::new("roots.random-lower-family")
        .param("m", m)
        .param("n", n)
        .param("seed", seed);
    if m < 3 || n < lower_threshold(m) {
        return report.verdict(Status::NotApplicable, Witness::new("domain", format!("m={m} n={n}"), "n >= lower threshold"));
    }
    let bound = m as f64 / (n - m as u64 + 1) as f64;
    let mut worst = f64::INFINITY;
    for i in 0..count {
        let p = random_lower_family(m, n, seed.wrapping_add(i as u64));
        match solve(&p, opts) {
            Ok(s) if s.min_modulus > bound => worst = worst.min(s.min_modulus),
            Ok(s) => return report.fail(Witness::new(format!("sample {i} min |z|"), s.min_modulus, format!("> {bound}"))),
            Err(e) => return report.fail(Witness::new(format!("sample {i}"), e, "certified roots")),
        }
    }
    report.with_info(format!("samples={count} bound={bound} worst={worst}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_small_cases() {
        let opts = SolveOptions::default();
        for n in 3..=8 {
            assert_eq!(check_annulus(2, n, &opts).status, Status::Pass, "n={n}");
        }
        assert_eq!(check_annulus(3, 9, &opts).status, Status::Pass);
        assert_eq!(check_annulus(3, 5, &opts).status, Status::NotApplicable);
    }

    #[test]
    fn heuristics_for_f23() {
        let c = count_real_roots(2, 3, 600).unwrap();
        let h = heuristic_roots(2, 3, &c);
        assert_eq!(h.len(), 1);
        assert!((h[0].predicted + 4.0 / 3.0).abs() < 1e-15);
        assert!((h[0].gap.unwrap() - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn scan_m2() {
        let rows = real_root_scan(2..=2, 2..=10, 600);
        assert!(rows.iter().all(|r| r.status == Status::Evidence), "{rows:?}");
        assert_eq!(rows[0].count, Some(1));
    }

    #[test]
    fn dj_and_epsilon() {
        for m in 3..=8 {
            assert_eq!(check_dj_growth(m, 50).status, Status::Pass);
        }
        assert_eq!(check_epsilon_threshold(3, 19).status, Status::Pass);
        assert_eq!(check_epsilon_threshold(4, 12).status, Status::Pass);
        assert_eq!(check_epsilon_threshold(6, 13).status, Status::Pass);
    }

    #[test]
    fn random_families_satisfy_hypotheses() {
        let p = random_lower_family(3, 9, 1);
        assert!(p.constant_term() >= binomial(10, 2) || -p.constant_term() >= binomial(10, 2));
        assert_eq!(check_random_lower_family(3, 9, 11, 3, &SolveOptions::default()).status, Status::Pass);
        let q = random_upper_family(3, 19, 2);
        assert_eq!(q.degree(), Some(969));
        assert_eq!(q.leading_coeff(), BigInt::from(1));
    }
}
