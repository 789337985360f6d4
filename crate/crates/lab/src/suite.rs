use binsparse::concavity::{
    check_f_boundary, check_f_k_nonnegative, check_f_nonnegative, check_g_nonnegative, check_g_nu,
    check_g_shifted, check_log_concave_samples, check_negative_axis, check_reassembly,
    check_s_lower_bound, check_s_sequence, iterated_l_scan, ConcavityCertificate,
};
use binsparse::identities::{
    check_derivative_display, check_derivative_identity, check_difference_identity,
    check_finite_transform, check_gf, check_halving, check_inverse_derivative,
    check_inverse_transform, check_moment_vanishing, check_parity_reflection, check_pde, check_span,
    check_support_collapse,
};
use binsparse::roots::{
    annulus_study, check_epsilon_threshold, check_never_both_odd, check_parity_period,
    check_random_lower_family, check_random_upper_family, check_sign_at_minus_one, lower_threshold,
    real_root_report, real_root_scan, RealRootRow, RootReport, SolveOptions,
};
use binsparse::{
    check_endpoint_values, check_low_degree_forms, f_poly, ExponentRule, IdentityReport, Rational,
    SparsePoly, Status,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Command, RunConfig};

pub const HALVING_TERMS: u64 = 60;
const HALVING_POINTS: [(i64, i64); 3] = [(1, 4), (1, 2), (3, 4)];
const RANDOM_FAMILY_SAMPLES: u32 = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyRow {
    pub rule: String,
    pub n: u64,
    pub degree: u64,
    pub terms: usize,
    pub poly: SparsePoly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootsRow {
    pub report: IdentityReport,
    pub root_report: Option<RootReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "section", rename_all = "kebab-case")]
pub enum Row {
    Polynomial(PolyRow),
    Identity(IdentityReport),
    Certificate(ConcavityCertificate),
    Roots(RootsRow),
    RealRoots(RealRootRow),
}

impl Row {
    pub fn section(&self) -> &'static str {
        match self {
            Row::Polynomial(_) => "polynomial",
            Row::Identity(_) => "identity",
            Row::Certificate(_) => "certificate",
            Row::Roots(_) => "roots",
            Row::RealRoots(_) => "real-roots",
        }
    }

    pub fn status(&self) -> Option<Status> {
        match self {
            Row::Polynomial(_) => None,
            Row::Identity(r) => Some(r.status),
            Row::Certificate(c) => Some(c.status),
            Row::Roots(r) => Some(r.report.status),
            Row::RealRoots(r) => Some(r.status),
        }
    }
}

/// 0 when every hard check passes, 1 on any failure, otherwise 2 when some
/// conjecture was refuted.
pub fn exit_code(rows: &[Row]) -> u8 {
    let statuses = || rows.iter().filter_map(Row::status);
    if statuses().any(|s| s == Status::Fail) {
        1
    } else if statuses().any(|s| s == Status::Refuted) {
        2
    } else {
        0
    }
}

type Task = Box<dyn Fn() -> Vec<Row> + Send + Sync>;

fn one(f: impl Fn() -> IdentityReport + Send + Sync + 'static) -> Task {
    Box::new(move || vec![Row::Identity(f())])
}

/// Runs the selected command. Rows come back in a fixed order whatever the
/// scheduling of the worker pool.
pub fn run(cfg: &RunConfig) -> Vec<Row> {
    let tasks = match cfg.command {
        Command::Gen => gen(cfg),
        Command::Verify => verify(cfg),
        Command::Concavity => concavity(cfg),
        Command::Roots => roots(cfg),
        Command::Conjectures => conjectures(cfg),
    };
    tasks.par_iter().map(|t| t()).collect::<Vec<_>>().into_iter().flatten().collect()
}

fn poly_row(rule: &ExponentRule, n: u64) -> Row {
    let poly = match rule {
        ExponentRule::Binomial(m) => f_poly(*m, n),
        r => r.h_poly(n).expect("validated rule"),
    };
    Row::Polynomial(PolyRow {
        rule: rule.to_string(),
        n,
        degree: poly.degree().unwrap_or(0),
        terms: poly.len(),
        poly,
    })
}

fn rules(cfg: &RunConfig) -> Vec<ExponentRule> {
    match &cfg.rule {
        Some(r) => vec![r.clone()],
        None => cfg.m_values().map(ExponentRule::Binomial).collect(),
    }
}

fn gen(cfg: &RunConfig) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    for rule in rules(cfg) {
        for n in cfg.n_range.iter() {
            let rule = rule.clone();
            tasks.push(Box::new(move || vec![poly_row(&rule, n)]));
        }
    }
    tasks
}

fn verify(cfg: &RunConfig) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    let (trunc, tol, k) = (cfg.trunc, cfg.tol, cfg.k_range);
    for rule in rules(cfg) {
        if let ExponentRule::Binomial(m) = rule {
            tasks.push(one(move || check_low_degree_forms(m)));
            tasks.push(one(move || check_pde(m, trunc)));
        }
        let r = rule.clone();
        tasks.push(one(move || check_gf(&r, trunc)));
        for (a, b) in HALVING_POINTS {
            let r = rule.clone();
            tasks.push(one(move || check_halving(&r, &Rational::new(a.into(), b.into()), HALVING_TERMS, tol)));
        }
        for n in cfg.n_range.iter() {
            let rule = rule.clone();
            tasks.push(Box::new(move || {
                let mut rows = Vec::new();
                if let ExponentRule::Binomial(m) = rule {
                    rows.push(check_endpoint_values(m, n));
                    rows.push(check_derivative_identity(m, n));
                    rows.push(check_inverse_derivative(m, n));
                    if m == 2 {
                        rows.push(check_derivative_display(n));
                    }
                }
                rows.push(check_finite_transform(&rule, n));
                rows.push(check_parity_reflection(&rule, n));
                rows.push(check_span(&rule, n));
                for nu in 0..=1 {
                    rows.push(check_inverse_transform(&rule, n, nu));
                }
                for nu in 0..=k.hi as u32 {
                    rows.push(check_support_collapse(&rule, n, nu));
                }
                for r in k.iter() {
                    rows.push(check_difference_identity(&rule, n, r));
                }
                rows.into_iter().map(Row::Identity).collect()
            }));
        }
    }
    for n in cfg.n_range.iter().filter(|&n| n >= 1) {
        tasks.push(Box::new(move || {
            (0..=k.hi as u32 + 1).map(|nu| Row::Identity(check_moment_vanishing(n, nu))).collect()
        }));
    }
    tasks
}

fn concavity(cfg: &RunConfig) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    let k = cfg.k_range;
    for m in cfg.m_values() {
        tasks.push(one(move || check_f_boundary(m)));
        tasks.push(one(move || check_s_sequence(m)));
        tasks.push(one(move || check_g_shifted(m)));
        for n in cfg.n_range.iter() {
            tasks.push(Box::new(move || {
                let mut rows = vec![
                    check_f_nonnegative(m, n),
                    check_reassembly(m, n),
                    check_s_lower_bound(m, n),
                    check_log_concave_samples(m, n),
                    check_negative_axis(m, n),
                ];
                for k in k.iter() {
                    rows.push(check_f_k_nonnegative(m, n, k));
                    rows.push(check_g_nonnegative(m, n, k));
                }
                if n >= m as u64 {
                    rows.extend((0..=2 * n).map(|nu| check_g_nu(m, n, nu)));
                }
                rows.into_iter().map(Row::Identity).collect()
            }));
        }
    }
    if cfg.m_range.lo <= 2 && cfg.n_range.hi >= 2 {
        let (n_max, k_max) = (cfg.n_range.hi, k.hi as u32);
        tasks.push(Box::new(move || iterated_l_scan(n_max, k_max).into_iter().map(Row::Certificate).collect()));
    }
    tasks
}

fn roots(cfg: &RunConfig) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    let opts = SolveOptions {
        tol: cfg.tol,
        seed: cfg.seed,
        ..SolveOptions::default()
    };
    let (cap, seed) = (cfg.degree_cap, cfg.seed);
    for m in cfg.m_values() {
        for n in cfg.n_range.iter() {
            tasks.push(Box::new(move || {
                let degree = binsparse::binomial::binomial_u64(n, m as u64).unwrap_or(u64::MAX);
                let row = if degree > cap {
                    RootsRow {
                        report: IdentityReport::new("roots.annulus").param("m", m).param("n", n).verdict(
                            Status::Skipped,
                            binsparse::Witness::new("degree", degree, format!("<= {cap}")),
                        ),
                        root_report: None,
                    }
                } else {
                    let (report, root_report) = annulus_study(m, n, &opts);
                    RootsRow { report, root_report }
                };
                let mut rows = vec![Row::Roots(row)];
                if m >= 3 && n >= 2 * m as u64 + 1 {
                    rows.push(Row::Identity(check_epsilon_threshold(m, n)));
                }
                rows
            }));
            if m >= 3 && n >= 6 * m as u64 + 1 && binsparse::binomial::binomial_u64(n, m as u64).is_some_and(|d| d <= cap) {
                tasks.push(one(move || check_random_upper_family(m, n, seed, RANDOM_FAMILY_SAMPLES, &opts)));
            }
            if m >= 3 && n >= lower_threshold(m) {
                tasks.push(one(move || check_random_lower_family(m, n, seed, RANDOM_FAMILY_SAMPLES, &opts)));
            }
        }
    }
    tasks
}

fn conjectures(cfg: &RunConfig) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    let (n_range, cap) = (cfg.n_range, cfg.degree_cap);
    for m in cfg.m_values() {
        tasks.push(Box::new(move || {
            let table = real_root_scan(m..=m, n_range.iter(), cap);
            let mut rows = vec![Row::Identity(real_root_report(m, &table))];
            rows.extend(table.into_iter().map(Row::RealRoots));
            if m % 2 == 1 {
                rows.push(Row::Identity(check_never_both_odd(m, n_range.lo, n_range.hi)));
                rows.push(Row::Identity(check_parity_period(m, n_range.lo, n_range.hi)));
            }
            rows.extend(n_range.iter().map(|n| Row::Identity(check_sign_at_minus_one(m, n))));
            rows
        }));
    }
    tasks
}

#[cfg(test)]
mod tests {
    use super::*;
    use binsparse::Witness;

    fn row(status: Status) -> Row {
        Row::Identity(IdentityReport::new("x").verdict(status, Witness::new("here", 1, 2)))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&[]), 0);
        assert_eq!(exit_code(&[row(Status::NotApplicable), row(Status::Skipped)]), 0);
        assert_eq!(exit_code(&[row(Status::Refuted)]), 2);
        assert_eq!(exit_code(&[row(Status::Refuted), row(Status::Fail)]), 1);
        assert_eq!(exit_code(&[Row::Identity(IdentityReport::new("ok"))]), 0);
    }

    #[test]
    fn gen_rows_follow_range_order() {
        let cfg = RunConfig {
            command: Command::Gen,
            m_range: crate::IntRange { lo: 2, hi: 3 },
            n_range: crate::IntRange { lo: 0, hi: 2 },
            k_range: crate::IntRange::single(1),
            rule: None,
            trunc: 4,
            tol: 1e-10,
            degree_cap: 600,
            format: crate::Format::Text,
            out: None,
            seed: 0,
        };
        let rows = run(&cfg);
        let labels: Vec<_> = rows
            .iter()
            .map(|r| match r {
                Row::Polynomial(p) => (p.rule.clone(), p.n),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(labels[0], ("binom:2".to_string(), 0));
        assert_eq!(labels[5], ("binom:3".to_string(), 2));
    }
}
