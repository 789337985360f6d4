mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use binsparse::concavity::{
    check_f_boundary, check_f_nonnegative, check_g_nonnegative, check_g_shifted, check_reassembly,
    check_s_lower_bound, check_s_sequence,
};
use binsparse::identities::{
    check_derivative_display, check_derivative_identity, check_finite_transform, check_gf,
    check_halving, check_inverse_derivative, check_inverse_transform, check_moment_vanishing,
    check_pde, check_support_collapse,
};
use binsparse::roots::{
    check_annulus, check_parity_period, check_sign_at_minus_one, real_root_scan, SolveOptions,
};
use binsparse::{check_endpoint_values, check_low_degree_forms, ExponentRule, IdentityReport, SparsePoly, Status};
use common::{convolve, numeric_within_bound, random_poly, rational, rng};
use rand::Rng;

const ROOT_TOL: f64 = 1e-10;
const HALVING_TOL: f64 = 1e-9;
const HALVING_TERMS: u64 = 60;
const GF_ORDER: u64 = 12;
const PDE_ORDER: u64 = 10;
const STURM_CAP: u64 = 600;

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    refuted: Vec<String>,
    skipped: usize,
}

impl Tally {
    fn report(&mut self, r: IdentityReport) {
        self.status(r.status, || format!("{} {} {:?}", r.id, r.params_string(), r.witness));
    }

    /// `NotApplicable` and `AmbiguousSupport` are legitimate verdicts on
    /// windows where the statement has no content.
    fn status(&mut self, s: Status, describe: impl FnOnce() -> String) {
        self.checks += 1;
        match s {
            Status::Pass | Status::Evidence => {}
            Status::NotApplicable | Status::AmbiguousSupport => self.skipped += 1,
            Status::Refuted => self.refuted.push(describe()),
            Status::Fail | Status::Skipped => self.failures.push(describe()),
        }
    }

    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.status(if ok { Status::Pass } else { Status::Fail }, describe);
    }

    fn require_pass(&mut self, r: IdentityReport) {
        if r.status != Status::Pass {
            self.failures.push(format!("{} {} {:?} {:?}", r.id, r.params_string(), r.status, r.witness));
        }
        self.checks += 1;
    }
}

fn criterion(no: u32, title: &str, budget: Duration, run: impl FnOnce(&mut Tally)) -> bool {
    let start = Instant::now();
    let mut t = Tally::default();
    run(&mut t);
    let took = start.elapsed();
    let slow = took > budget;
    let verdict = if !t.failures.is_empty() || slow {
        "FAIL"
    } else if !t.refuted.is_empty() {
        "CONJECTURE-REFUTED"
    } else {
        "PASS"
    };
    println!(
        "criterion {no}: {verdict:<18} {title} [{} checks, {} not applicable, {:.2}s of {}s]",
        t.checks,
        t.skipped,
        took.as_secs_f64(),
        budget.as_secs()
    );
    for f in t.failures.iter().chain(&t.refuted).take(10) {
        println!("    {f}");
    }
    if slow {
        println!("    over time budget");
    }
    t.failures.is_empty() && !slow
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;

    ok &= criterion(1, "structural values and low-degree forms", secs(5), |t| {
        for m in 1..=6 {
            for n in 0..=40 {
                t.require_pass(check_endpoint_values(m, n));
            }
        }
        for m in 1..=10 {
            t.require_pass(check_low_degree_forms(m));
        }
    });

    ok &= criterion(2, "series and transform identities", secs(30), |t| {
        let rules: Vec<ExponentRule> = (1..=4)
            .map(ExponentRule::Binomial)
            .chain([ExponentRule::Geometric])
            .collect();
        for rule in &rules {
            t.require_pass(check_gf(rule, GF_ORDER));
            for n in 0..=10 {
                t.require_pass(check_finite_transform(rule, n));
            }
            for n in 0..=12 {
                for nu in 0..=1 {
                    t.report(check_inverse_transform(rule, n, nu));
                }
            }
            for n in 0..=12 {
                for nu in 0..=3 {
                    t.report(check_support_collapse(rule, n, nu));
                }
            }
        }
        for n in 1..=12 {
            for nu in 0..=4 {
                t.require_pass(check_moment_vanishing(n, nu));
            }
        }
    });

    ok &= criterion(3, "halving identity with certified tails", secs(5), |t| {
        let rule = ExponentRule::Binomial(2);
        for (a, b) in [(1, 4), (1, 2), (3, 4)] {
            t.require_pass(check_halving(&rule, &rational(a, b), HALVING_TERMS, HALVING_TOL));
        }
    });

    ok &= criterion(4, "log-concavity statements", secs(120), |t| {
        for m in 2..=5 {
            for n in 1..=20 {
                t.require_pass(check_f_nonnegative(m, n));
                t.require_pass(check_reassembly(m, n));
            }
        }
        for m in 2..=8 {
            t.require_pass(check_f_boundary(m));
            for n in 1..=50 {
                t.require_pass(check_s_lower_bound(m, n));
            }
        }
        for m in 2..=10 {
            t.require_pass(check_s_sequence(m));
            t.require_pass(check_g_shifted(m));
        }
        for m in 2..=4 {
            for n in 1..=12 {
                for k in 1..=3.min(n) {
                    t.require_pass(check_g_nonnegative(m, n, k));
                }
            }
        }
    });

    ok &= criterion(5, "derivative identities and the PDE", secs(60), |t| {
        for m in 1..=4 {
            for n in m as u64..=15 {
                t.require_pass(check_derivative_identity(m, n));
            }
        }
        for n in 2..=15 {
            t.require_pass(check_derivative_display(n));
        }
        for m in 1..=3 {
            for n in m as u64..=12 {
                t.require_pass(check_inverse_derivative(m, n));
            }
            t.require_pass(check_pde(m, PDE_ORDER));
        }
    });

    ok &= criterion(6, "certified root annuli", secs(300), |t| {
        let opts = SolveOptions { tol: ROOT_TOL, ..SolveOptions::default() };
        let cases = (3..=12)
            .map(|n| (2, n))
            .chain((9..=15).map(|n| (3, n)))
            .chain([4u32, 5].into_iter().flat_map(|m| (2 * m as u64 + 1..=2 * m as u64 + 6).map(move |n| (m, n))));
        for (m, n) in cases {
            t.require_pass(check_annulus(m, n, &opts));
        }
    });

    ok &= criterion(7, "real-root counts and parity", secs(300), |t| {
        let odd = real_root_scan(3..=3, 3..=14, STURM_CAP);
        let period = odd[0].period_detected;
        t.expect(period == Some(4), || format!("m=3 parity period {period:?}, expected 4"));
        for row in real_root_scan(2..=2, 2..=16, STURM_CAP)
            .into_iter()
            .chain(real_root_scan(4..=4, 4..=12, STURM_CAP))
            .chain(odd)
        {
            t.status(row.status, || format!("m={} n={} count={:?} floor={}", row.m, row.n, row.count, row.floor_n_over_m));
        }
        t.require_pass(check_parity_period(3, 3, 14));
        for m in [3, 5, 7] {
            for n in 0..=40 {
                t.require_pass(check_sign_at_minus_one(m, n));
            }
        }
    });

    ok &= criterion(8, "oracle equivalences", secs(30), |t| {
        let mut r = rng(8);
        for _ in 0..500 {
            let (a, b) = (random_poly(&mut r, 64, 24, 1 << 20), random_poly(&mut r, 64, 24, 1 << 20));
            let (p, q) = (&a * &b, convolve(&a, &b));
            t.expect(p == q, || format!("mul {a} * {b}"));
        }
        for _ in 0..500 {
            let q = random_poly(&mut r, 5000, 16, 1000);
            let p = &SparsePoly::one_minus_z() * &q;
            let back = p.div_one_minus_z();
            t.expect(back.as_ref() == Ok(&q), || format!("div_one_minus_z {p}"));
        }
        for _ in 0..200 {
            let p = random_poly(&mut r, 400, 16, 1_000_000);
            let x = rational(r.gen_range(-400..=400), r.gen_range(1..=128));
            for prec in [53, 106, 212] {
                let res = numeric_within_bound(&p, &x, prec);
                t.expect(res.is_ok(), || res.unwrap_err());
            }
        }
    });

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
