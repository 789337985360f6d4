//! Multiprecision polishing and Weierstrass inclusion disks.
//!
//! For a polynomial of degree `d` with leading coefficient `c` and distinct
//! approximations `z_i`, every root lies in the union of the disks
//! `|z - z_i| <= d |W_i|` with `W_i = p(z_i) / (c prod_(j != i) (z_i - z_j))`,
//! and a connected component made of `k` disks holds exactly `k` roots.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::aberth::{aberth, cabs, initial_points, ln_abs, LogPoly};
use super::{lower_bound, upper_bound, upper_regime, Regime, RootsError};
use crate::binomial::binomial_u64;
use crate::family::f_poly;
use crate::mp::{MpComplex, MpFloat};
use crate::poly::{eval_numeric, SparsePoly};

/// Working precisions tried in turn, in bits.
pub const PRECISION_LADDER: [u32; 7] = [53, 106, 212, 424, 848, 1696, 4096];

const LN2: f64 = core::f64::consts::LN_2;
const U: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Required bound on `radius / |z|` for every root.
    pub tol: f64,
    pub seed: u64,
    /// Highest rung of [`PRECISION_LADDER`] to try.
    pub max_prec: u32,
    pub max_sweeps: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-10,
            seed: 0x5eed,
            max_prec: 4096,
            max_sweeps: 500,
        }
    }
}

/// A disk `|z - (re + i im)| <= radius` holding at least one root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedRoot {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl CertifiedRoot {
    fn center(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Certified roots of a polynomial and the checks run on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub degree: u64,
    pub roots: Vec<CertifiedRoot>,
    pub precision_used: u32,
    pub max_relative_radius: f64,
    /// Groups of overlapping disks; each group holds as many roots as disks.
    pub clusters: Vec<Vec<usize>>,
    /// Every root has modulus in `[min_modulus, max_modulus]`.
    pub min_modulus: f64,
    pub max_modulus: f64,
    pub vieta_sum_ok: bool,
    pub vieta_product_ok: bool,
    /// Disks proved to contain a real root.
    pub real_roots: Vec<usize>,
}

/// Certified roots of `f_{m,n}` against the annulus bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub m: u32,
    pub n: u64,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub upper_regime: Regime,
    /// `None` when neither bound applies.
    pub all_inside_annulus: Option<bool>,
    pub solution: Solution,
}

impl RootReport {
    pub fn roots(&self) -> &[CertifiedRoot] {
        &self.solution.roots
    }

    pub fn precision_used(&self) -> u32 {
        self.solution.precision_used
    }
}

/// Certified roots of `f_{m,n}`, `m >= 1`.
pub fn all_roots(m: u32, n: u64, opts: &SolveOptions) -> Result<RootReport, RootsError> {
    binomial_u64(n, m as u64).ok_or(RootsError::ExponentOverflow)?;
    let solution = solve(&f_poly(m, n), opts)?;
    let lower = lower_bound(m, n).ok();
    let upper = upper_bound(m, n).ok();
    let all_inside_annulus = (lower.is_some() || upper.is_some()).then(|| {
        lower.map_or(true, |b| solution.min_modulus > b)
            && upper.map_or(true, |b| solution.max_modulus < b)
    });
    Ok(RootReport {
        m,
        n,
        lower_bound: lower,
        upper_bound: upper,
        upper_regime: upper_regime(m, n),
        all_inside_annulus,
        solution,
    })
}

/// Certified roots of any polynomial with a nonzero constant term.
pub fn solve(p: &SparsePoly, opts: &SolveOptions) -> Result<Solution, RootsError> {
    if p.is_zero() || p.constant_term().is_zero() {
        return Err(RootsError::ZeroRoot);
    }
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Ok(finish(p, Vec::new(), 53));
    }
    let start = aberth(&LogPoly::new(p), initial_points(p, opts.seed), opts.max_sweeps);
    let mut worst = f64::INFINITY;
    let mut points: Vec<MpComplex> = Vec::new();
    for &prec in PRECISION_LADDER.iter().filter(|&&b| b <= opts.max_prec) {
        let radii = if prec == 53 {
            let pts: Vec<Complex64> = start
                .iter()
                .map(|z| {
                    let w = newton_step(p, &MpComplex::from_f64(z.re, z.im), 106).unwrap_or_else(|| MpComplex::from_f64(z.re, z.im));
                    let (re, im) = w.to_f64();
                    Complex64::new(re, im)
                })
                .collect();
            let lr = log2_radii_f64(p, &pts);
            points = pts.iter().map(|z| MpComplex::from_f64(z.re, z.im)).collect();
            lr
        } else {
            points = polish(p, points, prec);
            log2_radii_mp(p, &points, prec)
        };
        let roots: Vec<CertifiedRoot> = points
            .iter()
            .zip(&radii)
            .map(|(z, &lr)| to_certified(z, lr))
            .collect();
        worst = roots
            .iter()
            .map(|r| r.radius / cabs(r.center()))
            .fold(0.0, f64::max);
        if worst < opts.tol {
            return Ok(finish(p, roots, prec));
        }
    }
    Err(RootsError::PrecisionExhausted {
        prec: opts.max_prec.min(4096),
        worst,
    })
}

/// Rounds the center to `f64` and widens the radius by the rounding.
fn to_certified(z: &MpComplex, log2_radius: f64) -> CertifiedRoot {
    let (re, im) = z.to_f64();
    let moved = MpComplex::from_f64(re, im).sub(z, 64).l1_norm(64).to_f64();
    let r = libm::exp2(log2_radius) + moved * (1.0 + 4.0 * U);
    CertifiedRoot {
        re,
        im,
        radius: if r.is_finite() { r } else { f64::INFINITY },
    }
}

fn pow(z: &MpComplex, mut g: u64, prec: u32) -> MpComplex {
    let mut acc = MpComplex::one();
    let mut base = z.clone();
    let mut first = true;
    loop {
        if g & 1 == 1 {
            acc = if first { base.clone() } else { acc.mul(&base, prec) };
            first = false;
        }
        g >>= 1;
        if g == 0 {
            return acc;
        }
        base = base.square(prec);
    }
}

/// `p(z)/p'(z)` at `prec` bits, sharing powers between the two sums.
fn newton_correction(p: &SparsePoly, z: &MpComplex, prec: u32) -> Option<MpComplex> {
    let mut val = MpComplex::zero();
    let mut zder = MpComplex::zero();
    let mut pw = MpComplex::one();
    let mut prev = 0u64;
    for t in p.terms() {
        if t.exp > prev {
            pw = if prev == 0 { pow(z, t.exp, prec) } else { pw.mul(&pow(z, t.exp - prev, prec), prec) };
            prev = t.exp;
        }
        let c = MpFloat::from_bigint(&t.coeff, prec);
        let term = pw.scale(&c, prec);
        zder = zder.add(&term.scale(&MpFloat::from_bigint(&num_bigint::BigInt::from(t.exp), prec), prec), prec);
        val = val.add(&term, prec);
    }
    if zder.is_zero() {
        return None;
    }
    Some(z.mul(&val, prec).div(&zder, prec))
}

fn newton_step(p: &SparsePoly, z: &MpComplex, prec: u32) -> Option<MpComplex> {
    newton_correction(p, z, prec).map(|w| z.sub(&w, prec))
}

/// Aberth sweeps for moderate degree, plain Newton otherwise; enough steps
/// to carry quadratic convergence from 53 bits to `prec`.
fn polish(p: &SparsePoly, mut z: Vec<MpComplex>, prec: u32) -> Vec<MpComplex> {
    let steps = 2 + (32 - (prec / 53).leading_zeros()) as usize;
    let d = z.len();
    for _ in 0..steps {
        for i in 0..d {
            let Some(n) = newton_correction(p, &z[i], prec) else { continue };
            let w = if d <= 400 {
                let mut s = MpComplex::zero();
                for j in 0..d {
                    if j != i {
                        let diff = z[i].sub(&z[j], prec);
                        if !diff.is_zero() {
                            s = s.add(&MpComplex::one().div(&diff, prec), prec);
                        }
                    }
                }
                let den = MpComplex::one().sub(&n.mul(&s, prec), prec);
                if den.is_zero() {
                    n
                } else {
                    n.div(&den, prec)
                }
            } else {
                n
            };
            z[i] = z[i].sub(&w, prec);
        }
    }
    z
}

/// Upper bound on `log2 |p(z)|` from a rigorous evaluation at `prec` bits.
fn log2_abs_p_upper(p: &SparsePoly, z: &MpComplex, prec: u32) -> f64 {
    let ev = eval_numeric(p, z, prec).expect("precision >= 53");
    let a = ev.value.log2_abs();
    let b = ev.error_bound.log2_abs();
    let hi = a.max(b);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + libm::log2(1.0 + libm::exp2(a.min(b) - hi)) + 1e-9
}

/// `log2 (d |W_i|)` with the points stored exactly as `f64`. Each difference
/// has relative error at most `u` per component, its modulus and logarithm
/// add a few ulps, all absorbed in `slack`.
fn log2_radii_f64(p: &SparsePoly, z: &[Complex64]) -> Vec<f64> {
    let d = z.len();
    let lead = ln_abs(&p.leading_coeff()) / LN2;
    (0..d)
        .map(|i| {
            let lp = log2_abs_p_upper(p, &MpComplex::from_f64(z[i].re, z[i].im), 106);
            let mut sum = 0.0f64;
            let mut abs_sum = 0.0f64;
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let l = libm::log2(cabs(z[i] - zj));
                    sum += l;
                    abs_sum += l.abs();
                }
            }
            if sum == f64::NEG_INFINITY {
                return f64::INFINITY;
            }
            let slack = d as f64 * 5.0 * U / LN2 + abs_sum * (d as f64 + 2.0) * U + 1e-12;
            libm::log2(d as f64) + lp - lead - sum + slack
        })
        .collect()
}

fn log2_radii_mp(p: &SparsePoly, z: &[MpComplex], prec: u32) -> Vec<f64> {
    let d = z.len();
    let lead = ln_abs(&p.leading_coeff()) / LN2;
    (0..d)
        .map(|i| {
            let lp = log2_abs_p_upper(p, &z[i], 2 * prec);
            let mut sum = 0.0f64;
            let mut abs_sum = 0.0f64;
            for j in 0..d {
                if j != i {
                    let l = z[i].sub(&z[j], prec).log2_abs();
                    sum += l;
                    abs_sum += l.abs();
                }
            }
            if sum == f64::NEG_INFINITY {
                return f64::INFINITY;
            }
            // each log2 carries the difference rounding plus ~4 ulps of itself
            let slack = d as f64 * 1e-12 + abs_sum * (d as f64 + 8.0) * U + 1e-12;
            libm::log2(d as f64) + lp - lead - sum + slack
        })
        .collect()
}

fn overlap(a: &CertifiedRoot, b: &CertifiedRoot) -> bool {
    cabs(a.center() - b.center()) * (1.0 - 4.0 * U) <= (a.radius + b.radius) * (1.0 + 4.0 * U)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn finish(p: &SparsePoly, roots: Vec<CertifiedRoot>, prec: u32) -> Solution {
    let d = roots.len();
    let mut parent: Vec<usize> = (0..d).collect();
    for i in 0..d {
        for j in i + 1..d {
            if overlap(&roots[i], &roots[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: alloc::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..d {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let components: Vec<Vec<usize>> = groups.into_values().collect();

    let modulus = |r: &CertifiedRoot| cabs(r.center());
    let lo = |r: &CertifiedRoot| (modulus(r) * (1.0 - 2.0 * U) - r.radius).max(0.0);
    let hi = |r: &CertifiedRoot| modulus(r) * (1.0 + 2.0 * U) + r.radius;
    let min_modulus = roots.iter().map(lo).fold(f64::INFINITY, f64::min);
    let max_modulus = roots.iter().map(hi).fold(0.0, f64::max);

    let lead = crate::binomial::to_f64(&p.leading_coeff());
    let deg = p.degree().unwrap_or(0);
    let target_sum = if deg == 0 {
        0.0
    } else {
        -crate::binomial::to_f64(&p.coeff(deg - 1)) / lead
    };
    let sum: Complex64 = roots.iter().map(|r| r.center()).sum();
    let abs_total: f64 = roots.iter().map(modulus).sum();
    let mut sum_allow = (d as f64 + 2.0) * 2.0 * U * abs_total + 2.0 * U * target_sum.abs() + 1e-300;
    let mut log_allow = 1e-12 * (d as f64 + 1.0);
    for c in &components {
        let k = c.len() as f64;
        let spread: f64 = c.iter().map(|&i| roots[i].radius).sum();
        sum_allow += if c.len() == 1 { spread } else { 2.0 * k * spread };
        let clo = c.iter().map(|&i| lo(&roots[i])).fold(f64::INFINITY, f64::min);
        let chi = c.iter().map(|&i| hi(&roots[i])).fold(0.0, f64::max);
        log_allow += k * (libm::log2(chi) - libm::log2(clo));
    }
    let vieta_sum_ok = cabs(sum - Complex64::new(target_sum, 0.0)) <= sum_allow;
    let log_prod: f64 = roots.iter().map(|r| libm::log2(modulus(r))).sum();
    let target_prod = (ln_abs(&p.constant_term()) - ln_abs(&p.leading_coeff())) / LN2;
    log_allow += roots.iter().map(|r| libm::log2(modulus(r)).abs()).sum::<f64>() * 4.0 * U;
    let vieta_product_ok = (log_prod - target_prod).abs() <= log_allow;

    let real_roots = components
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| c[0])
        .filter(|&i| {
            let r = &roots[i];
            let mirror = CertifiedRoot { im: -r.im, ..*r };
            r.im.abs() <= r.radius && (0..d).all(|j| j == i || !overlap(&roots[j], &mirror))
        })
        .collect();
    let max_relative_radius = roots.iter().map(|r| r.radius / modulus(r)).fold(0.0, f64::max);
    Solution {
        degree: deg,
        roots,
        precision_used: prec,
        max_relative_radius,
        clusters: components.into_iter().filter(|c| c.len() > 1).collect(),
        min_modulus,
        max_modulus,
        vieta_sum_ok,
        vieta_product_ok,
        real_roots,
    }
}
