//! Root location for `f_{m,n}`: the annulus bounds, certified numeric roots,
//! exact real-root counts, and the parity questions around `z = -1`.

mod aberth;
mod certify;
mod parity;
mod scan;
mod sturm;

pub use certify::{all_roots, solve, CertifiedRoot, RootReport, Solution, SolveOptions, PRECISION_LADDER};
pub use parity::{
    binomial_parity, check_never_both_odd, check_parity_period, check_sign_at_minus_one,
    eventual_period, parity_period, parity_word, sign_at_minus_one,
};
pub use scan::{
    check_annulus, check_dj_growth, check_epsilon_threshold, check_random_lower_family,
    check_random_upper_family, check_real_count_agreement, annulus_study, real_root_scan, real_root_report,
    heuristic_roots, random_lower_family, random_upper_family, RealRootRow, HeuristicMatch,
};
pub use sturm::{count_real_roots, count_real_roots_poly, IsolatingInterval, RealRootCount, STURM_DEGREE_CAP};


use serde::{Deserialize, Serialize};

use crate::binomial::{binomial_u64, factorial, to_f64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootsError {
    #[error("m={m}, n={n} is outside the regime of the {bound} bound")]
    OutOfRegime { m: u32, n: u64, bound: &'static str },
    #[error("could not certify all roots up to {prec} bits (worst relative radius {worst:e})")]
    PrecisionExhausted { prec: u32, worst: f64 },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: u64, cap: u64 },
    #[error("polynomial has a root at zero")]
    ZeroRoot,
    #[error("exponent C(n, m) does not fit in 64 bits")]
    ExponentOverflow,
}

/// How an instance relates to the hypotheses of a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Covered by the general argument.
    Proved,
    /// Claimed for the small cases `m = 3, 4, 5`, `2m+1 <= n`, on numerical grounds.
    Numerical,
    OutOfRegime,
}

/// Regime of the upper bound `1 + m!/(n-m)^(m-2)` (or `1 + (3/n) log n` for
/// `m = 2`).
pub fn upper_regime(m: u32, n: u64) -> Regime {
    let m64 = m as u64;
    match m {
        2 if n >= 3 => Regime::Proved,
        3..=5 if n >= 2 * m64 + 1 => {
            let proved_from = if m == 3 { 19 } else { 12 };
            if n >= proved_from.max(6 * m64 + 1) {
                Regime::Proved
            } else {
                Regime::Numerical
            }
        }
        _ if m >= 6 && n >= 2 * m64 + 1 => Regime::Proved,
        _ => Regime::OutOfRegime,
    }
}

/// `1 + m!/(n-m)^(m-2)` for `m >= 3, n >= 2m+1`; `1 + (3/n) log n` for
/// `m = 2, n >= 3`.
pub fn upper_bound(m: u32, n: u64) -> Result<f64, RootsError> {
    if upper_regime(m, n) == Regime::OutOfRegime {
        return Err(RootsError::OutOfRegime { m, n, bound: "upper" });
    }
    if m == 2 {
        return Ok(1.0 + 3.0 / n as f64 * libm::log(n as f64));
    }
    let den = num_bigint::BigInt::from(n - m as u64).pow(m - 2);
    Ok(1.0 + to_f64(&factorial(m as u64)) / to_f64(&den))
}

/// Smallest `n` with `n >= 2^(1/3) m^(4/3) + m`, i.e. `(n - m)^3 >= 2 m^4`.
pub fn lower_threshold(m: u32) -> u64 {
    let m = m as u128;
    let mut k = 0u128;
    while k * k * k < 2 * m * m * m * m {
        k += 1;
    }
    (k + m) as u64
}

/// `m/(n-m+1)` for `m >= 3, n >= lower_threshold(m)`; `2/n` for `m = 2, n >= 3`.
pub fn lower_bound(m: u32, n: u64) -> Result<f64, RootsError> {
    match m {
        2 if n >= 3 => Ok(2.0 / n as f64),
        3.. if n >= lower_threshold(m) => Ok(m as f64 / (n - m as u64 + 1) as f64),
        _ => Err(RootsError::OutOfRegime { m, n, bound: "lower" }),
    }
}

/// `(6/5) n (ln n - ln ln 2) / C(n, m)` for `n > m`.
pub fn epsilon_threshold(m: u32, n: u64) -> f64 {
    let c = binomial_u64(n, m as u64).map_or(f64::INFINITY, |c| c as f64);
    let nf = n as f64;
    1.2 * nf * (libm::log(nf) - libm::log(core::f64::consts::LN_2)) / c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert_eq!(upper_bound(3, 7), Ok(2.5));
        assert!((upper_bound(2, 3).unwrap() - 2.098_612_288_668_11).abs() < 1e-15);
        assert_eq!(upper_bound(4, 12), Ok(1.375));
        assert!(upper_bound(3, 6).is_err());
        assert_eq!(lower_bound(3, 13), Ok(3.0 / 11.0));
        assert!((lower_bound(2, 3).unwrap() - 2.0 / 3.0).abs() < 1e-16);
        assert!(lower_bound(3, 8).is_err());
        assert_eq!(lower_threshold(3), 9);
        assert_eq!(lower_threshold(4), 12);
        assert_eq!(lower_threshold(5), 16);
    }

    #[test]
    fn regimes() {
        assert_eq!(upper_regime(3, 9), Regime::Numerical);
        assert_eq!(upper_regime(3, 19), Regime::Proved);
        assert_eq!(upper_regime(4, 13), Regime::Numerical);
        assert_eq!(upper_regime(4, 25), Regime::Proved);
        assert_eq!(upper_regime(6, 13), Regime::Proved);
        assert_eq!(upper_regime(2, 2), Regime::OutOfRegime);
    }

    #[test]
    fn epsilon_examples() {
        assert!(epsilon_threshold(3, 19) <= 6.0 / 16.0);
        assert!(epsilon_threshold(4, 12) <= 24.0 / 64.0);
        assert!(epsilon_threshold(6, 13) <= 0.4);
    }
}
