//! Log-concavity of `n -> f_{m,n}(z)`: the quotient polynomials `F`,
//! `F^(k)` and `G^(k)`, the coefficient decomposition behind their
//! nonnegativity, the constant-term recurrences, and the iterated operator
//! `L(a_n) = a_n^2 - a_(n-1) a_(n+1)`.

mod checks;
mod lemma;
mod scan;

pub use checks::{
    check_f_boundary, check_f_k_nonnegative, check_f_nonnegative, check_g_nonnegative,
    check_g_nu, check_g_shifted, check_log_concave_samples, check_negative_axis,
    check_reassembly, check_s_lower_bound, check_s_sequence,
};
pub use lemma::{g_shifted, s_sequence, s_value};
pub use scan::{iterated_l_scan, l_apply, l_iterate, multiplicity_onset};

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;
#[cfg(test)]
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binomial::binomial;
use crate::family::f_poly;
use crate::poly::{SparsePoly, Term};
use crate::report::Status;

/// `(f_{m,n}^2 - f_{m,n-1} f_{m,n+1}) / (1 - z)` for `n >= 1`.
pub fn f_quotient(m: u32, n: u64) -> SparsePoly {
    f_k_quotient(m, n, 1)
}

/// `(f_{m,n}^2 - f_{m,n-k} f_{m,n+k}) / (1 - z)`.
///
/// # Panics
///
/// If `k > n`.
pub fn f_k_quotient(m: u32, n: u64, k: u64) -> SparsePoly {
    assert!(k <= n, "needs n - k >= 0");
    let f = f_poly(m, n);
    let num = &(&f * &f) - &(&f_poly(m, n - k) * &f_poly(m, n + k));
    num.div_one_minus_z()
        .expect("numerator vanishes at z = 1")
}

/// `(f_{m,2n} - f_{m,n-k} f_{m,n+k}) / (z - 1)`.
///
/// # Panics
///
/// If `k > n`.
pub fn g_quotient(m: u32, n: u64, k: u64) -> SparsePoly {
    assert!(k <= n, "needs n - k >= 0");
    let num = &(&f_poly(m, n - k) * &f_poly(m, n + k)) - &f_poly(m, 2 * n);
    num.div_one_minus_z()
        .expect("numerator vanishes at z = 1")
}

/// `g_nu` with its symmetrized coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GNu {
    pub nu: u64,
    /// `sum_j (C(n,j) C(n,nu-j) - C(n-1,j) C(n+1,nu-j)) z^(C(j,m) + C(nu-j,m))`.
    pub g: SparsePoly,
    /// `a_(nu,j)` for `j = 0..=nu`, where `2 g_nu = sum_j a_(nu,j) z^(C(j,m) + C(nu-j,m))`.
    pub a: Vec<BigInt>,
}

pub(crate) fn exponent(m: u32, j: u64, nu: u64) -> u64 {
    let e = |x: u64| crate::binomial::binomial_u64(x, m as u64).expect("exponent fits");
    e(j) + e(nu - j)
}

/// The `nu`-th slice of `(1 - z) F_{m,n}` grouped by total index `nu`,
/// for `0 <= nu <= 2n`.
pub fn g_nu(m: u32, n: u64, nu: u64) -> GNu {
    let b = |a: u64, k: u64| binomial(a, k as i64);
    let terms = (0..=nu).map(|j| {
        let c = b(n, j) * b(n, nu - j) - b(n - 1, j) * b(n + 1, nu - j);
        Term::new(exponent(m, j, nu), c)
    });
    let g = SparsePoly::from_terms(terms);
    let a = (0..=nu)
        .map(|j| {
            BigInt::from(2) * b(n, j) * b(n, nu - j)
                - b(n - 1, j) * b(n + 1, nu - j)
                - b(n + 1, j) * b(n - 1, nu - j)
        })
        .collect();
    GNu { nu, g, a }
}

/// The closed form of `a_(nu,j)`, defined when `j <= n` and `nu - j <= n`.
pub fn a_closed_form(n: u64, nu: u64, j: u64) -> Option<crate::poly::Rational> {
    if j > nu || j > n || nu - j > n || n == 0 {
        return None;
    }
    let (n_, nu_, j_) = (
        BigInt::from(n),
        BigInt::from(nu),
        BigInt::from(j),
    );
    let num = BigInt::from(2) * (BigInt::from(2) * &n_ + 1) * &j_ * (&nu_ - &j_)
        - (&n_ + 1) * &nu_ * (&nu_ - 1);
    let den = &n_ * (&n_ + 1 - &nu_ + &j_) * (&n_ + 1 - &j_);
    let c = binomial(n, j as i64) * binomial(n, (nu - j) as i64);
    Some(crate::poly::Rational::new(c * num, den))
}

/// Evidence record for a coefficient-sign question about one polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcavityCertificate {
    pub object_id: String,
    pub nonneg: bool,
    /// Lowest exponent with a negative coefficient, and that coefficient.
    pub first_negative: Option<(u64, String)>,
    pub one_minus_z_mult: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub info: Option<String>,
}

impl ConcavityCertificate {
    /// Certificate for the coefficient signs of `p`, whose multiplicity of
    /// the factor `1 - z` is `mult`.
    pub fn for_poly(object_id: impl Into<String>, p: &SparsePoly, mult: u32) -> Self {
        let first_negative = p
            .first_negative()
            .map(|t| (t.exp, t.coeff.to_string()));
        ConcavityCertificate {
            object_id: object_id.into(),
            nonneg: first_negative.is_none(),
            first_negative,
            one_minus_z_mult: mult,
            status: Status::Pass,
            info: None,
        }
    }
}

/// Whether `p` is nonzero and every nonzero coefficient is positive.
/// Internal zero coefficients are allowed.
pub fn has_positive_coefficients(p: &SparsePoly) -> bool {
    !p.is_zero() && p.terms().iter().all(|t| t.coeff.is_positive())
}
