//! Checkers for the exact identities satisfied by `H_n` and `f_{m,n}`.
//!
//! Every checker is pure and returns an [`IdentityReport`]. Exact identities
//! compare canonical polynomials, so a failure carries the first exponent
//! (or `t`-index) at which the two sides differ.

mod derivative;
mod gf;
mod transforms;

pub use derivative::{
    check_derivative_display, check_derivative_identity, check_difference_identity,
    check_inverse_derivative, check_pde, pde_sides,
};
pub use gf::{check_gf, check_halving, halving_sums, HalvingSums};
pub use transforms::{
    check_finite_transform, check_inverse_transform, check_moment_vanishing,
    check_parity_reflection, check_span, check_support_collapse, moment_sum,
    support_collapse_lhs,
};

use alloc::format;
use num_bigint::BigInt;

use crate::family::FamilyError;
use crate::poly::SparsePoly;
use crate::report::{IdentityReport, Status, Witness};

/// First exponent where `a` and `b` differ, as a witness.
pub(crate) fn poly_mismatch(a: &SparsePoly, b: &SparsePoly, prefix: &str) -> Option<Witness> {
    if a == b {
        return None;
    }
    let diff = a - b;
    let e = diff.terms()[0].exp;
    Some(Witness::new(format!("{prefix}z^{e}"), a.coeff(e), b.coeff(e)))
}

pub(crate) fn undefined(report: IdentityReport, e: FamilyError) -> IdentityReport {
    let w = match &e {
        FamilyError::IndexOutOfRange { index, len } => {
            Witness::new(format!("h_{index}"), "undefined", format!("table length {len}"))
        }
        other => Witness::new("rule", other, "defined value"),
    };
    report.verdict(Status::NotApplicable, w)
}

pub(crate) fn sign(k: u64) -> BigInt {
    if k % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}
