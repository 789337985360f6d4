//! Exact arithmetic for the sparse polynomials
//! `H_n(z) = sum_j C(n, j) z^(h_j)` and their binomial-exponent special case
//! `f_{m,n}(z) = sum_j C(n, j) z^C(j, m)`.
//!
//! The crate is `no_std` and only needs an allocator. Everything is exact
//! except the root finder, which certifies its floating-point results.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod binomial;
pub mod concavity;
pub mod family;
pub mod identities;
pub mod mp;
pub mod poly;
pub mod qpoly;
pub mod report;
pub mod roots;
pub mod series;

pub use binomial::binomial;
pub use family::{check_endpoint_values, check_low_degree_forms, f_poly, ExponentRule, FamilyHandle};
pub use poly::{PolyError, Rational, SparsePoly, Term};
pub use report::{IdentityReport, Status, Witness};
