//! Power series in `t` truncated at a known order, with polynomial-in-`z`
//! coefficients.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::SparsePoly;

/// `sum_{n <= order} c_n(z) t^n`, where every stored coefficient is exact
/// and nothing is known beyond `order`. An empty series knows nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<SparsePoly>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<SparsePoly>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: alloc::vec![SparsePoly::zero(); order + 1],
        }
    }

    /// `None` when no coefficient is known.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Option<&SparsePoly> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    /// Keeps only coefficients up to `order`.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Self, f: impl Fn(&SparsePoly, &SparsePoly) -> SparsePoly) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&SparsePoly) -> SparsePoly) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Product with the polynomial `sum_i a[i] t^i`; the order is unchanged.
    pub fn mul_t_poly(&self, a: &[BigInt]) -> Self {
        let len = self.coeffs.len();
        let mut out = alloc::vec![SparsePoly::zero(); len];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for n in i..len {
                out[n] = &out[n] + &self.coeffs[n - i].scale(ai);
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Product with `t^k`; the order grows by `k`.
    pub fn shift_t(&self, k: usize) -> Self {
        let mut coeffs = alloc::vec![SparsePoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// `d/dt`; the order drops by one.
    pub fn derivative_t(&self) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c.scale(&BigInt::from(n)))
                .collect(),
        }
    }

    /// First `t`-index, up to the smaller order, where the two series differ.
    pub fn first_mismatch<'a>(&'a self, o: &'a Self) -> Option<(usize, &'a SparsePoly, &'a SparsePoly)> {
        self.coeffs
            .iter()
            .zip(&o.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(n, (a, b))| (n, a, b))
    }
}
