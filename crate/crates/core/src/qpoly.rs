//! Dense univariate polynomials with rational coefficients, used for
//! closed forms in a discrete variable such as `s_m(n)` or fitted
//! coefficient polynomials.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// `coeffs[i]` multiplies `x^i`; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(alloc::vec![c])
    }

    /// `x + c`.
    pub fn x_plus(c: i64) -> Self {
        Self::from_ints(&[c, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&Rational::from_integer(x.into()))
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: i64) -> Self {
        let step = Self::x_plus(c);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(&step).add(&Self::constant(a.clone())))
    }

    /// The unique polynomial of degree below `values.len()` taking
    /// `values[k]` at `x = x0 + k`, built from Newton forward differences.
    pub fn interpolate(x0: i64, values: &[Rational]) -> Self {
        let mut diffs = values.to_vec();
        let mut leading = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            leading.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // sum_k leading[k] * C(x - x0, k)
        let mut out = Self::zero();
        let mut basis = Self::constant(Rational::one());
        for (k, d) in leading.iter().enumerate() {
            out = out.add(&basis.scale(d));
            let factor = Self::new(alloc::vec![
                Rational::new(BigInt::from(-(x0 + k as i64)), BigInt::from(k as i64 + 1)),
                Rational::new(BigInt::one(), BigInt::from(k as i64 + 1)),
            ]);
            basis = basis.mul(&factor);
        }
        out
    }

    /// Text form in the variable `var`, highest degree first, e.g.
    /// `n^2 + 3*n + 6`.
    pub fn display(&self, var: &str) -> String {
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let unit = mag.is_one();
            if !unit || i == 0 {
                let _ = write!(out, "{mag}");
            }
            if i > 0 {
                if !unit {
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    let _ = write!(out, "^{i}");
                }
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = QPoly::x_plus(2).mul(&QPoly::x_plus(2)).sub(&QPoly::x_plus(-2));
        assert_eq!(p, QPoly::from_ints(&[6, 3, 1]));
        assert_eq!(p.display("n"), "n^2 + 3*n + 6");
        assert_eq!(QPoly::from_ints(&[0, -1, 0, 2]).display("t"), "2*t^3 - t");
        assert_eq!(QPoly::zero().display("t"), "0");
    }

    #[test]
    fn shift_and_eval() {
        let p = QPoly::from_ints(&[6, 3, 1]);
        let q = p.shift(3);
        for x in -4..5 {
            assert_eq!(q.eval_int(x), p.eval_int(x + 3));
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = QPoly::new(alloc::vec![
            Rational::new(1.into(), 2.into()),
            Rational::from_integer((-3).into()),
            Rational::new(5.into(), 3.into()),
        ]);
        let vals: Vec<Rational> = (7..12).map(|x| p.eval_int(x)).collect();
        assert_eq!(QPoly::interpolate(7, &vals), p);
        assert!(!p.is_integral());
    }
}
