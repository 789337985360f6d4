//! Binomial coefficients.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Rows `0..=PASCAL_ROWS` are kept by [`PascalTable`].
pub const PASCAL_ROWS: u64 = 256;

/// `C(n, k)` by the multiplicative formula; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` as a `u64`, or `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) / (i + 1) stays exact since C(n, i + 1) is an integer
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(x, k)` for a signed integer `x`, i.e. `x (x-1) ... (x-k+1) / k!`.
pub fn binomial_signed(x: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= x - BigInt::from(i);
    }
    acc / factorial(k)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// Parity of `C(n, k)` for `k <= n`: odd exactly when adding `k` and
/// `n - k` in binary produces no carry.
pub fn binomial_is_odd(n: u64, k: u64) -> bool {
    k <= n && (k & (n - k)) == 0
}

/// Pascal rows grown on demand up to [`PASCAL_ROWS`]; larger arguments
/// fall back to [`binomial`].
#[derive(Debug, Clone, Default)]
pub struct PascalTable {
    rows: Vec<Vec<BigInt>>,
}

impl PascalTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn grow_to(&mut self, n: u64) {
        while (self.rows.len() as u64) <= n {
            let row = match self.rows.last() {
                None => alloc::vec![BigInt::one()],
                Some(prev) => {
                    let mut row = Vec::with_capacity(prev.len() + 1);
                    row.push(BigInt::one());
                    row.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
                    row.push(BigInt::one());
                    row
                }
            };
            self.rows.push(row);
        }
    }

    /// Row `n`, i.e. `[C(n, 0), ..., C(n, n)]`.
    pub fn row(&mut self, n: u64) -> Vec<BigInt> {
        if n <= PASCAL_ROWS {
            self.grow_to(n);
            self.rows[n as usize].clone()
        } else {
            (0..=n as i64).map(|k| binomial(n, k)).collect()
        }
    }

    pub fn get(&mut self, n: u64, k: i64) -> BigInt {
        if k < 0 || k as u64 > n {
            return BigInt::zero();
        }
        if n <= PASCAL_ROWS {
            self.grow_to(n);
            self.rows[n as usize][k as usize].clone()
        } else {
            binomial(n, k)
        }
    }
}

/// Lossy conversion used for floating-point diagnostics.
pub fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), 10.into());
        assert_eq!(binomial(5, -1), 0.into());
        assert_eq!(binomial(5, 6), 0.into());
        assert_eq!(binomial(0, 0), 1.into());
        for n in 0..=100 {
            assert_eq!(binomial(n, 0), 1.into());
        }
    }

    #[test]
    fn pascal_agrees_with_multiplicative() {
        let mut t = PascalTable::new();
        for n in 0..=60u64 {
            for k in -1..=(n as i64 + 1) {
                assert_eq!(t.get(n, k), binomial(n, k));
            }
        }
        assert_eq!(t.get(300, 2), binomial(300, 2));
        assert_eq!(t.row(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn u64_variant_and_overflow() {
        assert_eq!(binomial_u64(16, 5), Some(4368));
        assert_eq!(binomial_u64(3, 5), Some(0));
        assert_eq!(binomial_u64(66, 33), Some(7219428434016265740));
        assert_eq!(binomial_u64(70, 35), None);
    }

    #[test]
    fn signed_binomial() {
        assert_eq!(binomial_signed(&BigInt::from(-1), 3), (-1).into());
        assert_eq!(binomial_signed(&BigInt::from(7), 3), 35.into());
        assert_eq!(binomial_signed(&BigInt::from(2), 3), 0.into());
    }

    #[test]
    fn parity_by_carries() {
        assert!(!binomial_is_odd(5, 3));
        assert!(binomial_is_odd(7, 3));
        assert!(!binomial_is_odd(6, 3));
        assert!(!binomial_is_odd(2, 3));
    }
}
