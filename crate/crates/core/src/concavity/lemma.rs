//! The constant term `S_m(n) = F_{m,n}(0)` and the polynomial sequences
//! `s_m(n)` and `g_m(t) = s_m(t + m - 1)` that bound it from below.

use num_bigint::BigInt;

use crate::binomial::binomial;
use crate::poly::Rational;
use crate::qpoly::QPoly;

fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

fn partial_row_sum(n: u64, m: u32) -> BigInt {
    (0..m as i64).map(|j| binomial(n, j)).sum()
}

/// `S_m(n) = (sum_(j<m) C(n,j))^2 - (sum_(j<m) C(n-1,j)) (sum_(j<m) C(n+1,j))`.
///
/// # Panics
///
/// If `n == 0`.
pub fn s_value(m: u32, n: u64) -> BigInt {
    assert!(n >= 1, "S_m(n) needs n >= 1");
    let a = partial_row_sum(n, m);
    &a * &a - partial_row_sum(n - 1, m) * partial_row_sum(n + 1, m)
}

/// `s_m(n)` as a polynomial in `n`, from `s_2 = 1`, `s_3 = n + 2` and
/// `s_m = (n + 2) s_(m-1) - (m - 3)(n - m + 2) s_(m-2)`.
///
/// # Panics
///
/// If `m < 2`.
pub fn s_sequence(m: u32) -> QPoly {
    assert!(m >= 2, "s_m needs m >= 2");
    let mut prev = QPoly::from_ints(&[1]);
    let mut cur = QPoly::x_plus(2);
    if m == 2 {
        return prev;
    }
    for k in 4..=m as i64 {
        let next = QPoly::x_plus(2)
            .mul(&cur)
            .sub(&QPoly::x_plus(2 - k).mul(&prev).scale(&int(k - 3)));
        prev = cur;
        cur = next;
    }
    cur
}

/// `g_m(t)` from `g_2 = 1`, `g_3 = t + 4` and
/// `g_m = (t + 3m - 5) g_(m-1) - 2(m - 3)(t + m - 2) g_(m-2)`.
///
/// # Panics
///
/// If `m < 2`.
pub fn g_shifted(m: u32) -> QPoly {
    assert!(m >= 2, "g_m needs m >= 2");
    let mut prev = QPoly::from_ints(&[1]);
    let mut cur = QPoly::x_plus(4);
    if m == 2 {
        return prev;
    }
    for k in 4..=m as i64 {
        let next = QPoly::x_plus(3 * k - 5)
            .mul(&cur)
            .sub(&QPoly::x_plus(k - 2).mul(&prev).scale(&int(2 * (k - 3))));
        prev = cur;
        cur = next;
    }
    cur
}
