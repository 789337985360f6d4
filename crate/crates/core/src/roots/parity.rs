//! Parity of `C(n, m)` in `n` and the sign of `f_{m,n}(-1)`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::binomial::binomial_is_odd;
use crate::family::f_poly;
use crate::report::{IdentityReport, Status, Witness};

/// Whether `C(n, m)` is odd; `false` when `m > n`.
pub fn binomial_parity(n: u64, m: u64) -> bool {
    binomial_is_odd(n, m)
}

/// `2^nu` with `2^(nu-1) <= m < 2^nu`: the period of `n -> C(n, m) mod 2`.
pub fn parity_period(m: u64) -> u64 {
    1 << (64 - m.leading_zeros())
}

/// `C(n, m) mod 2` for `n` in `lo..=hi`.
pub fn parity_word(m: u64, lo: u64, hi: u64) -> Vec<bool> {
    (lo..=hi).map(|n| binomial_parity(n, m)).collect()
}

/// `(start, period)` such that `seq[i] == seq[i + period]` for all
/// `i >= start` and the periodic tail covers at least two full periods,
/// choosing the earliest onset and then the shortest period; `None` if no
/// such pair exists.
pub fn eventual_period<T: PartialEq>(seq: &[T]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for period in 1..=seq.len() / 2 {
        let mut start = seq.len() - period;
        while start > 0 && seq[start - 1] == seq[start - 1 + period] {
            start -= 1;
        }
        if seq.len() - start >= 2 * period && best.map_or(true, |(s, _)| start < s) {
            best = Some((start, period));
        }
    }
    best
}

/// `f_{m,n}(-1)`, exactly.
pub fn sign_at_minus_one(m: u32, n: u64) -> BigInt {
    f_poly(m, n).eval_int(&BigInt::from(-1))
}

/// `f_{m,n}(-1) > 0` for odd `m >= 3`; otherwise the value is recorded but
/// nothing is claimed (`f_{1,n} = (1+z)^n` vanishes there).
pub fn check_sign_at_minus_one(m: u32, n: u64) -> IdentityReport {
    let v = sign_at_minus_one(m, n);
    let report = IdentityReport::new("roots.value-at-minus-one")
        .param("m", m)
        .param("n", n)
        .with_info(format!("f(-1)={v}"));
    if m % 2 == 0 || m == 1 {
        return report.verdict(Status::NotApplicable, Witness::new("m", m, "odd, m >= 3"));
    }
    if v.is_positive() {
        report
    } else {
        report.fail(Witness::new("f(-1)", v, "> 0"))
    }
}

/// For odd `m`, `C(n, m)` and `C(n-1, m)` are never both odd.
pub fn check_never_both_odd(m: u32, n_lo: u64, n_hi: u64) -> IdentityReport {
    let report = IdentityReport::new("roots.parity-pairs")
        .param("m", m)
        .param("n", format!("{n_lo}..{n_hi}"));
    if m % 2 == 0 {
        return report.verdict(Status::NotApplicable, Witness::new("m", m, "odd"));
    }
    let m = m as u64;
    let bad = (n_lo.max(1)..=n_hi).find(|&n| binomial_parity(n, m) && binomial_parity(n - 1, m));
    report.check(bad.map(|n| Witness::new(format!("n={n}"), "C(n,m), C(n-1,m) odd", "not both odd")))
}

/// The parity word of `C(n, m)` over `n_lo..=n_hi` has least period
/// `2^nu`, `2^(nu-1) <= m < 2^nu`. The range must cover two periods.
pub fn check_parity_period(m: u32, n_lo: u64, n_hi: u64) -> IdentityReport {
    let expected = parity_period(m as u64);
    let report = IdentityReport::new("roots.parity-period")
        .param("m", m)
        .param("n", format!("{n_lo}..{n_hi}"));
    if n_hi < n_lo || n_hi - n_lo + 1 < 2 * expected {
        return report.verdict(
            Status::NotApplicable,
            Witness::new("range length", n_hi.saturating_sub(n_lo) + 1, format!(">= {}", 2 * expected)),
        );
    }
    let word = parity_word(m as u64, n_lo, n_hi);
    let text: alloc::string::String = word.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let period = (1..=word.len() / 2)
        .find(|&p| (0..word.len() - p).all(|i| word[i] == word[i + p]))
        .map(|p| p as u64);
    let report = report.with_info(format!("word={text}"));
    match period {
        Some(p) if p == expected => report,
        other => report.fail(Witness::new(
            "least period",
            other.map_or("none".into(), |p| format!("{p}")),
            expected,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_examples() {
        assert!(!binomial_parity(5, 3));
        assert!(binomial_parity(7, 3));
        assert!(!binomial_parity(6, 3));
        assert_eq!(parity_period(3), 4);
        assert_eq!(parity_period(5), 8);
        assert_eq!(parity_period(4), 8);
        let w = parity_word(3, 3, 18);
        assert_eq!(eventual_period(&w), Some((0, 4)));
    }

    #[test]
    fn eventual_period_examples() {
        assert_eq!(eventual_period(&[5, 1, 2, 1, 2, 1, 2]), Some((1, 2)));
        assert_eq!(eventual_period(&[1, 2, 3]), None);
        assert_eq!(eventual_period(&[7, 7]), Some((0, 1)));
    }

    #[test]
    fn minus_one_examples() {
        assert_eq!(sign_at_minus_one(3, 4), BigInt::from(8));
        assert_eq!(sign_at_minus_one(3, 3), BigInt::from(6));
        assert_eq!(sign_at_minus_one(1, 2), BigInt::from(0));
        assert_eq!(check_sign_at_minus_one(5, 30).status, Status::Pass);
        assert_eq!(check_sign_at_minus_one(2, 30).status, Status::NotApplicable);
        assert_eq!(check_sign_at_minus_one(1, 4).status, Status::NotApplicable);
    }

    #[test]
    fn parity_checks() {
        for m in [1, 3, 5, 7] {
            assert_eq!(check_never_both_odd(m, 1, 200).status, Status::Pass);
            assert_eq!(check_parity_period(m, m as u64, 100).status, Status::Pass);
        }
        assert_eq!(check_never_both_odd(2, 1, 10).status, Status::NotApplicable);
    }
}
