use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{poly_mismatch, sign, undefined};
use crate::binomial::{binomial, factorial};
use crate::family::{f_poly, ExponentRule, FamilyHandle};
use crate::poly::SparsePoly;
use crate::report::{IdentityReport, Status, Witness};
use crate::series::TruncatedSeries;

/// `Delta^r H_n = sum_k C(n,k) z^(h_(k+r))`.
pub fn check_difference_identity(rule: &ExponentRule, n: u64, r: u64) -> IdentityReport {
    let report = IdentityReport::new("difference.closed-form")
        .param("rule", rule)
        .param("n", n)
        .param("r", r);
    let mut handle = FamilyHandle::new(rule.clone());
    let lhs = match handle.forward_difference(n, r) {
        Ok(p) => p,
        Err(e) => return undefined(report, e),
    };
    let rhs = SparsePoly::from_terms((0..=n).map(|k| {
        crate::poly::Term::new(rule.h_value(k + r).expect("defined"), binomial(n, k as i64))
    }));
    report.check(poly_mismatch(&lhs, &rhs, ""))
}

fn z_times(p: &SparsePoly) -> SparsePoly {
    p.mul_monomial(&BigInt::one(), 1)
}

fn below(report: IdentityReport, n: u64, m: u32) -> IdentityReport {
    report.verdict(Status::NotApplicable, Witness::new("n", n, format!(">= {m}")))
}

/// `z f'_{m,n} = C(n,m) sum_i (-1)^i C(m,i) f_{m,n-i}` for `n >= m`.
pub fn check_derivative_identity(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("derivative.difference-form")
        .param("m", m)
        .param("n", n);
    if n < m as u64 {
        return below(report, n, m);
    }
    let lhs = z_times(&f_poly(m, n).derivative());
    let sum: SparsePoly = (0..=m as u64)
        .map(|i| f_poly(m, n - i).scale(&(sign(i) * binomial(m as u64, i as i64))))
        .sum();
    let rhs = sum.scale(&binomial(n, m as i64));
    report.check(poly_mismatch(&lhs, &rhs, ""))
}

/// The second-order case written out:
/// `z f'_n = C(n,2) (f_n - 2 f_(n-1) + f_(n-2))` with `f_n = f_{2,n}`.
pub fn check_derivative_display(n: u64) -> IdentityReport {
    let report = IdentityReport::new("derivative.second-order-display").param("n", n);
    if n < 2 {
        return below(report, n, 2);
    }
    let f = |k| f_poly(2, k);
    let lhs = z_times(&f(n).derivative());
    let second = &(&f(n) - &f(n - 1).scale(&BigInt::from(2))) + &f(n - 2);
    let rhs = second.scale(&BigInt::from(n * (n - 1) / 2));
    report.check(poly_mismatch(&lhs, &rhs, ""))
}

/// `f_{m,n} = sum_{i<m} C(n,i) + z sum_{i=m}^n [C(n-i+m-1, m-1) / C(i,m)] f'_{m,i}`,
/// compared after multiplying through by the lcm of the `C(i,m)`.
pub fn check_inverse_derivative(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("derivative.inverse")
        .param("m", m)
        .param("n", n);
    if n < m as u64 || m == 0 {
        return below(report, n, m.max(1));
    }
    let mm = m as u64;
    let dens: Vec<BigInt> = (mm..=n).map(|i| binomial(i, m as i64)).collect();
    let l = dens.iter().fold(BigInt::one(), |a, d| a.lcm(d));
    let lhs = f_poly(m, n).scale(&l);
    let constant: BigInt = (0..mm).map(|i| binomial(n, i as i64)).sum();
    let mut acc = SparsePoly::zero();
    for (i, d) in (mm..=n).zip(&dens) {
        let c = binomial(n - i + mm - 1, m as i64 - 1) * (&l / d);
        acc = &acc + &f_poly(m, i).derivative().scale(&c);
    }
    let rhs = &SparsePoly::constant(constant * &l) + &z_times(&acc);
    report.check(poly_mismatch(&lhs, &rhs, "").map(|mut w| {
        w.location = format!("{} (both sides times {l})", w.location);
        w
    }))
}

/// Both sides of the order-`m` differential equation for
/// `F_m(z,t) = sum_n f_{m,n}(z) t^n`, multiplied by `m!`:
/// `m! z dF/dz` and `(-t)^m sum_j (m!/j!) C(m,j) (t-1)^j d^jF/dt^j`,
/// each truncated after `t^order`.
pub fn pde_sides(m: u32, order: u64) -> (TruncatedSeries, TruncatedSeries) {
    let series = TruncatedSeries::new((0..=order).map(|n| f_poly(m, n)).collect());
    let mf = factorial(m as u64);
    let lhs = series.map_coeffs(|p| z_times(&p.derivative()).scale(&mf));
    let mut rhs = TruncatedSeries::zero(order as usize + m as usize);
    let mut deriv = series.clone();
    for j in 0..=m as u64 {
        // (t - 1)^j
        let t_minus_one: Vec<BigInt> = (0..=j)
            .map(|i| sign(j - i) * binomial(j, i as i64))
            .collect();
        let c = &mf / factorial(j) * binomial(m as u64, j as i64);
        let term = deriv.mul_t_poly(&t_minus_one).scale(&c);
        rhs = rhs.add(&term.shift_t(m as usize).scale(&sign(m as u64)));
        deriv = deriv.derivative_t();
    }
    let lhs = lhs.truncate(order as usize);
    let rhs = rhs.truncate(order as usize);
    (lhs, rhs)
}

/// The differential equation in `z` and `t` satisfied by the generating
/// function of `f_{m,n}`, compared coefficientwise through `t^order`.
pub fn check_pde(m: u32, order: u64) -> IdentityReport {
    let report = IdentityReport::new("derivative.pde")
        .param("m", m)
        .param("N", order);
    if m == 0 {
        return report.verdict(Status::NotApplicable, Witness::new("m", 0, ">= 1"));
    }
    let (lhs, rhs) = pde_sides(m, order);
    if lhs.order() != rhs.order() {
        return report.fail(Witness::new(
            "valid order",
            format!("{:?}", lhs.order()),
            format!("{:?}", rhs.order()),
        ));
    }
    let w = lhs
        .first_mismatch(&rhs)
        .and_then(|(k, a, b)| poly_mismatch(a, b, &format!("t^{k} ")));
    report.check(w).with_info(format!("both sides scaled by {}", factorial(m as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Term;

    #[test]
    fn difference_examples() {
        assert!(check_difference_identity(&ExponentRule::Binomial(2), 5, 0).pass);
        assert!(check_difference_identity(&ExponentRule::Binomial(2), 1, 1).pass);
        assert!(check_difference_identity(&ExponentRule::Binomial(3), 4, 2).pass);
    }

    #[test]
    fn derivative_examples() {
        assert!(check_derivative_identity(2, 2).pass);
        assert!(check_derivative_identity(1, 5).pass);
        assert!(check_derivative_identity(3, 7).pass);
        assert_eq!(check_derivative_identity(3, 2).status, Status::NotApplicable);
        assert!(check_derivative_display(2).pass);
        assert!(check_derivative_display(9).pass);
    }

    #[test]
    fn inverse_derivative_examples() {
        assert!(check_inverse_derivative(1, 3).pass);
        assert!(check_inverse_derivative(2, 4).pass);
        assert!(check_inverse_derivative(3, 5).pass);
    }

    #[test]
    fn pde_examples() {
        for (m, n) in [(1, 8), (2, 10), (3, 10)] {
            let r = check_pde(m, n);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn pde_m1_matches_closed_form() {
        // F_1 = 1/(1 - t(1+z)), so z dF/dz = sum_n n z (1+z)^(n-1) t^n
        let (lhs, rhs) = pde_sides(1, 8);
        let one_plus_z = SparsePoly::from_terms([Term::new(0, 1), Term::new(1, 1)]);
        for n in 0..=8u64 {
            let expected = if n == 0 {
                SparsePoly::zero()
            } else {
                one_plus_z.pow(n as u32 - 1).mul_monomial(&BigInt::from(n), 1)
            };
            assert_eq!(lhs.coeff(n as usize), Some(&expected));
            assert_eq!(rhs.coeff(n as usize), Some(&expected));
        }
    }
}
