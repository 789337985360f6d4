//! Exact real-root counting and isolation with a Sturm sequence built from
//! the subresultant pseudo-remainder sequence.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::RootsError;
use crate::family::f_poly;
use crate::poly::{PolyError, Rational, SparsePoly};

/// Default degree cap for Sturm counting.
pub const STURM_DEGREE_CAP: u64 = 600;

/// Isolating intervals are refined to at most this width.
const REFINE_BITS: u32 = 40;

/// An interval `(lo, hi]` holding exactly one real root; `lo == hi` when the
/// root was hit exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "rational_text")]
    pub lo: Rational,
    #[serde(with = "rational_text")]
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        crate::binomial::to_f64(mid.numer()) / crate::binomial::to_f64(mid.denom())
    }
}

mod rational_text {
    use crate::poly::Rational;
    use alloc::string::String;

    pub fn serialize<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(|_| serde::de::Error::custom("invalid rational"))
    }
}

/// Distinct real roots of `f_{m,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealRootCount {
    pub m: u32,
    pub n: u64,
    pub degree: u64,
    pub count: u64,
    pub isolating_intervals: Vec<IsolatingInterval>,
}

/// `N_m(n)`: the number of distinct real zeros of `f_{m,n}`, with
/// isolating intervals in increasing order.
pub fn count_real_roots(m: u32, n: u64, degree_cap: u64) -> Result<RealRootCount, RootsError> {
    let degree = crate::binomial::binomial_u64(n, m as u64).ok_or(RootsError::ExponentOverflow)?;
    if degree > degree_cap {
        return Err(RootsError::DegreeCapExceeded { degree, cap: degree_cap });
    }
    let isolating_intervals = count_real_roots_poly(&f_poly(m, n), degree_cap)?;
    Ok(RealRootCount {
        m,
        n,
        degree,
        count: isolating_intervals.len() as u64,
        isolating_intervals,
    })
}

/// Isolating intervals for the distinct real roots of `p`.
pub fn count_real_roots_poly(p: &SparsePoly, degree_cap: u64) -> Result<Vec<IsolatingInterval>, RootsError> {
    let dense = p.to_dense(degree_cap).map_err(|e| match e {
        PolyError::DegreeCapExceeded { degree, cap } => RootsError::DegreeCapExceeded { degree, cap },
        _ => RootsError::ExponentOverflow,
    })?;
    if dense.len() <= 1 {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(&dense);
    let k0 = cauchy_exponent(&dense);
    let lo = Dyadic::new(-(BigInt::one() << k0), 0);
    let hi = Dyadic::new(BigInt::one() << k0, 0);
    let (vlo, vhi) = (variations(&chain, &lo), variations(&chain, &hi));
    let mut stack = alloc::vec![(lo, hi, vlo, vhi)];
    let mut isolated = Vec::new();
    while let Some((a, b, va, vb)) = stack.pop() {
        match va - vb {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let mid = split_point(&chain[0], &a, &b);
                let vm = variations(&chain, &mid);
                stack.push((a, mid.clone(), va, vm));
                stack.push((mid, b, vm, vb));
            }
        }
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(isolated
        .into_iter()
        .map(|(a, b)| refine(&chain, a, b))
        .collect())
}

fn cauchy_exponent(c: &[BigInt]) -> u64 {
    let lead = c.last().expect("nonempty").bits();
    let max = c.iter().map(|x| x.bits()).max().unwrap_or(0);
    (max + 2).saturating_sub(lead).max(1)
}

/// `num / 2^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Dyadic {
    num: BigInt,
    k: u32,
}

impl Dyadic {
    fn new(num: BigInt, k: u32) -> Self {
        Dyadic { num, k }
    }

    fn midpoint(&self, o: &Self) -> Self {
        let k = self.k.max(o.k);
        let a = &self.num << (k - self.k);
        let b = &o.num << (k - o.k);
        Dyadic::new(a + b, k + 1)
    }

    fn cmp(&self, o: &Self) -> Ordering {
        let k = self.k.max(o.k);
        (&self.num << (k - self.k)).cmp(&(&o.num << (k - o.k)))
    }

    fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), BigInt::one() << self.k)
    }
}

/// Sign of `p(x)` for dense `p`, by Horner on `2^(k deg) p(num / 2^k)`.
fn sign_at(p: &[BigInt], x: &Dyadic) -> i8 {
    let d = p.len() - 1;
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc = acc * &x.num + (&p[i] << (x.k as usize * (d - i)));
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn variations(chain: &[Vec<BigInt>], x: &Dyadic) -> i64 {
    let mut last = 0i8;
    let mut v = 0;
    for s in chain {
        let sg = sign_at(s, x);
        if sg != 0 {
            if last != 0 && sg != last {
                v += 1;
            }
            last = sg;
        }
    }
    v
}

/// A point strictly inside `(a, b)` where `p` does not vanish.
fn split_point(p: &[BigInt], a: &Dyadic, b: &Dyadic) -> Dyadic {
    let mut mid = a.midpoint(b);
    let mut right = b.clone();
    while sign_at(p, &mid) == 0 {
        right = mid.midpoint(&right);
        mid = right.clone();
    }
    mid
}

/// Shrinks `(a, b]` around its single root, by sign changes of `p` when the
/// root has odd multiplicity and by Sturm counts otherwise.
fn refine(chain: &[Vec<BigInt>], mut a: Dyadic, mut b: Dyadic) -> IsolatingInterval {
    let p = &chain[0];
    let width_ok = |a: &Dyadic, b: &Dyadic| {
        let k = a.k.max(b.k);
        let w = (&b.num << (k - b.k)) - (&a.num << (k - a.k));
        w.bits() as i64 <= k as i64 - REFINE_BITS as i64
    };
    let sb = sign_at(p, &b);
    if sb == 0 {
        return IsolatingInterval { lo: b.to_rational(), hi: b.to_rational() };
    }
    let changes = sign_at(p, &a) == -sb;
    let mut vb = variations(chain, &b);
    while !width_ok(&a, &b) {
        let mid = a.midpoint(&b);
        let sm = sign_at(p, &mid);
        if sm == 0 {
            return IsolatingInterval { lo: mid.to_rational(), hi: mid.to_rational() };
        }
        let root_right = if changes {
            sm != sb
        } else {
            let vm = variations(chain, &mid);
            let right = vm - vb == 1;
            if !right {
                vb = vm;
            }
            right
        };
        if root_right {
            a = mid;
        } else {
            b = mid;
        }
    }
    IsolatingInterval { lo: a.to_rational(), hi: b.to_rational() }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn is_zero_poly(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    if d.is_empty() {
        d.push(BigInt::zero());
    }
    d
}

/// `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    for k in (db..r.len()).rev() {
        let q = r[k].clone();
        for x in r[..k].iter_mut() {
            *x *= lc;
        }
        r[k] = BigInt::zero();
        if !q.is_zero() {
            for j in 0..db {
                r[k - db + j] -= &q * &b[j];
            }
        }
    }
    r.truncate(db.max(1));
    trim(&mut r);
    r
}

fn sgn(x: &BigInt) -> i8 {
    if x.is_negative() {
        -1
    } else {
        1
    }
}

/// `S_0 = p`, `S_1 = p'`, and `S_(i+1)` a positive multiple of
/// `-rem(S_(i-1), S_i)`, ending at a multiple of `gcd(p, p')`.
fn sturm_chain(p: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut chain = alloc::vec![p.to_vec()];
    let dp = derivative(p);
    if is_zero_poly(&dp) {
        return chain;
    }
    chain.push(dp.clone());
    let (mut r_prev, mut r) = (p.to_vec(), dp);
    let (mut e_prev, mut e) = (1i8, 1i8);
    let mut psi = BigInt::from(-1);
    let mut gamma_prev = BigInt::zero();
    let mut d_prev = 0usize;
    let mut first = true;
    loop {
        let d = r_prev.len() - r.len();
        let gamma = r.last().expect("nonempty").clone();
        let beta = if first {
            if d % 2 == 0 { BigInt::from(-1) } else { BigInt::one() }
        } else {
            let num = (-&gamma_prev).pow(d_prev as u32);
            psi = if d_prev == 0 { num * &psi } else { num / psi.pow(d_prev as u32 - 1) };
            -&gamma_prev * psi.pow(d as u32)
        };
        first = false;
        let mut next = prem(&r_prev, &r);
        if is_zero_poly(&next) {
            break;
        }
        for c in next.iter_mut() {
            *c = &*c / &beta;
        }
        let gsign = if (d + 1) % 2 == 1 { sgn(&gamma) } else { 1 };
        let e_next = -e_prev * sgn(&beta) * gsign;
        chain.push(if e_next < 0 { next.iter().map(|c| -c).collect() } else { next.clone() });
        gamma_prev = gamma;
        d_prev = d;
        r_prev = core::mem::replace(&mut r, next);
        e_prev = e;
        e = e_next;
        if r.len() == 1 {
            break;
        }
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Term;

    fn from_roots(roots: &[i64]) -> SparsePoly {
        roots.iter().fold(SparsePoly::one(), |acc, &r| {
            &acc * &SparsePoly::from_terms([Term::new(0, -r), Term::new(1, 1)])
        })
    }

    #[test]
    fn counts_known_roots() {
        let p = from_roots(&[-3, -1, 2, 2, 5]);
        let iv = count_real_roots_poly(&p, 100).unwrap();
        assert_eq!(iv.len(), 4);
        let mids: Vec<f64> = iv.iter().map(IsolatingInterval::midpoint_f64).collect();
        for (m, r) in mids.iter().zip([-3.0, -1.0, 2.0, 5.0]) {
            assert!((m - r).abs() < 1e-9, "{mids:?}");
        }
        let q = &SparsePoly::from_terms([Term::new(0, 1), Term::new(2, 1)]) * &from_roots(&[7]);
        assert_eq!(count_real_roots_poly(&q, 100).unwrap().len(), 1);
    }

    #[test]
    fn chain_signs_against_generic_sturm() {
        // a chain with degree drops of two: x^4 - 2, derivative 4x^3
        let p = SparsePoly::from_terms([Term::new(0, -2), Term::new(4, 1)]);
        assert_eq!(count_real_roots_poly(&p, 10).unwrap().len(), 2);
        let p = SparsePoly::from_terms([Term::new(0, 1), Term::new(3, 1), Term::new(7, -3)]);
        assert_eq!(count_real_roots_poly(&p, 10).unwrap().len(), 1);
    }

    #[test]
    fn f_examples() {
        assert_eq!(count_real_roots(2, 2, 600).unwrap().count, 1);
        assert_eq!(count_real_roots(2, 3, 600).unwrap().count, 1);
        let c = count_real_roots(1, 4, 600).unwrap();
        assert_eq!(c.count, 1);
        assert_eq!(c.isolating_intervals[0].lo, Rational::from_integer((-1).into()));
        let big = count_real_roots(3, 20, 600);
        assert_eq!(big, Err(RootsError::DegreeCapExceeded { degree: 1140, cap: 600 }));
    }

    #[test]
    fn f22_root_is_minus_three() {
        let c = count_real_roots(2, 2, 600).unwrap();
        assert!((c.isolating_intervals[0].midpoint_f64() + 3.0).abs() < 1e-9);
    }
}
