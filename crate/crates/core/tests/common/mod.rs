#![allow(dead_code)]

use binsparse::mp::MpComplex;
use binsparse::poly::eval_numeric;
use binsparse::{Rational, SparsePoly, Term};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: u64, max_terms: usize, max_coeff: i64) -> SparsePoly {
    let k = rng.gen_range(0..=max_terms);
    SparsePoly::from_terms((0..k).map(|_| Term::new(rng.gen_range(0..=max_deg), rng.gen_range(-max_coeff..=max_coeff))))
}

/// Schoolbook product over plain `i128` coefficient arrays.
pub fn convolve(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let dense = |p: &SparsePoly| {
        let mut v = vec![0i128; p.degree().map_or(0, |d| d as usize + 1)];
        for t in p.terms() {
            v[t.exp as usize] = i128::try_from(&t.coeff).unwrap();
        }
        v
    };
    let (x, y) = (dense(a), dense(b));
    let mut out = vec![0i128; (x.len() + y.len()).max(1)];
    for (i, p) in x.iter().enumerate() {
        for (j, q) in y.iter().enumerate() {
            out[i + j] += p * q;
        }
    }
    SparsePoly::from_terms(out.into_iter().enumerate().map(|(e, c)| Term::new(e as u64, c)))
}

/// Whether `eval_numeric(p, x)` is within its own bound of the exact value.
pub fn numeric_within_bound(p: &SparsePoly, x: &Rational, prec: u32) -> Result<(), String> {
    let exact = p.eval_exact(x);
    let r = eval_numeric(p, &MpComplex::from_rational(x, prec), prec).map_err(|e| e.to_string())?;
    let err = r.error_bound.to_rational();
    let d_re = r.value.re.to_rational() - &exact;
    let d_im = r.value.im.to_rational();
    if &d_re * &d_re + &d_im * &d_im <= &err * &err {
        Ok(())
    } else {
        Err(format!(
            "p={p} x={x} prec={prec}: |error| {:e} > bound {:e}",
            (d_re.abs().to_f64_lossy()),
            r.error_bound_f64()
        ))
    }
}

trait Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl Lossy for Rational {
    fn to_f64_lossy(&self) -> f64 {
        binsparse::binomial::to_f64(self.numer()) / binsparse::binomial::to_f64(self.denom())
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
