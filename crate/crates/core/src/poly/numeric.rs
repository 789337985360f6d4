use super::{PolyError, SparsePoly};
use crate::mp::{complex_mul_roundoff, unit_roundoff, MpComplex, MpFloat};

/// A floating-point value together with a rigorous bound on its distance
/// from the exact value.
#[derive(Debug, Clone)]
pub struct NumericEval {
    pub value: MpComplex,
    pub error_bound: MpFloat,
}

impl NumericEval {
    /// The error bound rounded to `f64`, which may underflow to zero or
    /// overflow to infinity.
    pub fn error_bound_f64(&self) -> f64 {
        self.error_bound.to_f64()
    }
}

/// Power with a running relative-error bound, in units of the unit roundoff
/// `u` so that it stays representable at any precision.
#[derive(Clone)]
struct Tracked {
    v: MpComplex,
    rel: f64,
}

/// Complex multiplication error in units of `u`; see [`complex_mul_roundoff`].
const MUL_UNITS: f64 = 3.0;

impl Tracked {
    fn mul(&self, o: &Tracked, prec: u32) -> Tracked {
        // u itself, or zero once it underflows; the dropped second-order
        // terms are then below 2^-1000 relative
        let u = unit_roundoff(prec);
        let rel = self.rel + o.rel + self.rel * o.rel * u;
        Tracked {
            v: self.v.mul(&o.v, prec),
            rel: rel + MUL_UNITS * (1.0 + rel * u),
        }
    }

    fn pow(&self, mut g: u64, prec: u32) -> Tracked {
        let mut acc: Option<Tracked> = None;
        let mut base = self.clone();
        loop {
            if g & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base, prec),
                });
            }
            g >>= 1;
            if g == 0 {
                break;
            }
            base = base.mul(&base, prec);
        }
        acc.unwrap_or(Tracked {
            v: MpComplex::one(),
            rel: 0.0,
        })
    }
}

/// Evaluates `p` at `x` in `prec`-bit arithmetic.
///
/// Powers are built by square-and-multiply across exponent gaps, tracking a
/// relative error `r_k u` for each power. With `a_k = |Re t_k| + |Im t_k|`
/// for the computed terms `t_k`, the returned bound is
/// `1.01 u (sum a_k (r_k + 1) + (n - 1) sum a_k)`; the extra percent absorbs
/// second-order terms.
pub fn eval_numeric(p: &SparsePoly, x: &MpComplex, prec: u32) -> Result<NumericEval, PolyError> {
    if prec < 53 {
        return Err(PolyError::PrecisionTooLow(prec));
    }
    debug_assert_eq!(complex_mul_roundoff(prec), MUL_UNITS * unit_roundoff(prec));
    let base = Tracked {
        v: x.clone(),
        rel: 0.0,
    };
    let mut pw = Tracked {
        v: MpComplex::one(),
        rel: 0.0,
    };
    let mut pw_is_one = true;
    let mut prev = 0u64;
    let mut sum = MpComplex::zero();
    let mut abs_total = MpFloat::zero();
    let mut weighted = MpFloat::zero();
    for t in p.terms() {
        if t.exp > prev {
            let step = base.pow(t.exp - prev, prec);
            pw = if pw_is_one { step } else { pw.mul(&step, prec) };
            pw_is_one = false;
            prev = t.exp;
        }
        let c = MpFloat::from_bigint(&t.coeff, prec);
        let c_rel = if t.coeff.bits() <= prec as u64 { 0.0 } else { 1.0 };
        let term = pw.v.scale(&c, prec);
        // |t| <= |re| + |im|; the rounding of this sum is covered by the
        // final inflation
        let mag = term.l1_norm(prec);
        sum = sum.add(&term, prec);
        abs_total = abs_total.add(&mag, prec);
        let rel = pw.rel + c_rel + 1.0;
        weighted = weighted.add(&mag.mul(&MpFloat::from_f64(rel), prec), prec);
    }
    let adds = p.len().saturating_sub(1) as f64;
    let sum_err = abs_total.mul(&MpFloat::from_f64(adds), prec);
    let bound = weighted
        .add(&sum_err, prec)
        .mul(&MpFloat::from_f64(1.01), prec)
        .mul_pow2(1 - prec as i64);
    Ok(NumericEval {
        value: sum,
        error_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Rational, Term};
    use num_bigint::BigInt;

    fn within(e: &NumericEval, exact_re: &Rational, exact_im: &Rational) -> bool {
        let dr = e.value.re.to_rational() - exact_re;
        let di = e.value.im.to_rational() - exact_im;
        let b = e.error_bound.to_rational();
        dr.clone() * dr + di.clone() * di <= b.clone() * b
    }

    #[test]
    fn one_plus_z_at_i() {
        let p = SparsePoly::from_terms([Term::new(0, 1), Term::new(1, 1)]);
        let e = eval_numeric(&p, &MpComplex::from_f64(0.0, 1.0), 53).unwrap();
        assert_eq!(e.value.to_f64(), (1.0, 1.0));
        assert!(e.error_bound_f64() < 1e-15);
    }

    #[test]
    fn exact_root_is_within_bound() {
        let f23 = SparsePoly::from_terms([Term::new(0, 4), Term::new(1, 3), Term::new(3, 1)]);
        let e = eval_numeric(&f23, &MpComplex::from_f64(-1.0, 0.0), 53).unwrap();
        let (re, im) = e.value.to_f64();
        assert!(libm::hypot(re, im) <= e.error_bound_f64());
    }

    #[test]
    fn high_power_against_rational_oracle() {
        let p = SparsePoly::monomial(1, 1000);
        let x = Rational::new(BigInt::from(99), BigInt::from(100));
        let xf = MpComplex::from_rational(&x, 200);
        // x is itself rounded at 200 bits; evaluate at the rounded point
        let xr = xf.re.to_rational();
        let exact = p.eval_exact(&xr);
        for prec in [53, 64, 128] {
            let e = eval_numeric(&p, &xf, prec).unwrap();
            assert!(within(&e, &exact, &Rational::from_integer(0.into())));
            assert!((e.value.re.to_f64() - 4.317124741065786e-5).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_low_precision() {
        let p = SparsePoly::one();
        assert_eq!(
            eval_numeric(&p, &MpComplex::one(), 24).unwrap_err(),
            PolyError::PrecisionTooLow(24)
        );
    }

    #[test]
    fn huge_exponent_does_not_overflow() {
        let p = SparsePoly::from_terms([Term::new(0, 1), Term::new(50_000, 3)]);
        let e = eval_numeric(&p, &MpComplex::from_f64(1.5, 0.5), 64).unwrap();
        let expected = libm::log2(3.0) + 50_000.0 * 0.5 * libm::log2(2.5);
        assert!((e.value.log2_abs() - expected).abs() < 1e-6);
    }
}
