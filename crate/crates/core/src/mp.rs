//! Binary floating point of caller-chosen precision, `mant * 2^exp`.
//!
//! Every operation rounds its exact result to `prec` significant bits
//! (round to nearest), so each result carries a relative error of at most
//! [`unit_roundoff`]`(prec)`. The exponent is an `i64`, which is what lets
//! `|x|^e` be formed for exponents in the tens of thousands without
//! overflow. Only the handful of operations the numeric evaluator and the
//! root certifier need are provided.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Upper bound on the relative error of a single rounded operation at `prec` bits.
pub fn unit_roundoff(prec: u32) -> f64 {
    libm::ldexp(1.0, 1 - prec as i32)
}

#[derive(Clone, Debug)]
pub struct MpFloat {
    mant: BigInt,
    exp: i64,
}

impl MpFloat {
    pub fn zero() -> Self {
        MpFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        MpFloat {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    fn rounded(mant: BigInt, exp: i64, prec: u32) -> Self {
        let bits = mant.bits();
        if bits <= prec as u64 {
            return MpFloat { mant, exp };
        }
        let shift = bits - prec as u64;
        let negative = mant.is_negative();
        let mut mag = mant.abs();
        mag += BigInt::one() << (shift - 1);
        mag >>= shift;
        MpFloat {
            mant: if negative { -mag } else { mag },
            exp: exp + shift as i64,
        }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::rounded(v.clone(), 0, prec)
    }

    /// Exact conversion. Panics on NaN or infinity.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot convert non-finite value {x}");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = bits >> 63;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mant = BigInt::from(m);
        MpFloat {
            mant: if sign == 1 { -mant } else { mant },
            exp: e,
        }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = MpFloat {
            mant: q.numer().clone(),
            exp: 0,
        };
        let den = MpFloat {
            mant: q.denom().clone(),
            exp: 0,
        };
        num.div(&den, prec)
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        MpFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        MpFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        MpFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() {
            return Self::rounded(other.mant.clone(), other.exp, prec);
        }
        if other.is_zero() {
            return Self::rounded(self.mant.clone(), self.exp, prec);
        }
        // A summand entirely below the rounding position of the other
        // changes the result by less than half a unit in the last place.
        let slack = prec as i64 + 2;
        if other.top() < self.top() - slack {
            return Self::rounded(self.mant.clone(), self.exp, prec);
        }
        if self.top() < other.top() - slack {
            return Self::rounded(other.mant.clone(), other.exp, prec);
        }
        let (lo, hi) = if self.exp <= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let shift = (hi.exp - lo.exp) as u64;
        let sum = &lo.mant + (&hi.mant << shift);
        Self::rounded(sum, lo.exp, prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        Self::rounded(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "MpFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let want = prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = want.max(0) as u64;
        let num = &self.mant << shift;
        let q = num.div_floor(&other.mant);
        // floor vs truncation only matters below the rounding position
        Self::rounded(q, self.exp - other.exp - shift as i64, prec)
    }

    /// Square root of a non-negative value, relative error below `2^(1-prec)`.
    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "square root of a negative MpFloat");
        if self.is_zero() {
            return Self::zero();
        }
        // scale so the mantissa has ~2*prec+4 bits and an even exponent
        let mut shift = 2 * prec as i64 + 4 - self.mant.bits() as i64;
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = if shift >= 0 {
            &self.mant << shift as u64
        } else {
            &self.mant >> (-shift) as u64
        };
        let root = num_integer::Roots::sqrt(&m);
        Self::rounded(root, (self.exp - shift) / 2, prec)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let d = self.sub(other, 2);
        match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => {
                // `sub` at 2 bits never rounds a nonzero difference to zero
                Ordering::Equal
            }
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Nearest `f64`; overflows to infinity and underflows to zero.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 64 {
            let shift = bits - 64;
            (&self.mant >> shift, self.exp + shift as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let v = m.to_f64().unwrap_or(0.0);
        let e = e.clamp(-4000, 4000) as i32;
        libm::ldexp(v, e)
    }

    /// `log2 |x|` to roughly double precision; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let keep = bits.min(60);
        let top = (self.mant.abs() >> (bits - keep)).to_u64().unwrap_or(1) as f64;
        libm::log2(top) + (self.exp + (bits - keep) as i64) as f64
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Complex number with [`MpFloat`] parts.
#[derive(Clone, Debug)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
}

/// Relative (norm-wise) error bound of one complex multiplication at
/// `prec` bits: `2*sqrt(2)*u*(1+u)`, rounded up to `3u`.
pub fn complex_mul_roundoff(prec: u32) -> f64 {
    3.0 * unit_roundoff(prec)
}

impl MpComplex {
    pub fn new(re: MpFloat, im: MpFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn zero() -> Self {
        MpComplex::new(MpFloat::zero(), MpFloat::zero())
    }

    pub fn one() -> Self {
        MpComplex::new(MpFloat::one(), MpFloat::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        MpComplex::new(MpFloat::from_f64(re), MpFloat::from_f64(im))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        MpComplex::new(MpFloat::from_rational(q, prec), MpFloat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        MpComplex::new(self.re.add(&o.re, prec), self.im.add(&o.im, prec))
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        MpComplex::new(self.re.sub(&o.re, prec), self.im.sub(&o.im, prec))
    }

    pub fn neg(&self) -> Self {
        MpComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let ac = self.re.mul(&o.re, prec);
        let bd = self.im.mul(&o.im, prec);
        let ad = self.re.mul(&o.im, prec);
        let bc = self.im.mul(&o.re, prec);
        MpComplex::new(ac.sub(&bd, prec), ad.add(&bc, prec))
    }

    pub fn scale(&self, c: &MpFloat, prec: u32) -> Self {
        MpComplex::new(self.re.mul(c, prec), self.im.mul(c, prec))
    }

    pub fn square(&self, prec: u32) -> Self {
        self.mul(self, prec)
    }

    /// `|re|^2 + |im|^2`.
    pub fn norm_sqr(&self, prec: u32) -> MpFloat {
        self.re
            .mul(&self.re, prec)
            .add(&self.im.mul(&self.im, prec), prec)
    }

    /// `|re| + |im|`, an upper bound on the modulus within a factor `sqrt(2)`.
    pub fn l1_norm(&self, prec: u32) -> MpFloat {
        self.re.abs().add(&self.im.abs(), prec)
    }

    pub fn abs(&self, prec: u32) -> MpFloat {
        self.norm_sqr(prec + 4).sqrt(prec)
    }

    /// Panics if `o` is zero.
    pub fn div(&self, o: &Self, prec: u32) -> Self {
        let wp = prec + 8;
        let den = o.norm_sqr(wp);
        let conj = MpComplex::new(o.re.clone(), o.im.neg());
        let num = self.mul(&conj, wp);
        MpComplex::new(num.re.div(&den, prec), num.im.div(&den, prec))
    }

    /// `log2 |z|` to roughly double precision.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let hi = a.max(b);
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        let lo = a.min(b);
        hi + 0.5 * libm::log2(1.0 + libm::exp2(2.0 * (lo - hi)))
    }
}
