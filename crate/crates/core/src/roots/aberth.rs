//! Double-precision simultaneous iteration, used to get every root to
//! roughly working accuracy before the multiprecision stage.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::poly::SparsePoly;

/// `ln |x|` without overflowing `f64`.
pub(crate) fn ln_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.abs().to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    libm::log(top) + shift as f64 * LN_2
}

// Complex helpers go through libm directly so results do not depend on
// which float backend num-traits was built with.

pub(crate) fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

pub(crate) fn polar(r: f64, theta: f64) -> Complex64 {
    Complex64::new(r * libm::cos(theta), r * libm::sin(theta))
}

/// `p` as `(exponent, ln |coeff|, negative)` triples.
pub(crate) struct LogPoly {
    terms: Vec<(f64, f64, bool)>,
}

impl LogPoly {
    pub(crate) fn new(p: &SparsePoly) -> Self {
        LogPoly {
            terms: p
                .terms()
                .iter()
                .map(|t| (t.exp as f64, ln_abs(&t.coeff), t.coeff.is_negative()))
                .collect(),
        }
    }

    /// The Newton correction `p(z)/p'(z)`, or `None` where `p'` vanishes.
    /// Terms are summed in polar form relative to the largest one, so huge
    /// degrees neither overflow nor underflow.
    pub(crate) fn newton(&self, z: Complex64) -> Option<Complex64> {
        let (r, theta) = (cabs(z), libm::atan2(z.im, z.re));
        let lr = libm::log(r);
        let big = self
            .terms
            .iter()
            .map(|&(e, lc, _)| lc + e * lr)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut val = Complex64::new(0.0, 0.0);
        let mut der = Complex64::new(0.0, 0.0);
        for &(e, lc, neg) in &self.terms {
            let mag = libm::exp(lc + e * lr - big);
            let ang = e * theta + if neg { PI } else { 0.0 };
            let t = polar(mag, ang);
            val += t;
            der += t * e;
        }
        if der == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(z * val / der)
    }
}

/// Starting points on the circles given by the upper convex hull of
/// `(e_k, ln |c_k|)`, one circle per hull edge with as many points as the
/// edge is wide, rotated by seeded random angles.
pub(crate) fn initial_points(p: &SparsePoly, seed: u64) -> Vec<Complex64> {
    let pts: Vec<(f64, f64)> = p
        .terms()
        .iter()
        .map(|t| (t.exp as f64, ln_abs(&t.coeff)))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly above the segment a -> q
            if (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let count = (w[1].0 - w[0].0) as usize;
        let radius = libm::exp((w[0].1 - w[1].1) / (w[1].0 - w[0].0));
        let phase = 2.0 * PI * unit();
        for j in 0..count {
            let ang = phase + 2.0 * PI * (j as f64 + 0.25 * unit()) / count as f64;
            let rad = radius * (1.0 + 0.01 * (unit() - 0.5));
            out.push(polar(rad, ang));
        }
    }
    out
}

/// Aberth-Ehrlich iteration with Gauss-Seidel updates. A point stops moving
/// once its correction falls below `4u |z|`.
pub(crate) fn aberth(p: &LogPoly, mut z: Vec<Complex64>, max_sweeps: usize) -> Vec<Complex64> {
    let d = z.len();
    let mut done = alloc::vec![false; d];
    for _ in 0..max_sweeps {
        let mut active = false;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let Some(n) = p.newton(z[i]) else { continue };
            let zi = z[i];
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let diff = zi - zj;
                    if diff.re != 0.0 || diff.im != 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let w = n / (Complex64::new(1.0, 0.0) - n * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] = zi - w;
            if cabs(w) <= 4.0 * f64::EPSILON * cabs(z[i]) {
                done[i] = true;
            } else {
                active = true;
            }
        }
        if !active {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::f_poly;

    #[test]
    fn hull_counts_match_degree() {
        for (m, n) in [(2, 3), (3, 9), (5, 12)] {
            let p = f_poly(m, n);
            assert_eq!(initial_points(&p, 1).len() as u64, p.degree().unwrap());
        }
    }

    #[test]
    fn ln_abs_of_huge_integer() {
        let x = BigInt::from(3) << 5000u32;
        assert!((ln_abs(&x) - (libm::log(3.0) + 5000.0 * LN_2)).abs() < 1e-9);
        assert!((ln_abs(&BigInt::from(-10)) - libm::log(10.0)).abs() < 1e-15);
    }

    #[test]
    fn finds_roots_of_small_cubic() {
        let p = f_poly(2, 3);
        let z = aberth(&LogPoly::new(&p), initial_points(&p, 7), 200);
        let mut moduli: Vec<f64> = z.iter().map(|w| cabs(*w)).collect();
        moduli.sort_by(f64::total_cmp);
        assert!((moduli[0] - 1.0).abs() < 1e-12);
        assert!((moduli[2] - 2.0).abs() < 1e-12);
    }
}
