//! The operator `L(a_n) = a_n^2 - a_(n-1) a_(n+1)` and its iterates on the
//! sequence `f_{2,n}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{has_positive_coefficients, ConcavityCertificate};
use crate::family::f_poly;
use crate::poly::SparsePoly;
use crate::report::Status;

/// `a_n^2 - a_(n-1) a_(n+1)` for a sequence given as `seq[i] = a_(offset + i)`.
///
/// # Panics
///
/// If the sequence is not defined at `n - 1`, `n` and `n + 1`.
pub fn l_apply(seq: &[SparsePoly], offset: u64, n: u64) -> SparsePoly {
    assert!(n > offset && n + 1 - offset < seq.len() as u64, "L needs a_(n-1), a_n, a_(n+1)");
    let i = (n - offset) as usize;
    &(&seq[i] * &seq[i]) - &(&seq[i - 1] * &seq[i + 1])
}

/// `L` applied to every interior index: the result starts at `offset + 1`
/// and is two entries shorter.
pub fn l_iterate(seq: &[SparsePoly], offset: u64) -> Vec<SparsePoly> {
    (1..seq.len().saturating_sub(1))
        .map(|i| l_apply(seq, offset, offset + i as u64))
        .collect()
}

/// For `k = 1..=k_max` and `n = k..=n_max`, the polynomial `L^k(f_{2,n})`:
/// its multiplicity of `1 - z` and whether
/// `L^k(f_{2,n}) / (1 - z)^(2^k - 1)` is a polynomial with positive integer
/// coefficients. Rows where it is not are [`Status::Refuted`]. The sign
/// fields of each certificate describe that quotient when it exists.
///
/// # Panics
///
/// If `k_max == 0` or `k_max > 16`.
pub fn iterated_l_scan(n_max: u64, k_max: u32) -> Vec<ConcavityCertificate> {
    assert!((1..=16).contains(&k_max), "k_max must be in 1..=16");
    let top = n_max + k_max as u64;
    let mut level: Vec<SparsePoly> = (0..=top).map(|j| f_poly(2, j)).collect();
    let mut offset = 0u64;
    let mut out = Vec::new();
    for k in 1..=k_max {
        level = l_iterate(&level, offset);
        offset += 1;
        let expected = (1u32 << k) - 1;
        for n in k as u64..=n_max {
            let p = &level[(n - offset) as usize];
            let (mult, _) = p.one_minus_z_multiplicity();
            let cofactor = divide_out(p, expected);
            let positive = cofactor.as_ref().is_some_and(has_positive_coefficients);
            let id = format!("L^{k} f_2({n})");
            let mut cert = ConcavityCertificate::for_poly(id, cofactor.as_ref().unwrap_or(p), mult);
            cert.status = if positive { Status::Evidence } else { Status::Refuted };
            cert.info = Some(match &cofactor {
                Some(c) => format!(
                    "k={k} n={n} expected_mult={expected} cofactor_degree={} cofactor_gaps={} cofactor_min={}",
                    c.degree().unwrap_or(0),
                    gaps(c),
                    c.terms().iter().map(|t| &t.coeff).min().map_or("0".into(), |c| c.to_string())
                ),
                None => format!("k={k} n={n} expected_mult={expected} cofactor=none"),
            });
            out.push(cert);
        }
    }
    out
}

/// Zero coefficients strictly below the degree.
fn gaps(p: &SparsePoly) -> u64 {
    p.degree().map_or(0, |d| d + 1 - p.len() as u64)
}

fn divide_out(p: &SparsePoly, times: u32) -> Option<SparsePoly> {
    let mut q = p.clone();
    for _ in 0..times {
        q = q.div_one_minus_z().ok()?;
    }
    Some(q)
}

/// For each `k` present in a scan, the least `n` from which every scanned
/// row has multiplicity exactly `2^k - 1`, `None` when the last row already
/// differs.
pub fn multiplicity_onset(certs: &[ConcavityCertificate]) -> BTreeMap<u32, Option<u64>> {
    let mut rows: BTreeMap<u32, Vec<(u64, u32)>> = BTreeMap::new();
    for c in certs {
        if let Some((k, n)) = parse_object_id(&c.object_id) {
            rows.entry(k).or_default().push((n, c.one_minus_z_mult));
        }
    }
    rows.into_iter()
        .map(|(k, mut v)| {
            v.sort_unstable();
            let expected = (1u32 << k) - 1;
            let mut onset = None;
            for &(n, mult) in v.iter().rev() {
                if mult != expected {
                    break;
                }
                onset = Some(n);
            }
            (k, onset)
        })
        .collect()
}

fn parse_object_id(id: &str) -> Option<(u32, u64)> {
    let rest = id.strip_prefix("L^")?;
    let (k, rest) = rest.split_once(" f_2(")?;
    let n = rest.strip_suffix(')')?;
    Some((k.parse().ok()?, n.parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Term;
    use alloc::vec;

    fn p(terms: &[(u64, i64)]) -> SparsePoly {
        SparsePoly::from_terms(terms.iter().map(|&(e, c)| Term::new(e, c)))
    }

    #[test]
    fn l_examples() {
        let constant = vec![SparsePoly::constant(5); 3];
        assert!(l_apply(&constant, 0, 1).is_zero());
        let geometric: Vec<_> = (0..4).map(|i| SparsePoly::constant(3i64.pow(i))).collect();
        assert!(l_apply(&geometric, 0, 2).is_zero());
        let f: Vec<_> = (0..4).map(|n| f_poly(2, n)).collect();
        assert_eq!(l_apply(&f, 0, 2), p(&[(0, 1), (2, 1), (3, -2)]));
        assert_eq!(l_iterate(&f, 0).len(), 2);
    }

    #[test]
    fn scan_small() {
        let certs = iterated_l_scan(6, 2);
        let first = &certs[0];
        assert_eq!(first.object_id, "L^1 f_2(1)");
        let k1n2 = certs.iter().find(|c| c.object_id == "L^1 f_2(2)").unwrap();
        assert_eq!(k1n2.one_minus_z_mult, 1);
        assert_eq!(
            divide_out(&l_apply(&(0..4).map(|n| f_poly(2, n)).collect::<Vec<_>>(), 0, 2), 1).unwrap(),
            p(&[(0, 1), (1, 1), (2, 2)])
        );
        assert!(certs.iter().all(|c| c.status == Status::Evidence));
        let onset = multiplicity_onset(&certs);
        assert_eq!(onset[&1], Some(1));
        assert_eq!(onset[&2], Some(2));
    }

    #[test]
    fn object_id_round_trip() {
        assert_eq!(parse_object_id("L^3 f_2(12)"), Some((3, 12)));
        assert_eq!(parse_object_id("F(3,7)"), None);
    }
}
