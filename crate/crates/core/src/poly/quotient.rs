use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, SparsePoly, Term};

/// Gaps between consecutive exponents up to this length are expanded term
/// by term; longer ones are kept as a single [`Run`].
pub const DENSE_GAP_THRESHOLD: u64 = 4096;

/// `coeff * (z^start + z^(start+1) + ... + z^(start+len-1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub start: u64,
    pub len: u64,
    pub coeff: BigInt,
}

/// The quotient `p / (1 - z)` split into explicit terms plus long runs of
/// one repeated coefficient.
///
/// The quotient coefficients are the partial sums of the coefficients of
/// `p`, so they are constant between consecutive exponents of `p`. A run
/// is equal to `(c z^a - c z^(a+len)) / (1 - z)`, which is how
/// [`boundary`](Self::boundary) encodes all runs at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneMinusZQuotient {
    explicit: SparsePoly,
    runs: Vec<Run>,
}

impl OneMinusZQuotient {
    pub(crate) fn new(p: &SparsePoly) -> Result<Self, PolyError> {
        Self::with_threshold(p, DENSE_GAP_THRESHOLD)
    }

    pub fn with_threshold(p: &SparsePoly, threshold: u64) -> Result<Self, PolyError> {
        let value = p.coefficient_sum();
        if !value.is_zero() {
            return Err(PolyError::NotDivisible { value });
        }
        let terms = p.terms();
        let mut explicit = Vec::new();
        let mut runs = Vec::new();
        let mut partial = BigInt::zero();
        for w in terms.windows(2) {
            partial += &w[0].coeff;
            if partial.is_zero() {
                continue;
            }
            let (start, end) = (w[0].exp, w[1].exp);
            if end - start <= threshold {
                explicit.extend((start..end).map(|e| Term {
                    exp: e,
                    coeff: partial.clone(),
                }));
            } else {
                runs.push(Run {
                    start,
                    len: end - start,
                    coeff: partial.clone(),
                });
            }
        }
        Ok(OneMinusZQuotient {
            explicit: SparsePoly::from_sorted_unchecked(explicit),
            runs,
        })
    }

    pub fn explicit(&self) -> &SparsePoly {
        &self.explicit
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// `sum over runs of c z^a - c z^(a+len)`; the runs equal this divided by `1 - z`.
    pub fn boundary(&self) -> SparsePoly {
        SparsePoly::from_terms(self.runs.iter().flat_map(|r| {
            [
                Term {
                    exp: r.start,
                    coeff: r.coeff.clone(),
                },
                Term {
                    exp: r.start + r.len,
                    coeff: -&r.coeff,
                },
            ]
        }))
    }

    /// Number of nonzero coefficients of the expanded quotient.
    pub fn term_count(&self) -> u64 {
        self.explicit.len() as u64 + self.runs.iter().map(|r| r.len).sum::<u64>()
    }

    /// Smallest coefficient of the quotient, `None` if it is zero.
    pub fn min_coeff(&self) -> Option<BigInt> {
        self.explicit
            .terms()
            .iter()
            .map(|t| &t.coeff)
            .chain(self.runs.iter().map(|r| &r.coeff))
            .min()
            .cloned()
    }

    /// `(1 - z)` times the quotient, computed without expanding runs.
    pub fn times_one_minus_z(&self) -> SparsePoly {
        &(&SparsePoly::one_minus_z() * &self.explicit) + &self.boundary()
    }

    /// Fully expanded quotient.
    pub fn to_sparse(&self) -> SparsePoly {
        if self.runs.is_empty() {
            return self.explicit.clone();
        }
        let mut terms: Vec<Term> = Vec::with_capacity(self.term_count() as usize);
        terms.extend(self.explicit.terms().iter().cloned());
        for r in &self.runs {
            terms.extend((r.start..r.start + r.len).map(|e| Term {
                exp: e,
                coeff: r.coeff.clone(),
            }));
        }
        terms.sort_unstable_by_key(|t| t.exp);
        SparsePoly::from_sorted_unchecked(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u64, i64)]) -> SparsePoly {
        SparsePoly::from_terms(terms.iter().map(|&(e, c)| Term::new(e, c)))
    }

    #[test]
    fn long_gap_becomes_a_run() {
        let num = p(&[(0, 3), (10_000, -1), (20_000, -2)]);
        let q = OneMinusZQuotient::new(&num).unwrap();
        assert!(q.explicit().is_zero());
        assert_eq!(
            q.runs(),
            &[
                Run {
                    start: 0,
                    len: 10_000,
                    coeff: 3.into()
                },
                Run {
                    start: 10_000,
                    len: 10_000,
                    coeff: 2.into()
                }
            ]
        );
        assert_eq!(q.term_count(), 20_000);
        assert_eq!(q.times_one_minus_z(), num);
        assert_eq!(&SparsePoly::one_minus_z() * &q.to_sparse(), num);
    }

    #[test]
    fn threshold_only_changes_representation() {
        let num = p(&[(0, 1), (5, 2), (9, -4), (30, 1)]);
        let a = OneMinusZQuotient::with_threshold(&num, 0).unwrap();
        let b = OneMinusZQuotient::with_threshold(&num, 100).unwrap();
        assert!(b.runs().is_empty());
        assert_eq!(a.runs().len(), 3);
        assert_eq!(a.to_sparse(), b.to_sparse());
        assert_eq!(a.min_coeff(), Some((-1).into()));
    }

    #[test]
    fn zero_partial_sums_are_skipped() {
        let num = p(&[(0, 1), (3, -1), (7, 2), (8, -2)]);
        let q = num.div_one_minus_z().unwrap();
        assert_eq!(q, p(&[(0, 1), (1, 1), (2, 1), (7, 2)]));
    }
}
