//! Exponent rules `h`, the polynomials `H_n` and `f_{m,n}`, and forward
//! differences in `n`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::binomial::{binomial, binomial_u64, PascalTable};
use crate::report::{IdentityReport, Status, Witness};
use crate::poly::{SparsePoly, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("index {index} is outside the exponent table of length {len}")]
    IndexOutOfRange { index: u64, len: usize },
    #[error("exponent h_{index} does not fit in 64 bits")]
    ExponentOverflow { index: u64 },
    #[error("invalid exponent rule {0:?}")]
    InvalidRule(String),
}

/// The exponent sequence `h = (h_0, h_1, ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ExponentRule {
    /// `h_j = C(j, m)`, `m >= 1`.
    Binomial(u32),
    /// `h_j = 2^j`.
    Geometric,
    /// Explicit values `h_0, ..., h_(len-1)`.
    Table(Vec<u64>),
}

impl ExponentRule {
    pub fn binomial(m: u32) -> Result<Self, FamilyError> {
        if m == 0 {
            return Err(FamilyError::InvalidRule("binom:0".to_string()));
        }
        Ok(ExponentRule::Binomial(m))
    }

    pub fn h_value(&self, j: u64) -> Result<u64, FamilyError> {
        match self {
            ExponentRule::Binomial(m) => {
                binomial_u64(j, *m as u64).ok_or(FamilyError::ExponentOverflow { index: j })
            }
            ExponentRule::Geometric if j < 64 => Ok(1 << j),
            ExponentRule::Geometric => Err(FamilyError::ExponentOverflow { index: j }),
            ExponentRule::Table(v) => v.get(j as usize).copied().ok_or(FamilyError::IndexOutOfRange {
                index: j,
                len: v.len(),
            }),
        }
    }

    /// `h_0, ..., h_n`.
    pub fn h_values(&self, n: u64) -> Result<Vec<u64>, FamilyError> {
        (0..=n).map(|j| self.h_value(j)).collect()
    }

    /// Largest index the rule is defined at, `None` if unbounded.
    pub fn max_index(&self) -> Option<u64> {
        match self {
            ExponentRule::Table(v) => Some((v.len() as u64).saturating_sub(1)),
            _ => None,
        }
    }

    /// First index `J` such that `h_J < h_(J+1) < ...` for every index the
    /// rule defines. For a table this only speaks about the listed values.
    pub fn increasing_from(&self) -> u64 {
        match self {
            ExponentRule::Binomial(m) => *m as u64 - 1,
            ExponentRule::Geometric => 0,
            ExponentRule::Table(v) => {
                let mut j = v.len().saturating_sub(1);
                while j > 0 && v[j - 1] < v[j] {
                    j -= 1;
                }
                j as u64
            }
        }
    }

    /// Whether `h` is strictly increasing on `lo..=hi`.
    pub fn strictly_increasing_on(&self, lo: u64, hi: u64) -> Result<bool, FamilyError> {
        let h = (lo..=hi).map(|j| self.h_value(j)).collect::<Result<Vec<_>, _>>()?;
        Ok(h.windows(2).all(|w| w[0] < w[1]))
    }

    /// `H_n(z) = sum_j C(n, j) z^(h_j)`.
    pub fn h_poly(&self, n: u64) -> Result<SparsePoly, FamilyError> {
        let mut pascal = PascalTable::new();
        self.h_poly_with(n, &mut pascal)
    }

    fn h_poly_with(&self, n: u64, pascal: &mut PascalTable) -> Result<SparsePoly, FamilyError> {
        let row = pascal.row(n);
        let terms = row
            .into_iter()
            .enumerate()
            .map(|(j, c)| Ok(Term::new(self.h_value(j as u64)?, c)))
            .collect::<Result<Vec<_>, FamilyError>>()?;
        Ok(SparsePoly::from_terms(terms))
    }

    /// `Delta^r H_n = sum_k (-1)^k C(r, k) H_(n+r-k)`.
    pub fn forward_difference(&self, n: u64, r: u64) -> Result<SparsePoly, FamilyError> {
        let mut handle = FamilyHandle::new(self.clone());
        handle.forward_difference(n, r)
    }
}

impl fmt::Display for ExponentRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentRule::Binomial(m) => write!(f, "binom:{m}"),
            ExponentRule::Geometric => f.write_str("geom"),
            ExponentRule::Table(v) => {
                f.write_str("table:")?;
                for (i, h) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{h}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for ExponentRule {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::InvalidRule(s.to_string());
        if s == "geom" {
            return Ok(ExponentRule::Geometric);
        }
        if let Some(m) = s.strip_prefix("binom:") {
            let m: u32 = m.parse().map_err(|_| bad())?;
            return ExponentRule::binomial(m).map_err(|_| bad());
        }
        if let Some(list) = s.strip_prefix("table:") {
            let v = list
                .split(',')
                .map(|x| x.parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            return Ok(ExponentRule::Table(v));
        }
        Err(bad())
    }
}

impl TryFrom<String> for ExponentRule {
    type Error = FamilyError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ExponentRule> for String {
    fn from(r: ExponentRule) -> String {
        r.to_string()
    }
}

/// `f_{m,n}(z) = sum_j C(n, j) z^C(j, m)`.
///
/// # Panics
///
/// If `m == 0`, or if `C(n, m)` does not fit in a `u64` (first at `n = 68`).
pub fn f_poly(m: u32, n: u64) -> SparsePoly {
    assert!(m >= 1, "f_poly needs m >= 1");
    ExponentRule::Binomial(m)
        .h_poly(n)
        .expect("binomial exponent overflow")
}

/// `f_{m,n}(1) = 2^n` and `f_{m,n}(0) = sum_(j<m) C(n, j)`.
pub fn check_endpoint_values(m: u32, n: u64) -> IdentityReport {
    let report = IdentityReport::new("family.endpoint-values").param("m", m).param("n", n);
    if m == 0 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", m, "m >= 1"));
    }
    let f = f_poly(m, n);
    let two_n = BigInt::from(1) << n;
    if f.coefficient_sum() != two_n {
        return report.fail(Witness::new("f(1)", f.coefficient_sum(), two_n));
    }
    let f0: BigInt = (0..m as i64).map(|j| binomial(n, j)).sum();
    report.check((f.constant_term() != f0).then(|| Witness::new("f(0)", f.constant_term(), f0)))
}

/// `f_{m,m} = z + 2^m - 1` and
/// `f_{m,m+1} = z^(m+1) + (m+1) z + 2^(m+1) - m - 2`.
pub fn check_low_degree_forms(m: u32) -> IdentityReport {
    let report = IdentityReport::new("family.low-degree-forms").param("m", m);
    if m == 0 {
        return report.verdict(Status::NotApplicable, Witness::new("domain", m, "m >= 1"));
    }
    let mm = m as u64;
    let a = SparsePoly::from_terms([Term::new(1, 1), Term::new(0, (BigInt::from(1) << mm) - 1)]);
    if f_poly(m, mm) != a {
        return report.fail(Witness::new("n=m", f_poly(m, mm), a));
    }
    let b = SparsePoly::from_terms([
        Term::new(mm + 1, 1),
        Term::new(1, mm + 1),
        Term::new(0, (BigInt::from(1) << (mm + 1)) - mm - 2),
    ]);
    let f = f_poly(m, mm + 1);
    report.check((f != b).then(|| Witness::new("n=m+1", f, b)))
}

/// A rule with memoized `H_0, H_1, ...` and Pascal rows.
///
/// The cache is owned; share a handle across tasks by cloning it or by
/// filling it once with [`ensure`](Self::ensure) and handing out
/// [`upto`](Self::upto) slices.
#[derive(Debug, Clone)]
pub struct FamilyHandle {
    rule: ExponentRule,
    pascal: PascalTable,
    h: Vec<SparsePoly>,
}

impl FamilyHandle {
    pub fn new(rule: ExponentRule) -> Self {
        FamilyHandle {
            rule,
            pascal: PascalTable::new(),
            h: Vec::new(),
        }
    }

    pub fn rule(&self) -> &ExponentRule {
        &self.rule
    }

    pub fn pascal(&mut self) -> &mut PascalTable {
        &mut self.pascal
    }

    pub fn binomial(&mut self, n: u64, k: i64) -> BigInt {
        self.pascal.get(n, k)
    }

    /// Fills the cache through `H_n`.
    pub fn ensure(&mut self, n: u64) -> Result<(), FamilyError> {
        while (self.h.len() as u64) <= n {
            let next = self.rule.h_poly_with(self.h.len() as u64, &mut self.pascal)?;
            self.h.push(next);
        }
        Ok(())
    }

    pub fn h(&mut self, n: u64) -> Result<&SparsePoly, FamilyError> {
        self.ensure(n)?;
        Ok(&self.h[n as usize])
    }

    /// `[H_0, ..., H_n]`.
    pub fn upto(&mut self, n: u64) -> Result<&[SparsePoly], FamilyError> {
        self.ensure(n)?;
        Ok(&self.h[..=n as usize])
    }

    pub fn forward_difference(&mut self, n: u64, r: u64) -> Result<SparsePoly, FamilyError> {
        self.ensure(n + r)?;
        let mut acc = SparsePoly::zero();
        for k in 0..=r {
            let c = self.pascal.get(r, k as i64);
            let c = if k % 2 == 1 { -c } else { c };
            acc = &acc + &self.h[(n + r - k) as usize].scale(&c);
        }
        Ok(acc)
    }
}
