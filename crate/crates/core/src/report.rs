//! Verdicts shared by every checker and scanner.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// A proved statement holds on this instance.
    Pass,
    /// A proved statement fails on this instance: a bug somewhere.
    Fail,
    /// The hypothesis of the statement does not hold here.
    NotApplicable,
    /// The statement needs distinct exponents and they collide.
    AmbiguousSupport,
    /// An open conjecture is consistent with this instance.
    Evidence,
    /// An open conjecture fails on this instance.
    Refuted,
    /// Not computed, e.g. past a degree cap.
    Skipped,
}

impl Status {
    /// `true` for [`Status::Pass`] and [`Status::Evidence`].
    pub fn is_pass(self) -> bool {
        matches!(self, Status::Pass | Status::Evidence)
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotApplicable => "not-applicable",
            Status::AmbiguousSupport => "ambiguous-support",
            Status::Evidence => "evidence",
            Status::Refuted => "CONJECTURE-REFUTED",
            Status::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where a check failed and the two sides that disagree there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(location: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness {
            location: location.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {} vs {}", self.location, self.lhs, self.rhs)
    }
}

/// Outcome of one identity check. `pass` is true exactly when `witness`
/// is absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    pub status: Status,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub info: Option<String>,
}

impl IdentityReport {
    pub fn new(id: impl Into<String>) -> Self {
        IdentityReport {
            id: id.into(),
            params: BTreeMap::new(),
            pass: true,
            status: Status::Pass,
            witness: None,
            info: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_info(mut self, info: impl Into<String>) -> Self {
        self.info = Some(info.into());
        self
    }

    /// Sets a non-passing status. [`Status::Pass`] and [`Status::Evidence`]
    /// carry no witness and should use [`evidence`](Self::evidence) or the
    /// default instead.
    pub fn verdict(mut self, status: Status, witness: Witness) -> Self {
        debug_assert!(!status.is_pass());
        self.status = status;
        self.pass = false;
        self.witness = Some(witness);
        self
    }

    pub fn fail(self, witness: Witness) -> Self {
        self.verdict(Status::Fail, witness)
    }

    pub fn evidence(mut self) -> Self {
        self.status = Status::Evidence;
        self
    }

    /// Fails with `witness` when present, passes otherwise.
    pub fn check(self, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => self.fail(w),
            None => self,
        }
    }

    /// `key=value` pairs in key order, space separated.
    pub fn params_string(&self) -> String {
        let mut out = String::new();
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(k);
            out.push('=');
            out.push_str(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_no_witness() {
        let r = IdentityReport::new("x").param("n", 3);
        assert!(r.pass && r.witness.is_none());
        let r = r.fail(Witness::new("t^2", "1", "2"));
        assert!(!r.pass && r.witness.is_some());
        assert_eq!(r.status, Status::Fail);
        let r = IdentityReport::new("y").verdict(Status::NotApplicable, Witness::new("h_2", 1, 0));
        assert!(!r.pass);
        assert!(IdentityReport::new("z").evidence().pass);
    }

    #[test]
    fn params_are_ordered() {
        let r = IdentityReport::new("x").param("n", 3).param("m", 2);
        assert_eq!(r.params_string(), "m=2 n=3");
    }
}
