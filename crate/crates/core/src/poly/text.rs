//! Canonical text form: ascending exponents, explicit signs between terms,
//! the constant bare and every other term as `c*z^e`, e.g.
//! `4 + 3*z^1 + 1*z^3` or `-2 - 1*z^5`. The zero polynomial is `0`.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{SparsePoly, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid polynomial text at byte {offset}: {reason}")]
pub struct ParsePolyError {
    pub offset: usize,
    pub reason: String,
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms().iter().enumerate() {
            let mag = t.coeff.abs();
            match (i, t.coeff.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if t.exp == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*z^{}", t.exp)?;
            }
        }
        Ok(())
    }
}

/// Serialized as the canonical text form.
impl serde::Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for SparsePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, reason: &str) -> ParsePolyError {
        ParsePolyError {
            offset: self.pos,
            reason: reason.to_string(),
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParsePolyError> {
        let rest = &self.s[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected digits"));
        }
        if len > 1 && rest.starts_with('0') {
            return Err(self.err("leading zero"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }
}

impl FromStr for SparsePoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "0" {
            return Ok(SparsePoly::zero());
        }
        let mut cur = Cursor { s, pos: 0 };
        let mut terms = alloc::vec::Vec::new();
        let mut negative = cur.eat("-");
        loop {
            let start = cur.pos;
            let mag: BigInt = cur.digits()?.parse().expect("ascii digits");
            if mag.is_zero() {
                cur.pos = start;
                return Err(cur.err("zero coefficient"));
            }
            let exp = if cur.eat("*z^") {
                let at = cur.pos;
                let e: u64 = cur
                    .digits()?
                    .parse()
                    .map_err(|_| ParsePolyError {
                        offset: at,
                        reason: "exponent out of range".to_string(),
                    })?;
                if e == 0 {
                    cur.pos = at;
                    return Err(cur.err("exponent 0 must be written as a bare constant"));
                }
                e
            } else {
                0
            };
            if let Some(prev) = terms.last().map(|t: &Term| t.exp) {
                if exp <= prev {
                    cur.pos = start;
                    return Err(cur.err("exponents must be strictly increasing"));
                }
            }
            terms.push(Term {
                exp,
                coeff: if negative { -mag } else { mag },
            });
            if cur.pos == s.len() {
                break;
            }
            negative = if cur.eat(" + ") {
                false
            } else if cur.eat(" - ") {
                true
            } else {
                return Err(cur.err("expected ' + ' or ' - '"));
            };
        }
        Ok(SparsePoly::from_sorted_unchecked(terms))
    }
}
