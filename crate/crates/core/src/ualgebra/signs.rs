use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::poly::Ideal;
use crate::error::{invalid, Error, Result};

/// A vector of signs `±1`, one per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return invalid(format!("sign entries must be +1 or -1, got {s}"));
        }
        Ok(SignPattern(signs))
    }

    pub fn positive(len: usize) -> Self {
        SignPattern(vec![1; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    /// All `2^len` patterns, ordered by the binary expansion of the index
    /// (bit `k` set means coordinate `k` is negative).
    pub fn all(len: usize) -> Vec<SignPattern> {
        (0u64..1 << len).map(|m| SignPattern((0..len).map(|k| if m >> k & 1 == 1 { -1 } else { 1 }).collect())).collect()
    }
}

impl TryFrom<Vec<i8>> for SignPattern {
    type Error = Error;
    fn try_from(v: Vec<i8>) -> Result<Self> {
        SignPattern::new(v)
    }
}

impl From<SignPattern> for Vec<i8> {
    fn from(s: SignPattern) -> Self {
        s.0
    }
}

/// Accepts `+,-,+`, `1,-1,1` and the parenthesised forms.
impl FromStr for SignPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut out = Vec::new();
        for tok in body.split(',') {
            out.push(match tok.trim() {
                "+" | "1" | "+1" => 1,
                "-" | "-1" | "−1" | "−" => -1,
                other => return invalid(format!("bad sign {other:?} in pattern {s:?}")),
            });
        }
        SignPattern::new(out)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|&s| if s > 0 { "1" } else { "-1" }).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `ε_τ`: substitutes `u_i ↦ τ_i u_i` in every generator.
pub fn sign_twist(ideal: &Ideal, tau: &SignPattern) -> Result<Ideal> {
    if tau.len() != ideal.nvars() {
        return invalid(format!("sign pattern has {} entries for {} variables", tau.len(), ideal.nvars()));
    }
    Ok(ideal.twist(tau.as_slice()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ualgebra::binary::ideal_c;

    #[test]
    fn parse_and_display() {
        let a: SignPattern = "+,+,+,+,-,+".parse().unwrap();
        let b: SignPattern = "(1,1,1,1,-1,1)".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(1,1,1,1,-1,1)");
        assert!("+,0".parse::<SignPattern>().is_err());
        assert_eq!(SignPattern::all(3).len(), 8);
    }

    #[test]
    fn twist_is_involutive() {
        let i = ideal_c(3).unwrap();
        let tau: SignPattern = "1,1,1,1,-1,1".parse().unwrap();
        let t = sign_twist(&i, &tau).unwrap();
        assert_ne!(t, i);
        assert_eq!(sign_twist(&t, &tau).unwrap(), i);
        assert_eq!(sign_twist(&i, &SignPattern::positive(6)).unwrap(), i);
        // u_{1,-2} occurs only in R_{1,3} (to the first power) among the first four
        assert_eq!(t.gens[3].coeff(&[0, 1, 0, 0, 1, 1]), crate::linalg::q(-1));
    }
}
