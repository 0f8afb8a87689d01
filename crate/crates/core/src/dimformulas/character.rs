use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, pow_mod};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharKind {
    Trivial,
    Legendre,
}

impl fmt::Display for CharKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharKind::Trivial => "trivial",
            CharKind::Legendre => "legendre",
        })
    }
}

impl FromStr for CharKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" | "1" => Ok(CharKind::Trivial),
            "legendre" | "quadratic" => Ok(CharKind::Legendre),
            other => Err(Error::UnsupportedCharacter(other.to_string())),
        }
    }
}

/// Quadratic Dirichlet character modulo N: either the trivial character or
/// the Legendre symbol (./N) for an odd prime N, or the nontrivial character
/// mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadChar {
    modulus: u64,
    kind: CharKind,
}

impl QuadChar {
    pub fn trivial(modulus: u64) -> Self {
        assert!(modulus >= 1);
        QuadChar { modulus, kind: CharKind::Trivial }
    }

    pub fn legendre(modulus: u64) -> Result<Self> {
        if modulus == 4 || (modulus > 2 && is_prime(modulus)) {
            Ok(QuadChar { modulus, kind: CharKind::Legendre })
        } else {
            Err(Error::UnsupportedCharacter(format!("no quadratic character (./{modulus}) supported")))
        }
    }

    pub fn new(modulus: u64, kind: CharKind) -> Result<Self> {
        match kind {
            CharKind::Trivial if modulus >= 1 => Ok(Self::trivial(modulus)),
            CharKind::Trivial => Err(Error::UnsupportedLevel(modulus)),
            CharKind::Legendre => Self::legendre(modulus),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn kind(&self) -> CharKind {
        self.kind
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == CharKind::Trivial
    }

    /// Conductor: 1 for the trivial character, N otherwise.
    pub fn conductor(&self) -> u64 {
        match self.kind {
            CharKind::Trivial => 1,
            CharKind::Legendre => self.modulus,
        }
    }

    /// chi(a) in {-1, 0, 1}.
    pub fn eval(&self, a: i64) -> i64 {
        let n = self.modulus;
        let r = a.rem_euclid(n as i64) as u64;
        if gcd(r, n) != 1 {
            return 0;
        }
        match self.kind {
            CharKind::Trivial => 1,
            CharKind::Legendre if n == 4 => {
                if r == 1 {
                    1
                } else {
                    -1
                }
            }
            CharKind::Legendre => {
                if pow_mod(r, (n - 1) / 2, n) == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// chi(-1)
    pub fn parity(&self) -> i64 {
        self.eval(-1)
    }
}

impl fmt::Display for QuadChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CharKind::Trivial => write!(f, "trivial"),
            CharKind::Legendre => write!(f, "(./{})", self.modulus),
        }
    }
}

/// The space S_k(Gamma_0(N), chi).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceLabel {
    pub level: u64,
    pub weight: u32,
    pub chi: QuadChar,
}

impl SpaceLabel {
    pub fn new(level: u64, weight: u32, chi: QuadChar) -> Result<Self> {
        if weight < 2 {
            return Err(Error::WeightTooSmall(weight));
        }
        if chi.modulus() != level {
            return Err(Error::UnsupportedCharacter(format!(
                "character modulus {} differs from level {level}",
                chi.modulus()
            )));
        }
        Ok(SpaceLabel { level, weight, chi })
    }

    pub fn trivial(level: u64, weight: u32) -> Result<Self> {
        Self::new(level, weight, QuadChar::trivial(level))
    }

    pub fn with_kind(level: u64, weight: u32, kind: CharKind) -> Result<Self> {
        Self::new(level, weight, QuadChar::new(level, kind)?)
    }

    /// (-1)^k == chi(-1); otherwise the space is zero.
    pub fn parity_ok(&self) -> bool {
        let sign = if self.weight.is_multiple_of(2) { 1 } else { -1 };
        sign == self.chi.parity()
    }

    pub fn with_weight(&self, weight: u32) -> Result<Self> {
        Self::new(self.level, weight, self.chi)
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}(Gamma0({}), {})", self.weight, self.level, self.chi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_values() {
        let c = QuadChar::legendre(7).unwrap();
        let squares = [1, 2, 4];
        for a in 1..7 {
            assert_eq!(c.eval(a), if squares.contains(&a) { 1 } else { -1 });
        }
        assert_eq!(c.eval(14), 0);
        assert_eq!(c.parity(), -1);
        assert_eq!(QuadChar::legendre(13).unwrap().parity(), 1);
        let c4 = QuadChar::legendre(4).unwrap();
        assert_eq!((c4.eval(1), c4.eval(3), c4.eval(2), c4.eval(-1)), (1, -1, 0, -1));
        assert!(QuadChar::legendre(15).is_err());
        assert!(QuadChar::legendre(2).is_err());
    }

    #[test]
    fn labels() {
        assert!(matches!(SpaceLabel::trivial(11, 1), Err(Error::WeightTooSmall(1))));
        let l = SpaceLabel::with_kind(7, 3, CharKind::Legendre).unwrap();
        assert!(l.parity_ok());
        assert!(!l.with_weight(4).unwrap().parity_ok());
        assert_eq!("legendre".parse::<CharKind>().unwrap(), CharKind::Legendre);
    }
}
