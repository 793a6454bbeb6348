use std::fmt;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{fmt_rational, parse_rational};

/// A rational number or `+∞`: the value set of every valuation here.
///
/// Ordered with `+∞` on top; addition is absorbing at `+∞`, so `(min, +)` is
/// a semiring with zero `+∞` and one `0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    Finite(BigRational),
    Infinity,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(BigRational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Finite(q) => Some(q),
            ExtRat::Infinity => None,
        }
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    /// Parses `"3/2"`, `"-1"`, `"inf"`, `"+inf"` or `"∞"`.
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "+∞" | "infinity" => Some(ExtRat::Infinity),
            other => parse_rational(other).map(ExtRat::Finite),
        }
    }
}

impl From<BigRational> for ExtRat {
    fn from(q: BigRational) -> Self {
        ExtRat::Finite(q)
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(q) => f.write_str(&fmt_rational(q)),
            ExtRat::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ExtRat::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad value {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn order_and_semiring_laws() {
        let a = ExtRat::Finite(rat(1, 2));
        let b = ExtRat::Finite(rat(-3, 1));
        assert!(b < a && a < ExtRat::Infinity);
        assert_eq!(a.clone() + ExtRat::Infinity, ExtRat::Infinity);
        assert_eq!(a.clone() + ExtRat::zero(), a);
        assert_eq!(a.clone().min(ExtRat::Infinity), a);
        assert_eq!(ExtRat::parse("inf"), Some(ExtRat::Infinity));
        assert_eq!(ExtRat::parse("1/2"), Some(a.clone()));
        assert_eq!(a.to_string(), "1/2");
    }
}
