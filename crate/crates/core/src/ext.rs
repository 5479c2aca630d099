//! Integers extended by `+∞` and `-∞`.
//!
//! Arithmetic absorbs infinities: `x + ∞ = ∞`, `x - ∞ = -∞` for finite `x`.
//! Combining opposite infinities (`∞ - ∞`) has no value and is reported as
//! [`Error::Undefined`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedInt {
    NegInf,
    Finite(i64),
    PosInf,
}

pub use ExtendedInt::{Finite, NegInf, PosInf};

impl ExtendedInt {
    pub const ZERO: ExtendedInt = Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn neg(self) -> ExtendedInt {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Finite(v) => Finite(-v),
        }
    }

    pub fn checked_add(self, rhs: ExtendedInt) -> Result<ExtendedInt> {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::Undefined("∞ - ∞")),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    pub fn checked_sub(self, rhs: ExtendedInt) -> Result<ExtendedInt> {
        self.checked_add(rhs.neg())
    }

    /// Adds a finite offset; never fails.
    pub fn offset(self, by: i64) -> ExtendedInt {
        match self {
            Finite(v) => Finite(v + by),
            inf => inf,
        }
    }
}

impl From<i64> for ExtendedInt {
    fn from(v: i64) -> Self {
        Finite(v)
    }
}

impl PartialOrd for ExtendedInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedInt {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(e: &ExtendedInt) -> (i8, i64) {
            match *e {
                NegInf => (-1, 0),
                Finite(v) => (0, v),
                PosInf => (1, 0),
            }
        }
        rank(self).cmp(&rank(other))
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            PosInf => write!(f, "inf"),
            Finite(v) => write!(f, "{v}"),
        }
    }
}

impl std::str::FromStr for ExtendedInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "+∞" => Ok(PosInf),
            "-inf" | "-∞" => Ok(NegInf),
            other => other
                .parse::<i64>()
                .map(Finite)
                .map_err(|_| Error::malformed(format!("not an extended integer: {other:?}"))),
        }
    }
}

// Finite values are JSON numbers, infinities the strings "inf" / "-inf".
impl Serialize for ExtendedInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Finite(v) => s.serialize_i64(*v),
            NegInf => s.serialize_str("-inf"),
            PosInf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Finite(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_places_infinities_at_the_ends() {
        let mut v = vec![Finite(3), PosInf, Finite(-7), NegInf, Finite(0)];
        v.sort();
        assert_eq!(v, vec![NegInf, Finite(-7), Finite(0), Finite(3), PosInf]);
        assert!(NegInf <= NegInf);
    }

    #[test]
    fn absorption_rules() {
        assert_eq!(Finite(2).checked_add(PosInf), Ok(PosInf));
        assert_eq!(Finite(2).checked_sub(PosInf), Ok(NegInf));
        assert_eq!(Finite(2).checked_sub(NegInf), Ok(PosInf));
        assert_eq!(PosInf.checked_add(PosInf), Ok(PosInf));
        assert!(PosInf.checked_sub(PosInf).is_err());
        assert!(NegInf.checked_add(PosInf).is_err());
    }

    #[test]
    fn json_forms() {
        let v = vec![Finite(-1), PosInf, NegInf];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[-1,"inf","-inf"]"#);
        let back: Vec<ExtendedInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
