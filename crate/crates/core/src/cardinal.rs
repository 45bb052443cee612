//! Neighbour counts that may be infinite.
//!
//! Checkers compare condition-inclusive neighbour totals, and a condition
//! may declare infinitely many phantom neighbours. `ExtendedCardinal` keeps
//! that single extra value explicit instead of smuggling it through
//! sentinels.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite count or the single infinite value.
///
/// The derived ordering places every `Fin` below `Infinite` and orders
/// finite values numerically. Addition is commutative and absorbed by
/// `Infinite`; finite overflow saturates at `u64::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedCardinal {
    Fin(u64),
    Infinite,
}

pub use ExtendedCardinal::{Fin, Infinite};

impl ExtendedCardinal {
    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    /// The finite value, if there is one.
    pub fn finite(self) -> Option<u64> {
        match self {
            Fin(n) => Some(n),
            Infinite => None,
        }
    }
}

impl Add for ExtendedCardinal {
    type Output = ExtendedCardinal;

    fn add(self, rhs: ExtendedCardinal) -> ExtendedCardinal {
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a.saturating_add(b)),
            _ => Infinite,
        }
    }
}

impl Add<u64> for ExtendedCardinal {
    type Output = ExtendedCardinal;

    fn add(self, rhs: u64) -> ExtendedCardinal {
        self + Fin(rhs)
    }
}

impl std::iter::Sum for ExtendedCardinal {
    fn sum<I: Iterator<Item = ExtendedCardinal>>(iter: I) -> ExtendedCardinal {
        iter.fold(Fin(0), Add::add)
    }
}

impl From<u64> for ExtendedCardinal {
    fn from(n: u64) -> Self {
        Fin(n)
    }
}

impl fmt::Display for ExtendedCardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(n) => write!(f, "{n}"),
            Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedCardinal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "inf" {
            return Ok(Infinite);
        }
        s.parse::<u64>()
            .map(Fin)
            .map_err(|_| format!("expected a non-negative integer or \"inf\", got `{s}`"))
    }
}

// JSON form: a plain non-negative integer, or the string "inf".
impl Serialize for ExtendedCardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Fin(n) => serializer.serialize_u64(*n),
            Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedCardinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CardinalVisitor;

        impl Visitor<'_> for CardinalVisitor {
            type Value = ExtendedCardinal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or the string \"inf\"")
            }

            fn visit_u64<E>(self, v: u64) -> Result<Self::Value, E> {
                Ok(Fin(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                u64::try_from(v)
                    .map(Fin)
                    .map_err(|_| E::custom("counts cannot be negative"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(CardinalVisitor)
    }
}
