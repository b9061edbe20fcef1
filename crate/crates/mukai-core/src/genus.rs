//! The genus of the polarization.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Genus `g` of the ample class `H`, so `H² = 2g − 2`.
///
/// Serializes as a bare integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Genus(i64);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenusError {
    #[error("genus must be at least 2, got {0}")]
    TooSmall(i64),
}

impl Genus {
    pub fn new(g: i64) -> Result<Self, GenusError> {
        if g < 2 {
            Err(GenusError::TooSmall(g))
        } else {
            Ok(Genus(g))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }

    /// g ≡ 2 (mod 4), the genera carrying the Hilbert-scheme specialization
    /// with n = (g + 2)/4.
    pub fn is_two_mod_four(self) -> bool {
        self.0 % 4 == 2
    }

    /// g/2, defined only for even genus.
    pub fn half(self) -> Option<i64> {
        self.is_even().then_some(self.0 / 2)
    }

    /// H² = 2g − 2.
    pub fn polarization_square(self) -> i64 {
        2 * self.0 - 2
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Genus {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_i64(self.0)
    }
}

impl<'de> Deserialize<'de> for Genus {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let g = i64::deserialize(de)?;
        Genus::new(g).map_err(serde::de::Error::custom)
    }
}
