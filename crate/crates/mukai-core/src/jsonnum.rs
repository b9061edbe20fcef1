//! Serde adapters that keep arbitrary-precision values as plain JSON numbers.
//!
//! `num-bigint`'s own serde implementation encodes a `BigInt` as a sign tag
//! plus digit array, which breaks the documented `{"r": 7}` wire form. These
//! adapters round-trip through `serde_json::Number` instead; the crate
//! enables serde_json's `arbitrary_precision` feature so no magnitude is
//! ever silently truncated.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `#[serde(with = "jsonnum::bigint")]` for `BigInt` fields.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&value.to_string()).map_err(S::Error::custom)?;
        n.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(de)?;
        BigInt::from_str(&n.to_string())
            .map_err(|_| D::Error::custom(format!("expected an integer, got {n}")))
    }
}

/// Borrowing wrapper for serializing a `BigInt` inside sequences.
pub struct BigIntRepr<'a>(pub &'a BigInt);

impl Serialize for BigIntRepr<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        bigint::serialize(self.0, ser)
    }
}

/// Owned wrapper for deserializing a `BigInt` inside sequences.
pub struct BigIntOwned(pub BigInt);

impl<'de> Deserialize<'de> for BigIntOwned {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        bigint::deserialize(de).map(BigIntOwned)
    }
}

/// `#[serde(with = "jsonnum::big_ratio")]` for `BigRational` fields,
/// encoded as `{"num": .., "den": ..}` with the denominator positive.
pub mod big_ratio {
    use num_rational::BigRational;

    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Repr {
        #[serde(with = "super::bigint")]
        num: BigInt,
        #[serde(with = "super::bigint")]
        den: BigInt,
    }

    pub fn serialize<S: Serializer>(value: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: value.numer().clone(),
            den: value.denom().clone(),
        }
        .serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigRational, D::Error> {
        let repr = Repr::deserialize(de)?;
        if repr.den == BigInt::from(0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(BigRational::new(repr.num, repr.den))
    }
}
