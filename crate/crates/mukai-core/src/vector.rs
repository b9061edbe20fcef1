//! Mukai vectors and the Mukai pairing.
//!
//! A vector `(r, c, s)` stands for `(r, cH, s)` in `H⁰ ⊕ ℤH ⊕ H⁴`. With
//! `H² = 2g − 2` the pairing is
//!
//! ```text
//! v · w = 2(g − 1) c_v c_w − r_v s_w − r_w s_v,
//! ```
//!
//! so that `(1,0,1)² = −2` and, for even g, `(2,1,g/2)² = −2`: the two
//! spherical classes driving everything else in this crate.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genus::Genus;

/// An element of the rank-3 algebraic Mukai lattice, components in ℤ.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MukaiVector {
    #[serde(with = "crate::jsonnum::bigint")]
    pub r: BigInt,
    #[serde(with = "crate::jsonnum::bigint")]
    pub c: BigInt,
    #[serde(with = "crate::jsonnum::bigint")]
    pub s: BigInt,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("moduli dimension {dim} is below 2, no half-dimension n")]
    DimensionTooSmall { dim: BigInt },
    #[error("moduli dimension {dim} is odd")]
    OddDimension { dim: BigInt },
}

impl MukaiVector {
    pub fn new(r: impl Into<BigInt>, c: impl Into<BigInt>, s: impl Into<BigInt>) -> Self {
        MukaiVector {
            r: r.into(),
            c: c.into(),
            s: s.into(),
        }
    }

    pub fn zero() -> Self {
        MukaiVector::new(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.c.is_zero() && self.s.is_zero()
    }

    /// Mukai pairing `v · w = 2(g−1) c_v c_w − r_v s_w − r_w s_v`.
    pub fn pairing(&self, other: &MukaiVector, g: Genus) -> BigInt {
        let two_g_minus_2 = BigInt::from(g.polarization_square());
        two_g_minus_2 * &self.c * &other.c - &self.r * &other.s - &other.r * &self.s
    }

    /// `v² = 2(g−1)c² − 2rs`.
    pub fn square(&self, g: Genus) -> BigInt {
        self.pairing(self, g)
    }

    /// Expected dimension `v² + 2` of the moduli space of sheaves with this
    /// Mukai vector. Negative values mean empty/rigid territory; the caller
    /// interprets 2 as the K3 range and ≥ 4 as the IHS-manifold range.
    pub fn moduli_dim(&self, g: Genus) -> BigInt {
        self.square(g) + 2
    }

    /// The `n` with `dim M(v) = 2n`, i.e. `n − 1 = (g−1)c² − rs`.
    ///
    /// Fails when the dimension is below 2. The value is recomputed from
    /// the dimension as a consistency check.
    pub fn half_dim(&self, g: Genus) -> Result<BigInt, LatticeError> {
        let dim = self.moduli_dim(g);
        if dim < BigInt::from(2) {
            return Err(LatticeError::DimensionTooSmall { dim });
        }
        if dim.is_odd() {
            return Err(LatticeError::OddDimension { dim });
        }
        let n = &dim / 2;
        let direct =
            BigInt::from(g.get() - 1) * &self.c * &self.c - &self.r * &self.s + BigInt::one();
        debug_assert_eq!(n, direct);
        Ok(n)
    }

    /// gcd of the three components (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.r.gcd(&self.c).gcd(&self.s)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, a: &BigInt) -> MukaiVector {
        MukaiVector {
            r: a * &self.r,
            c: a * &self.c,
            s: a * &self.s,
        }
    }

    /// Components as a column for matrix actions, in (r, c, s) order.
    pub fn as_column(&self) -> [BigInt; 3] {
        [self.r.clone(), self.c.clone(), self.s.clone()]
    }
}

impl Add for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r + &rhs.r,
            c: &self.c + &rhs.c,
            s: &self.s + &rhs.s,
        }
    }
}

impl Sub for &MukaiVector {
    type Output = MukaiVector;
    fn sub(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r - &rhs.r,
            c: &self.c - &rhs.c,
            s: &self.s - &rhs.s,
        }
    }
}

impl Neg for &MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector {
            r: -&self.r,
            c: -&self.c,
            s: -&self.s,
        }
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.c, self.s)
    }
}

impl fmt::Debug for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MukaiVector({}, {}, {})", self.r, self.c, self.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> Genus {
        Genus::new(v).unwrap()
    }

    #[test]
    fn pairing_matches_known_evaluations() {
        // spherical squares
        let s2 = MukaiVector::new(2, 1, 5);
        assert_eq!(s2.pairing(&s2, g(10)), BigInt::from(-2));
        let s1 = MukaiVector::new(1, 0, 1);
        for gv in [2, 3, 10, 97] {
            assert_eq!(s1.pairing(&s1, g(gv)), BigInt::from(-2));
        }
        // s · v = −(2k+1) with k = 0
        let v = MukaiVector::new(1, 1, 7);
        assert_eq!(s2.pairing(&v, g(10)), BigInt::from(-1));
        // unit-basis evaluation
        let e_s = MukaiVector::new(0, 0, 1);
        let e_r = MukaiVector::new(1, 0, 0);
        assert_eq!(e_s.pairing(&e_r, g(5)), BigInt::from(-1));
    }

    #[test]
    fn square_norms() {
        assert_eq!(
            MukaiVector::new(1, 1, 7).square(g(10)),
            BigInt::from(4) // 2·9 − 2·7
        );
        assert_eq!(MukaiVector::zero().square(g(7)), BigInt::from(0));
        assert_eq!(MukaiVector::new(1, 1, 1).square(g(3)), BigInt::from(2));
    }

    #[test]
    fn moduli_dimensions() {
        assert_eq!(MukaiVector::new(1, 1, 1).moduli_dim(g(3)), BigInt::from(4));
        assert_eq!(MukaiVector::new(1, 1, 7).moduli_dim(g(10)), BigInt::from(6));
        // lower Markman bound g = r²: dim = 2g − 2r² = 0
        assert_eq!(MukaiVector::new(2, 1, 2).moduli_dim(g(4)), BigInt::from(0));
    }

    #[test]
    fn half_dim_values_and_errors() {
        assert_eq!(
            MukaiVector::new(1, 1, 7).half_dim(g(10)),
            Ok(BigInt::from(3))
        );
        assert_eq!(
            MukaiVector::new(1, 1, 10).half_dim(g(14)),
            Ok(BigInt::from(4))
        );
        assert_eq!(
            MukaiVector::new(3, 2, 27).half_dim(g(22)),
            Ok(BigInt::from(4))
        );
        assert!(matches!(
            MukaiVector::new(2, 1, 2).half_dim(g(4)),
            Err(LatticeError::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn primitivity_and_content() {
        assert!(MukaiVector::new(1, 1, 7).is_primitive());
        assert!(!MukaiVector::new(2, 4, 6).is_primitive());
        assert_eq!(MukaiVector::new(2, 4, 6).content(), BigInt::from(2));
        assert!(!MukaiVector::zero().is_primitive());
    }

    #[test]
    fn json_form() {
        let v = MukaiVector::new(1, 0, -7);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"r":1,"c":0,"s":-7}"#);
        assert_eq!(serde_json::from_str::<MukaiVector>(&json).unwrap(), v);
    }
}
