//! Constructors and enumerators for the involution instances on moduli of
//! sheaves: the rank-(2k+1) family on genus-(4g₀+2) surfaces, the
//! Markman–O'Grady range `r² ≤ g < (r+1)²` on `M(r, H, r)`, and the
//! Hilbert-scheme specialization `n = (g+2)/4`.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genus::Genus;
use crate::vector::MukaiVector;

/// One member of the rank-(2k+1) involution family:
/// `g = 4g₀ + 2`, `v = (2k+1, k+1, g₀(2k+3) + k + 1)`, `dim M(v) = 2n`.
///
/// Derived identities carried along: `v² = 2(g₀ − k(k+1))`,
/// `n − 1 = g₀ − k(k+1)`, `δ = gcd(v₀, v₂)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub g0: i64,
    pub k: i64,
    pub g: Genus,
    pub v: MukaiVector,
    pub n: i64,
    #[serde(with = "crate::jsonnum::bigint")]
    pub delta: BigInt,
    #[serde(with = "crate::jsonnum::bigint")]
    pub v_squared: BigInt,
    pub admissible: bool,
}

impl FamilyInstance {
    /// Dimension 2 means the moduli space is itself a K3 surface rather
    /// than a higher-dimensional IHS manifold.
    pub fn is_surface_case(&self) -> bool {
        self.n == 1
    }
}

/// A Markman–O'Grady instance on `M(r, H, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkmanInstance {
    pub g: Genus,
    pub r: i64,
    pub v: MukaiVector,
    pub dim: i64,
    /// True exactly on `r² ≤ g < (r+1)²`, where the involution is
    /// biregular; outside that window (larger g) it is only birational.
    pub regular: bool,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family parameters out of range: need g0 >= 1 and k >= 0, got g0 = {g0}, k = {k}")]
    OutOfRange { g0: i64, k: i64 },
    #[error("not admissible: g0 = {g0} < k(k+1) = {required} at k = {k} (v² would be negative)")]
    NotAdmissible { g0: i64, k: i64, required: i64 },
    #[error("genus {g} is not 2 mod 4, no Hilbert-scheme specialization")]
    GenusNotTwoModFour { g: i64 },
    #[error("family parameters overflow the machine range: g0 = {g0}, k = {k}")]
    ParameterOverflow { g0: i64, k: i64 },
}

/// Builds the family instance at `(g₀, k)`.
///
/// Admissibility is the threshold `g₀ ≥ k(k+1)`, equivalently `v² ≥ 0`,
/// equivalently `g ≥ (2k+1)² + 1`; below it the construction is rejected.
/// Instances on the boundary (`v² = 0`, dim 2) are kept and flagged via
/// [`FamilyInstance::is_surface_case`].
pub fn build_family_instance(g0: i64, k: i64) -> Result<FamilyInstance, FamilyError> {
    if g0 < 1 || k < 0 {
        return Err(FamilyError::OutOfRange { g0, k });
    }
    let required = k
        .checked_mul(k + 1)
        .ok_or(FamilyError::ParameterOverflow { g0, k })?;
    if g0 < required {
        return Err(FamilyError::NotAdmissible { g0, k, required });
    }
    let g_value = g0
        .checked_mul(4)
        .and_then(|x| x.checked_add(2))
        .ok_or(FamilyError::ParameterOverflow { g0, k })?;
    let g = Genus::new(g_value).expect("4*g0 + 2 >= 6");

    let big_g0 = BigInt::from(g0);
    let big_k = BigInt::from(k);
    let v = MukaiVector {
        r: BigInt::from(2 * k + 1),
        c: &big_k + 1,
        s: &big_g0 * (BigInt::from(2) * &big_k + 3) + &big_k + 1,
    };

    let v_squared = v.square(g);
    debug_assert_eq!(v_squared, BigInt::from(2 * (g0 - required)));

    let n = g0 - required + 1;
    debug_assert_eq!(v.half_dim(g), Ok(BigInt::from(n)));

    let delta = v.r.gcd(&v.s);

    Ok(FamilyInstance {
        g0,
        k,
        g,
        v,
        n,
        delta,
        v_squared,
        admissible: true,
    })
}

/// All admissible instances with `1 ≤ g₀ ≤ g0_max`, `0 ≤ k ≤ k_max`,
/// sorted by `(g, k)`.
pub fn enumerate_families(g0_max: i64, k_max: i64) -> Vec<FamilyInstance> {
    let mut out = Vec::new();
    for g0 in 1..=g0_max {
        for k in 0..=k_max {
            match build_family_instance(g0, k) {
                Ok(inst) => out.push(inst),
                Err(FamilyError::NotAdmissible { .. }) => {}
                Err(_) => unreachable!("in-range parameters"),
            }
        }
    }
    out.sort_by_key(|inst| (inst.g.get(), inst.k));
    out
}

/// `n = (g + 2)/4` for `g ≡ 2 (mod 4)`: the number of points of the
/// Hilbert scheme carried by the k = 0 member of the family.
pub fn hilbert_scheme_n(g: Genus) -> Result<i64, FamilyError> {
    if !g.is_two_mod_four() {
        return Err(FamilyError::GenusNotTwoModFour { g: g.get() });
    }
    Ok((g.get() + 2) / 4)
}

/// All Markman–O'Grady instances `(r, H, r)` at this genus with
/// nonnegative moduli dimension `2g − 2r²`, flagged regular exactly on
/// `r² ≤ g < (r+1)²`.
pub fn markman_instances(g: Genus) -> Vec<MarkmanInstance> {
    let gv = g.get();
    let mut out = Vec::new();
    let mut r: i64 = 1;
    while (r as i128) * (r as i128) <= gv as i128 {
        let dim = 2 * gv - 2 * r * r;
        let regular = ((r + 1) as i128) * ((r + 1) as i128) > gv as i128;
        out.push(MarkmanInstance {
            g,
            r,
            v: MukaiVector::new(r, 1, r),
            dim,
            regular,
        });
        r += 1;
    }
    out
}
