//! Exact integer arithmetic on the rank-3 algebraic Mukai lattice
//! H⁰ ⊕ ℤH ⊕ H⁴ of a polarized K3 surface with Picard group ℤ·H.
//!
//! The crate models, without any floating point:
//!
//! * the Mukai pairing, square norms and moduli-space dimensions
//!   ([`MukaiVector`], [`Genus`]);
//! * generators of derived-equivalence actions (dualize, twist by O(dH),
//!   shift, spherical reflection) as integer isometries, their word
//!   composition, and the induced involutions on Mukai vectors
//!   ([`actions`]);
//! * the rank-(2k+1) involution family on moduli of sheaves, the
//!   Markman–O'Grady range and the Hilbert-scheme specialization
//!   ([`families`]);
//! * Picard-lattice data of the moduli space: Gram matrices,
//!   discriminants, orthogonal complements, the closed-form reflection
//!   identity and the invariant-lattice classification ([`picard`]);
//! * brute-force verifiers for the slope-interval arguments and a Pell
//!   equation solver ([`diophantine`]).
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything here is safe to share across threads.

// Error variants carry the offending vectors for diagnostics; the error
// paths are cold, so the payload size is fine.
#![allow(clippy::result_large_err)]

pub mod actions;
pub mod diophantine;
pub mod families;
pub mod genus;
pub mod jsonnum;
pub mod matrix;
pub mod picard;
pub mod vector;

pub use actions::{
    apply_generator, apply_word, compile_word, derive_admissible_configs, normalize_twist,
    ActionError, EquivalenceWord, FixednessReport, Generator, MukaiInvolution, NormalizedTriple,
};
pub use diophantine::{
    check_slope_monotonicity, check_stability_intervals, pell_for_moduli, pell_minimal,
    CheckedRange, DiophantineError, IntervalReport, PellSolution, RangeKind, SlopeViolation,
};
pub use families::{
    build_family_instance, enumerate_families, hilbert_scheme_n, markman_instances, FamilyError,
    FamilyInstance, MarkmanInstance,
};
pub use genus::{Genus, GenusError};
pub use matrix::{IntMatrix, MatrixError};
pub use picard::{
    classify_invariant, mod_inverse, orthogonal_complement, picard_data, reflection_identity_at,
    residue_is_square, verify_reflection_identity, ClassKind, ClassificationResult, PicardData,
    PicardError, ReflectionCheck,
};
pub use vector::{LatticeError, MukaiVector};
