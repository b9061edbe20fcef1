//! Picard-lattice data of the moduli space `M(v)` and the classification
//! of the invariant lattice of the induced involution.
//!
//! The Hodge isometry `θ : v⊥ → H²(M(v), ℤ)` identifies the Picard lattice
//! of `M(v)` (for `Pic(X) = ℤH`) with the algebraic part of `v⊥`, spanned
//! by `d_v = θ(2, 1, g/2 − 1)` and `f_v = θ(v₀, 0, −v₂)/δ` where
//! `δ = gcd(v₀, v₂)`. This module computes that rank-2 Gram matrix and its
//! discriminant `−4(g−1)(n−1)/δ²`, verifies the closed-form identity
//!
//! ```text
//! R_S ∘ D ∘ T(x) = −x + [(2, 1, g/2−1) · x] (2, 1, g/2−1)   for x ∈ v⊥
//! ```
//!
//! (`T` = tensor by `O(−H)`, `D` = dual, `R_S` = reflection in
//! `s = (2, 1, g/2)`), and classifies which rank-1 invariant lattices
//! `(2)`, `(n−1)`, `(2(n−1))` pass the necessary residue, parity and δ
//! tests. The tests are necessary conditions only, so the classifier
//! returns a set of possibilities, never a unique answer unless everything
//! but `(2)` is excluded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::actions::{apply_word, EquivalenceWord, Generator};
use crate::families::FamilyInstance;
use crate::genus::Genus;
use crate::matrix::IntMatrix;
use crate::vector::MukaiVector;

/// Basis and Gram data of the Picard lattice of `M(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicardData {
    pub d_v: MukaiVector,
    pub f_v: MukaiVector,
    pub gram: IntMatrix,
    #[serde(with = "crate::jsonnum::bigint")]
    pub discriminant: BigInt,
    #[serde(with = "crate::jsonnum::bigint")]
    pub delta: BigInt,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PicardError {
    #[error("genus {g} is odd; the rank-two spherical datum needs even genus")]
    GenusOdd { g: i64 },
    #[error("vector {v} does not satisfy 2v₂ = (2g−2)v₁ − v₀(g/2−1) at genus {g}")]
    NotCaseTwo { v: MukaiVector, g: i64 },
    #[error("the zero vector has no orthogonal complement basis")]
    ZeroVector,
    #[error("{x} is not orthogonal to v (pairing {pairing}), identity not asserted there")]
    NotOrthogonal { x: MukaiVector, pairing: BigInt },
    #[error("moduli dimension 2n with n = {n} is below the classification range (n >= 2)")]
    NotClassifiable { n: i64 },
    #[error("{a} is not invertible mod {modulus}")]
    NotInvertible { a: i64, modulus: i64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// Gram matrix of a list of vectors under the Mukai pairing.
pub fn gram_matrix(vectors: &[MukaiVector], g: Genus) -> IntMatrix {
    let n = vectors.len();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = vectors[i].pairing(&vectors[j], g);
        }
    }
    m
}

/// Picard basis `(d_v, f_v)`, Gram matrix and discriminant for a family
/// instance. Closed-form entries are cross-checked against the pairing.
pub fn picard_data(inst: &FamilyInstance) -> Result<PicardData, PicardError> {
    let g = inst.g;
    let half = g.half().ok_or(PicardError::GenusOdd { g: g.get() })?;
    let v = &inst.v;
    let two_g_minus_2 = BigInt::from(g.polarization_square());
    if BigInt::from(2) * &v.s != &two_g_minus_2 * &v.c - &v.r * BigInt::from(half - 1) {
        return Err(PicardError::NotCaseTwo {
            v: v.clone(),
            g: g.get(),
        });
    }

    let delta = v.r.gcd(&v.s);
    let d_v = MukaiVector::new(2, 1, half - 1);
    let f_v = MukaiVector {
        r: &v.r / &delta,
        c: BigInt::zero(),
        s: -&v.s / &delta,
    };

    // Closed-form entries.
    let off = (BigInt::from(2) * &v.s - BigInt::from(half - 1) * &v.r) / &delta;
    let corner = BigInt::from(2) * &v.r * &v.s / (&delta * &delta);
    let closed = IntMatrix::from_rows(vec![vec![BigInt::from(2), off.clone()], vec![off, corner]])
        .expect("2x2");

    let from_pairing = gram_matrix(&[d_v.clone(), f_v.clone()], g);
    if closed != from_pairing {
        return Err(PicardError::Inconsistent(format!(
            "closed-form Gram {closed:?} disagrees with pairing {from_pairing:?}"
        )));
    }

    let discriminant = from_pairing.det().expect("square");
    Ok(PicardData {
        d_v,
        f_v,
        gram: from_pairing,
        discriminant,
        delta,
    })
}

/// Saturated rank-2 basis of `v⊥` inside the rank-3 lattice: the kernel of
/// `w ↦ v · w`.
pub fn orthogonal_complement(v: &MukaiVector, g: Genus) -> Result<Vec<MukaiVector>, PicardError> {
    if v.is_zero() {
        return Err(PicardError::ZeroVector);
    }
    // v · w as a functional on (r_w, c_w, s_w)
    let functional = IntMatrix::from_rows(vec![vec![
        -v.s.clone(),
        BigInt::from(g.polarization_square()) * &v.c,
        -v.r.clone(),
    ]])
    .expect("1x3");
    let kernel = functional.kernel();
    debug_assert_eq!(kernel.cols(), 2);
    Ok((0..kernel.cols())
        .map(|j| {
            let col = kernel.column(j);
            MukaiVector {
                r: col[0].clone(),
                c: col[1].clone(),
                s: col[2].clone(),
            }
        })
        .collect())
}

/// Both sides of the closed-form identity at `x`.
fn reflection_sides(x: &MukaiVector, g: Genus) -> Result<(MukaiVector, MukaiVector), PicardError> {
    let half = g.half().ok_or(PicardError::GenusOdd { g: g.get() })?;
    let s = MukaiVector::new(2, 1, half);
    let word = EquivalenceWord(vec![
        Generator::Tensor(BigInt::from(-1)),
        Generator::Dual,
        Generator::Reflect(s),
    ]);
    let lhs = apply_word(&word, x, g).expect("(2, 1, g/2) is spherical for even g");
    let d_tilde = MukaiVector::new(2, 1, half - 1);
    let coeff = d_tilde.pairing(x, g);
    let rhs = &(-x) + &d_tilde.scale(&coeff);
    Ok((lhs, rhs))
}

/// Whether the closed-form identity holds at a single `x ∈ v⊥`. Inputs
/// outside `v⊥` are refused, since the identity is only claimed there.
pub fn reflection_identity_at(
    v: &MukaiVector,
    g: Genus,
    x: &MukaiVector,
) -> Result<bool, PicardError> {
    let pairing = v.pairing(x, g);
    if !pairing.is_zero() {
        return Err(PicardError::NotOrthogonal {
            x: x.clone(),
            pairing,
        });
    }
    let (lhs, rhs) = reflection_sides(x, g)?;
    Ok(lhs == rhs)
}

/// A failing point of the reflection identity, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionWitness {
    pub x: MukaiVector,
    pub lhs: MukaiVector,
    pub rhs: MukaiVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionCheck {
    pub holds: bool,
    pub witness: Option<ReflectionWitness>,
}

/// Checks the closed-form identity on a full basis of `v⊥`; by linearity
/// that covers the whole orthogonal complement. Returns the first failing
/// witness if any.
pub fn verify_reflection_identity(inst: &FamilyInstance) -> Result<ReflectionCheck, PicardError> {
    let basis = orthogonal_complement(&inst.v, inst.g)?;
    for x in &basis {
        let (lhs, rhs) = reflection_sides(x, inst.g)?;
        if lhs != rhs {
            return Ok(ReflectionCheck {
                holds: false,
                witness: Some(ReflectionWitness {
                    x: x.clone(),
                    lhs,
                    rhs,
                }),
            });
        }
    }
    Ok(ReflectionCheck {
        holds: true,
        witness: None,
    })
}

/// The three rank-1 lattice shapes the invariant lattice can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassKind {
    Two,
    NMinusOne,
    TwiceNMinusOne,
}

/// A concrete candidate `(q)`: the lattice generated by a class of square q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantClass {
    pub kind: ClassKind,
    pub square: i64,
}

impl std::fmt::Display for InvariantClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.square)
    }
}

impl Serialize for InvariantClass {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// Outcome of one residue test, reduced to `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueCheck {
    pub value: i64,
    pub modulus: i64,
    pub is_square: bool,
}

/// Why a candidate was kept or dropped. Absent fields were not reached
/// because an earlier test already excluded the candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct CaseReason {
    pub included: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_gt_2: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_even: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_is_one: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<ResidueCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReasons {
    pub two: CaseReason,
    pub n_minus_one: CaseReason,
    pub twice_n_minus_one: CaseReason,
}

/// The set of invariant-lattice shapes compatible with the necessary
/// conditions, plus the per-case test records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub n: i64,
    #[serde(with = "crate::jsonnum::bigint")]
    pub delta: BigInt,
    pub possible: Vec<InvariantClass>,
    pub reasons: ClassificationReasons,
}

/// Classifies the possible invariant lattices of the involution on a
/// family instance with `dim M(v) ≥ 4`.
///
/// `(2)` is always possible. `(2(n−1))` additionally needs `n > 2`,
/// `δ = 1` and `−1/(g−1)` a square mod `n−1`; `(n−1)` needs `n > 2` even,
/// `δ = 1` and `−1/(2(g−1))` a square mod `n−1`.
pub fn classify_invariant(inst: &FamilyInstance) -> Result<ClassificationResult, PicardError> {
    let n = inst.n;
    if n < 2 {
        return Err(PicardError::NotClassifiable { n });
    }
    let g = inst.g.get();
    let delta_is_one = inst.delta.is_one();
    let m = n - 1;

    let two_reason = CaseReason {
        included: true,
        note: Some("a square-2 class is always available".to_owned()),
        ..CaseReason::default()
    };
    let mut possible = vec![InvariantClass {
        kind: ClassKind::Two,
        square: 2,
    }];

    let (n_minus_one, twice_n_minus_one) = if n == 2 {
        let note = "n = 2: the case split degenerates (residues mod 1 are vacuous), \
                    only (2) is reported";
        let excluded = CaseReason {
            included: false,
            n_gt_2: Some(false),
            note: Some(note.to_owned()),
            ..CaseReason::default()
        };
        (excluded.clone(), excluded)
    } else {
        // −1/(g−1) mod (n−1)
        let twice = if !delta_is_one {
            CaseReason {
                included: false,
                n_gt_2: Some(true),
                delta_is_one: Some(false),
                ..CaseReason::default()
            }
        } else {
            let inv = mod_inverse((g - 1).rem_euclid(m), m)?;
            let value = (m - inv).rem_euclid(m);
            let is_square = residue_is_square(value, m as u64);
            CaseReason {
                included: is_square,
                n_gt_2: Some(true),
                delta_is_one: Some(true),
                residue: Some(ResidueCheck {
                    value,
                    modulus: m,
                    is_square,
                }),
                ..CaseReason::default()
            }
        };

        // −1/(2(g−1)) mod (n−1), for even n only
        let single = if n % 2 != 0 {
            CaseReason {
                included: false,
                n_gt_2: Some(true),
                n_even: Some(false),
                ..CaseReason::default()
            }
        } else if !delta_is_one {
            CaseReason {
                included: false,
                n_gt_2: Some(true),
                n_even: Some(true),
                delta_is_one: Some(false),
                ..CaseReason::default()
            }
        } else {
            let base = (2 * (g - 1)).rem_euclid(m);
            let inv = mod_inverse(base, m)?;
            let value = (m - inv).rem_euclid(m);
            let is_square = residue_is_square(value, m as u64);
            CaseReason {
                included: is_square,
                n_gt_2: Some(true),
                n_even: Some(true),
                delta_is_one: Some(true),
                residue: Some(ResidueCheck {
                    value,
                    modulus: m,
                    is_square,
                }),
                ..CaseReason::default()
            }
        };
        (single, twice)
    };

    if n_minus_one.included {
        possible.push(InvariantClass {
            kind: ClassKind::NMinusOne,
            square: m,
        });
    }
    if twice_n_minus_one.included {
        possible.push(InvariantClass {
            kind: ClassKind::TwiceNMinusOne,
            square: 2 * m,
        });
    }
    possible.sort_by_key(|c| c.square);

    Ok(ClassificationResult {
        n,
        delta: inst.delta.clone(),
        possible,
        reasons: ClassificationReasons {
            two: two_reason,
            n_minus_one,
            twice_n_minus_one,
        },
    })
}

/// `b` with `ab ≡ 1 (mod m)` and `0 ≤ b < m`.
///
/// The modulus must be positive; `gcd(a, m) ≠ 1` is an error.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64, PicardError> {
    assert!(m >= 1, "modulus must be positive");
    let a_red = a.rem_euclid(m);
    if m == 1 {
        return Ok(0);
    }
    // extended Euclid on (a_red, m)
    let (mut old_r, mut r) = (a_red as i128, m as i128);
    let (mut old_t, mut t) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r != 1 {
        return Err(PicardError::NotInvertible { a, modulus: m });
    }
    Ok((old_t.rem_euclid(m as i128)) as i64)
}

/// Whether `a` is a square mod `m` (`m ≥ 1`; `a` reduced mod `m`, with
/// `a ≡ 0` counting as a square).
///
/// Decided prime power by prime power after trial-division factorization:
/// `a = pˢu` with `p ∤ u` is a square mod `pᵉ` (for `s < e`) iff `s` is even
/// and `u` is a quadratic residue mod `p^{e−s}`; for `p = 2` the residue
/// test is `u ≡ 1 mod min(2^{e−s}, 8)`.
pub fn residue_is_square(a: i64, m: u64) -> bool {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return true;
    }
    let r = a.rem_euclid(m as i64) as u64;
    if r == 0 {
        return true;
    }
    for (p, e) in factorize(m) {
        let pe = p.pow(e);
        let mut rp = r % pe;
        if rp == 0 {
            continue;
        }
        let mut s = 0u32;
        while rp % p == 0 {
            rp /= p;
            s += 1;
        }
        if s % 2 != 0 {
            return false;
        }
        let t = e - s;
        if t == 0 {
            continue;
        }
        if p == 2 {
            let ok = match t {
                1 => true,
                2 => rp % 4 == 1,
                _ => rp % 8 == 1,
            };
            if !ok {
                return false;
            }
        } else if legendre(rp % p, p) != 1 {
            return false;
        }
    }
    true
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, m: &mut u64| {
        if *m % p == 0 {
            let mut e = 0;
            while *m % p == 0 {
                *m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    };
    push(2, &mut m);
    let mut p = 3u64;
    while p * p <= m {
        push(p, &mut m);
        p += 2;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Legendre symbol of `u` mod an odd prime `p`, via Euler's criterion.
fn legendre(u: u64, p: u64) -> i32 {
    debug_assert!(p % 2 == 1 && u % p != 0);
    let e = modpow(u, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

fn modpow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_family_instance;

    fn g(v: i64) -> Genus {
        Genus::new(v).unwrap()
    }

    #[test]
    fn picard_gram_matrices() {
        let inst = build_family_instance(2, 0).unwrap(); // g = 10, v = (1,1,7)
        let data = picard_data(&inst).unwrap();
        assert_eq!(data.d_v, MukaiVector::new(2, 1, 4));
        assert_eq!(data.f_v, MukaiVector::new(1, 0, -7));
        assert_eq!(
            data.gram,
            IntMatrix::from_i64(&[&[2, 10], &[10, 14]]).unwrap()
        );
        assert_eq!(data.discriminant, BigInt::from(-72));
        assert_eq!(data.delta, BigInt::from(1));

        let inst = build_family_instance(5, 1).unwrap(); // g = 22, v = (3,2,27)
        let data = picard_data(&inst).unwrap();
        assert_eq!(data.delta, BigInt::from(3));
        assert_eq!(
            data.gram,
            IntMatrix::from_i64(&[&[2, 8], &[8, 18]]).unwrap()
        );
        assert_eq!(data.discriminant, BigInt::from(-28));

        let inst = build_family_instance(3, 0).unwrap(); // g = 14, v = (1,1,10)
        let data = picard_data(&inst).unwrap();
        assert_eq!(
            data.gram,
            IntMatrix::from_i64(&[&[2, 14], &[14, 20]]).unwrap()
        );
        assert_eq!(data.discriminant, BigInt::from(-156));
    }

    #[test]
    fn markman_specialization_of_f_v() {
        // for v = (r, 1, r): δ = r and f_v = (1, 0, −1), of square 2
        let h_v = MukaiVector::new(1, 0, -1);
        for gv in [3, 5, 10, 14] {
            assert_eq!(h_v.square(g(gv)), BigInt::from(2));
        }
        for r in 1..=5i64 {
            let v = MukaiVector::new(r, 1, r);
            let delta = v.r.gcd(&v.s);
            assert_eq!(delta, BigInt::from(r));
            assert_eq!(
                MukaiVector {
                    r: &v.r / &delta,
                    c: BigInt::zero(),
                    s: -&v.s / &delta
                },
                h_v
            );
        }
    }

    #[test]
    fn orthogonal_complement_contents() {
        let v = MukaiVector::new(1, 1, 7);
        let basis = orthogonal_complement(&v, g(10)).unwrap();
        assert_eq!(basis.len(), 2);
        for w in &basis {
            assert!(v.pairing(w, g(10)).is_zero());
        }
        // spans (1,0,−7), (0,1,18) and hence also d_v = (2,1,4)
        for target in [
            MukaiVector::new(1, 0, -7),
            MukaiVector::new(0, 1, 18),
            MukaiVector::new(2, 1, 4),
        ] {
            assert!(
                in_lattice(&basis, &target, g(10)),
                "{target} missing from v-perp"
            );
        }

        assert_eq!(
            orthogonal_complement(&MukaiVector::zero(), g(10)),
            Err(PicardError::ZeroVector)
        );
    }

    #[test]
    fn orthogonal_complement_gram_det() {
        // det Gram(v⊥) = −4(g−1)(n−1)/δ²  (Beauville case: g = 3, n = 2 gives −8)
        let v = MukaiVector::new(1, 1, 1);
        let basis = orthogonal_complement(&v, g(3)).unwrap();
        let det = gram_matrix(&basis, g(3)).det().unwrap();
        assert_eq!(det, BigInt::from(-8));

        let v = MukaiVector::new(1, 1, 7);
        let basis = orthogonal_complement(&v, g(10)).unwrap();
        let det = gram_matrix(&basis, g(10)).det().unwrap();
        assert_eq!(det, BigInt::from(-72));
    }

    /// Membership in the span: x = a·b₀ + b·b₁ solvable over ℤ, tested via
    /// the kernel of the stacked column matrix.
    fn in_lattice(basis: &[MukaiVector], x: &MukaiVector, _g: Genus) -> bool {
        let cols: Vec<Vec<BigInt>> = basis
            .iter()
            .chain(std::iter::once(x))
            .map(MukaiVector::as_column)
            .map(|c| c.to_vec())
            .collect();
        let mut m = IntMatrix::zeros(3, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m[(i, j)] = col[i].clone();
            }
        }
        let ker = m.kernel();
        (0..ker.cols()).any(|j| {
            let last = &ker[(cols.len() - 1, j)];
            last == &BigInt::from(1) || last == &BigInt::from(-1)
        })
    }

    #[test]
    fn reflection_identity_on_family() {
        let inst = build_family_instance(2, 0).unwrap();
        let check = verify_reflection_identity(&inst).unwrap();
        assert!(check.holds, "witness: {:?}", check.witness);

        // d_v is fixed by both sides
        let d_v = MukaiVector::new(2, 1, 4);
        assert!(reflection_identity_at(&inst.v, g(10), &d_v).unwrap());
        let (lhs, _) = reflection_sides(&d_v, g(10)).unwrap();
        assert_eq!(lhs, d_v);

        // v itself is outside v⊥ and gets refused
        let err = reflection_identity_at(&inst.v, g(10), &inst.v).unwrap_err();
        assert!(matches!(err, PicardError::NotOrthogonal { .. }));
    }

    #[test]
    fn classification_examples() {
        // g = 10, k = 0: n = 3, δ = 1 → {(2), (4)}
        let inst = build_family_instance(2, 0).unwrap();
        let res = classify_invariant(&inst).unwrap();
        assert_eq!(
            res.possible.iter().map(|c| c.square).collect::<Vec<_>>(),
            vec![2, 4]
        );
        assert!(res.reasons.twice_n_minus_one.included);
        assert_eq!(res.reasons.n_minus_one.n_even, Some(false));

        // g = 14, k = 0: n = 4, δ = 1 → {(2), (3)}
        let inst = build_family_instance(3, 0).unwrap();
        let res = classify_invariant(&inst).unwrap();
        assert_eq!(
            res.possible.iter().map(|c| c.square).collect::<Vec<_>>(),
            vec![2, 3]
        );
        let twice = &res.reasons.twice_n_minus_one;
        assert!(!twice.included);
        assert_eq!(
            twice.residue,
            Some(ResidueCheck {
                value: 2,
                modulus: 3,
                is_square: false
            })
        );
        let single = &res.reasons.n_minus_one;
        assert_eq!(
            single.residue,
            Some(ResidueCheck {
                value: 1,
                modulus: 3,
                is_square: true
            })
        );

        // g = 22, k = 1: δ = 3 → {(2)} by the δ short-circuit
        let inst = build_family_instance(5, 1).unwrap();
        let res = classify_invariant(&inst).unwrap();
        assert_eq!(
            res.possible.iter().map(|c| c.square).collect::<Vec<_>>(),
            vec![2]
        );
        assert_eq!(res.reasons.twice_n_minus_one.delta_is_one, Some(false));
    }

    #[test]
    fn classification_degenerate_and_error_cases() {
        // boundary instance: n = 1 → error
        let inst = build_family_instance(2, 1).unwrap();
        assert_eq!(
            classify_invariant(&inst),
            Err(PicardError::NotClassifiable { n: 1 })
        );

        // n = 2 (g = 6, k = 0): degenerate, only (2)
        let inst = build_family_instance(1, 0).unwrap();
        let res = classify_invariant(&inst).unwrap();
        assert_eq!(res.possible.len(), 1);
        assert!(res.reasons.n_minus_one.note.is_some());
    }

    #[test]
    fn classification_json_form() {
        let inst = build_family_instance(2, 0).unwrap();
        let res = classify_invariant(&inst).unwrap();
        let json = serde_json::to_value(&res).unwrap();
        assert_eq!(json["possible"], serde_json::json!(["(2)", "(4)"]));
        assert_eq!(json["n"], serde_json::json!(3));
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 5), Ok(1));
        assert_eq!(mod_inverse(9, 2), Ok(1));
        assert_eq!(
            mod_inverse(2, 4),
            Err(PicardError::NotInvertible { a: 2, modulus: 4 })
        );
        assert_eq!(mod_inverse(-1, 7), Ok(6));
        assert_eq!(mod_inverse(3, 7), Ok(5));
        assert_eq!(mod_inverse(1, 1), Ok(0));
    }

    #[test]
    fn residue_examples() {
        for m in 1..=50 {
            assert!(residue_is_square(1, m), "1 must be a square mod {m}");
            assert!(residue_is_square(0, m));
        }
        assert!(!residue_is_square(2, 3));
        assert!(residue_is_square(2, 7)); // 3² = 9 ≡ 2
        assert!(residue_is_square(-1, 5)); // 2² ≡ 4 ≡ −1
        assert!(!residue_is_square(-1, 3));
    }

    #[test]
    fn residue_matches_brute_force_small() {
        for m in 1..=500u64 {
            let mut squares = vec![false; m as usize];
            for x in 0..m {
                squares[((x * x) % m) as usize] = true;
            }
            for a in 0..m {
                assert_eq!(
                    residue_is_square(a as i64, m),
                    squares[a as usize],
                    "disagreement at a = {a}, m = {m}"
                );
            }
        }
    }
}
