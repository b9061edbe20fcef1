//! Derived-equivalence generators as integer isometries of the Mukai
//! lattice, word composition, and the induced involutions on Mukai vectors.
//!
//! The four generators act on `(r, c, s)` by
//!
//! ```text
//! dual         (r, c, s) ↦ (r, −c, s)
//! tensor(d)    (r, c, s) ↦ (r, c + dr, s + d²(g−1)r + 2d(g−1)c)
//! shift        (r, c, s) ↦ (−r, −c, −s)
//! reflect(s₀)  x ↦ x + (x · s₀) s₀          (needs s₀² = −2)
//! ```
//!
//! The composite `tensor(d) ∘ shift ∘ dual ∘ reflect(s₀)` is the action on
//! Mukai vectors of the anti-autoequivalence `E ↦ RHom(T_S(E), O(dH)[1])`;
//! it is an involution exactly for the two admissible data sets
//! `(s₀, d) = ((1,0,1), 0)` and `((2,1,g/2), 1)` with even g, which is what
//! [`MukaiInvolution`] enforces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genus::Genus;
use crate::matrix::IntMatrix;
use crate::vector::MukaiVector;

/// One generator of the equivalence action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Dual,
    Tensor(#[serde(with = "crate::jsonnum::bigint")] BigInt),
    Shift,
    Reflect(MukaiVector),
}

/// A word in the generators; the empty word is the identity. Words apply
/// left to right: the first listed generator acts first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct EquivalenceWord(pub Vec<Generator>);

impl EquivalenceWord {
    pub fn identity() -> Self {
        EquivalenceWord(Vec::new())
    }
}

impl FromIterator<Generator> for EquivalenceWord {
    fn from_iter<T: IntoIterator<Item = Generator>>(iter: T) -> Self {
        EquivalenceWord(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("reflection vector {vector} has square {square}, expected -2")]
    NotSpherical { vector: MukaiVector, square: BigInt },
    #[error(
        "({s}, d={d}) is not an admissible involution datum at genus {g}; \
         expected ((1,0,1), 0) or ((2,1,g/2), 1) with g even"
    )]
    InadmissibleConfig { s: MukaiVector, d: BigInt, g: Genus },
}

/// Applies one generator. Only `Reflect` can fail (non-spherical vector).
pub fn apply_generator(
    gen: &Generator,
    v: &MukaiVector,
    g: Genus,
) -> Result<MukaiVector, ActionError> {
    match gen {
        Generator::Dual => Ok(MukaiVector {
            r: v.r.clone(),
            c: -&v.c,
            s: v.s.clone(),
        }),
        Generator::Tensor(d) => Ok(tensor(d, v, g)),
        Generator::Shift => Ok(-v),
        Generator::Reflect(s0) => {
            let square = s0.square(g);
            if square != BigInt::from(-2) {
                return Err(ActionError::NotSpherical {
                    vector: s0.clone(),
                    square,
                });
            }
            Ok(reflect(s0, v, g))
        }
    }
}

fn tensor(d: &BigInt, v: &MukaiVector, g: Genus) -> MukaiVector {
    let gm1 = BigInt::from(g.get() - 1);
    MukaiVector {
        r: v.r.clone(),
        c: &v.c + d * &v.r,
        s: &v.s + d * d * &gm1 * &v.r + BigInt::from(2) * d * &gm1 * &v.c,
    }
}

fn reflect(s0: &MukaiVector, v: &MukaiVector, g: Genus) -> MukaiVector {
    let coeff = v.pairing(s0, g);
    v + &s0.scale(&coeff)
}

/// Applies a word left to right.
pub fn apply_word(
    word: &EquivalenceWord,
    v: &MukaiVector,
    g: Genus,
) -> Result<MukaiVector, ActionError> {
    let mut out = v.clone();
    for gen in &word.0 {
        out = apply_generator(gen, &out, g)?;
    }
    Ok(out)
}

/// Compiles a word to its 3×3 matrix on `(r, c, s)` columns, so that
/// `apply_word(w, v) = M · v`. Composition is right-to-left: the first
/// generator of the word is the rightmost factor.
pub fn compile_word(word: &EquivalenceWord, g: Genus) -> Result<IntMatrix, ActionError> {
    let basis = [
        MukaiVector::new(1, 0, 0),
        MukaiVector::new(0, 1, 0),
        MukaiVector::new(0, 0, 1),
    ];
    let mut m = IntMatrix::zeros(3, 3);
    for (j, e) in basis.iter().enumerate() {
        let img = apply_word(word, e, g)?;
        let col = img.as_column();
        for (i, x) in col.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    Ok(m)
}

/// The induced involution on Mukai vectors of the anti-autoequivalence
/// `E ↦ RHom(T_S(E), O(dH)[1])`, pinned to the two admissible data sets.
///
/// Construction validates the datum, so [`MukaiInvolution::apply`] is total
/// and `apply ∘ apply = id` holds by design (and is tested exhaustively).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MukaiInvolution {
    s: MukaiVector,
    d: i64,
    g: Genus,
}

impl MukaiInvolution {
    /// Validates `(s, d)` against the two admissible shapes.
    pub fn new(s: MukaiVector, d: i64, g: Genus) -> Result<Self, ActionError> {
        let square = s.square(g);
        if square != BigInt::from(-2) {
            return Err(ActionError::NotSpherical { vector: s, square });
        }
        let ok = (d == 0 && s == MukaiVector::new(1, 0, 1))
            || (d == 1 && g.half().is_some_and(|h| s == MukaiVector::new(2, 1, h)));
        if !ok {
            return Err(ActionError::InadmissibleConfig {
                s,
                d: BigInt::from(d),
                g,
            });
        }
        Ok(MukaiInvolution { s, d, g })
    }

    /// The datum `S = O_X`, `d = 0`: the Markman–O'Grady side.
    pub fn structure_sheaf(g: Genus) -> Self {
        MukaiInvolution {
            s: MukaiVector::new(1, 0, 1),
            d: 0,
            g,
        }
    }

    /// The datum `S` of rank two with `s = (2, 1, g/2)`, `d = 1`; needs
    /// even genus.
    pub fn rank_two_bundle(g: Genus) -> Result<Self, ActionError> {
        let h = g.half().ok_or_else(|| ActionError::InadmissibleConfig {
            s: MukaiVector::new(2, 1, 0),
            d: BigInt::one(),
            g,
        })?;
        Ok(MukaiInvolution {
            s: MukaiVector::new(2, 1, h),
            d: 1,
            g,
        })
    }

    pub fn spherical_vector(&self) -> &MukaiVector {
        &self.s
    }

    pub fn twist_degree(&self) -> i64 {
        self.d
    }

    pub fn genus(&self) -> Genus {
        self.g
    }

    /// The defining word `reflect(s); dual; shift; tensor(d)`.
    pub fn word(&self) -> EquivalenceWord {
        EquivalenceWord(vec![
            Generator::Reflect(self.s.clone()),
            Generator::Dual,
            Generator::Shift,
            Generator::Tensor(BigInt::from(self.d)),
        ])
    }

    /// `v ↦ tensor(d)(−(dual(reflect_s(v))))`.
    pub fn apply(&self, v: &MukaiVector) -> MukaiVector {
        let refl = reflect(&self.s, v, self.g);
        let dual = MukaiVector {
            r: refl.r,
            c: -refl.c,
            s: refl.s,
        };
        let shifted = -&dual;
        tensor(&BigInt::from(self.d), &shifted, self.g)
    }

    /// Compiled 3×3 matrix of the involution.
    pub fn matrix(&self) -> IntMatrix {
        compile_word(&self.word(), self.g).expect("validated spherical vector")
    }

    /// Reports the linear fixed-vector condition next to actual fixedness.
    ///
    /// For `d = 0` the condition is `v₀ = v₂`; for `d = 1` it is
    /// `2v₂ = (2g−2)v₁ − v₀(g/2 − 1)`. The `s·v = 0` locus is flagged:
    /// there the sheaf-level statement is out of reach, but the lattice
    /// condition is still evaluated mechanically.
    pub fn fixedness_report(&self, v: &MukaiVector) -> FixednessReport {
        let condition_holds = if self.d == 0 {
            v.r == v.s
        } else {
            let g = self.g.get();
            let half_minus_one = BigInt::from(self.g.half().expect("validated even genus") - 1);
            BigInt::from(2) * &v.s == BigInt::from(2 * g - 2) * &v.c - &v.r * half_minus_one
        };
        let s_dot_v = self.s.pairing(v, self.g);
        FixednessReport {
            phi_fixed: self.apply(v) == *v,
            condition_holds,
            s_dot_v_is_zero: s_dot_v.is_zero(),
            s_dot_v,
        }
    }
}

/// Outcome of the fixed-vector test for one involution datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixednessReport {
    /// The linear condition on (r, c, s) for this datum.
    pub condition_holds: bool,
    /// Whether the involution actually fixes the vector.
    pub phi_fixed: bool,
    #[serde(with = "crate::jsonnum::bigint")]
    pub s_dot_v: BigInt,
    /// The hypothesis `s·v ≠ 0` of the fixed-vector statement fails here;
    /// reported as a warning, not an error.
    pub s_dot_v_is_zero: bool,
}

/// All admissible involution data at this genus: the structure-sheaf datum
/// always, plus the rank-two datum when g is even.
pub fn derive_admissible_configs(g: Genus) -> Vec<MukaiInvolution> {
    let mut out = vec![MukaiInvolution::structure_sheaf(g)];
    if let Ok(rank2) = MukaiInvolution::rank_two_bundle(g) {
        out.push(rank2);
    }
    out
}

/// Raw involution datum `(s, d, v)` after conjugating the twist degree
/// into `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizedTriple {
    pub s: MukaiVector,
    #[serde(with = "crate::jsonnum::bigint")]
    pub d: BigInt,
    pub v: MukaiVector,
}

/// Conjugates the datum `(S, O(dH), v)` by `⊗ O(mH)`, which sends it to
/// `(S(mH), O((d+2m)H), v·ch(mH))`, choosing `m` so that `d + 2m ∈ {0, 1}`.
/// Fixedness of `v` under the induced involution is preserved.
pub fn normalize_twist(
    s: &MukaiVector,
    d: &BigInt,
    v: &MukaiVector,
    g: Genus,
) -> Result<NormalizedTriple, ActionError> {
    let square = s.square(g);
    if square != BigInt::from(-2) {
        return Err(ActionError::NotSpherical {
            vector: s.clone(),
            square,
        });
    }
    let (q, rem) = d.div_mod_floor(&BigInt::from(2));
    let m = -q;
    Ok(NormalizedTriple {
        s: tensor(&m, s, g),
        d: rem,
        v: tensor(&m, v, g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> Genus {
        Genus::new(v).unwrap()
    }

    fn word(gens: Vec<Generator>) -> EquivalenceWord {
        EquivalenceWord(gens)
    }

    #[test]
    fn generator_examples() {
        let v = MukaiVector::new(5, -3, 11);
        assert_eq!(
            apply_generator(&Generator::Tensor(BigInt::zero()), &v, g(7)).unwrap(),
            v
        );
        assert_eq!(
            apply_generator(
                &Generator::Tensor(BigInt::one()),
                &MukaiVector::new(1, 0, 0),
                g(2)
            )
            .unwrap(),
            MukaiVector::new(1, 1, 1)
        );
        assert_eq!(
            apply_generator(
                &Generator::Reflect(MukaiVector::new(2, 1, 5)),
                &MukaiVector::new(1, 0, 0),
                g(10)
            )
            .unwrap(),
            MukaiVector::new(-9, -5, -25)
        );
        // reflect sends its own spherical vector to its negative
        let s = MukaiVector::new(2, 1, 5);
        assert_eq!(
            apply_generator(&Generator::Reflect(s.clone()), &s, g(10)).unwrap(),
            -&s
        );
    }

    #[test]
    fn reflect_rejects_non_spherical() {
        let bad = MukaiVector::new(1, 1, 7); // square 4 at g = 10
        let err = apply_generator(
            &Generator::Reflect(bad.clone()),
            &MukaiVector::zero(),
            g(10),
        )
        .unwrap_err();
        assert_eq!(
            err,
            ActionError::NotSpherical {
                vector: bad,
                square: BigInt::from(4)
            }
        );
    }

    #[test]
    fn compiled_words() {
        assert!(compile_word(&EquivalenceWord::identity(), g(5))
            .unwrap()
            .is_identity());
        assert!(
            compile_word(&word(vec![Generator::Dual, Generator::Dual]), g(5))
                .unwrap()
                .is_identity()
        );
        assert!(compile_word(
            &word(vec![
                Generator::Tensor(BigInt::one()),
                Generator::Tensor(BigInt::from(-1)),
            ]),
            g(9)
        )
        .unwrap()
        .is_identity());
        assert!(
            compile_word(&word(vec![Generator::Shift, Generator::Shift]), g(5))
                .unwrap()
                .is_identity()
        );
        let s = MukaiVector::new(1, 0, 1);
        assert!(compile_word(
            &word(vec![Generator::Reflect(s.clone()), Generator::Reflect(s),]),
            g(6)
        )
        .unwrap()
        .is_identity());
    }

    #[test]
    fn compiled_matrix_agrees_with_apply() {
        let w = word(vec![
            Generator::Reflect(MukaiVector::new(2, 1, 5)),
            Generator::Dual,
            Generator::Shift,
            Generator::Tensor(BigInt::one()),
        ]);
        let m = compile_word(&w, g(10)).unwrap();
        let v = MukaiVector::new(3, -4, 9);
        let col = m.mul_column(&v.as_column()).unwrap();
        let direct = apply_word(&w, &v, g(10)).unwrap();
        assert_eq!(col, direct.as_column());
    }

    #[test]
    fn involution_fixed_vectors() {
        // structure-sheaf datum swaps r and s
        let phi = MukaiInvolution::structure_sheaf(g(6));
        let v = MukaiVector::new(2, 1, 2);
        assert_eq!(phi.apply(&v), v);
        let w = MukaiVector::new(1, 0, 0);
        assert_eq!(phi.apply(&w), MukaiVector::new(0, 0, 1));
        assert_eq!(phi.apply(&phi.apply(&w)), w);

        // rank-two datum fixes the g = 10, k = 0 family vector
        let phi = MukaiInvolution::rank_two_bundle(g(10)).unwrap();
        let v = MukaiVector::new(1, 1, 7);
        assert_eq!(phi.apply(&v), v);
    }

    #[test]
    fn involution_datum_validation() {
        assert!(MukaiInvolution::rank_two_bundle(g(7)).is_err());
        assert!(MukaiInvolution::new(MukaiVector::new(1, 0, 1), 0, g(7)).is_ok());
        assert!(MukaiInvolution::new(MukaiVector::new(2, 1, 5), 1, g(10)).is_ok());
        // spherical but not an admissible datum
        assert!(matches!(
            MukaiInvolution::new(MukaiVector::new(1, 1, 10), 0, g(10)),
            Err(ActionError::InadmissibleConfig { .. })
        ));
        assert!(matches!(
            MukaiInvolution::new(MukaiVector::new(1, 0, 1), 1, g(10)),
            Err(ActionError::InadmissibleConfig { .. })
        ));
    }

    #[test]
    fn admissible_configs_by_genus() {
        let configs = derive_admissible_configs(g(10));
        assert_eq!(configs.len(), 2);
        assert_eq!(configs[0].spherical_vector(), &MukaiVector::new(1, 0, 1));
        assert_eq!(configs[1].spherical_vector(), &MukaiVector::new(2, 1, 5));

        let configs = derive_admissible_configs(g(7));
        assert_eq!(configs.len(), 1);

        let configs = derive_admissible_configs(g(2));
        assert_eq!(configs.len(), 2);
        assert_eq!(configs[1].spherical_vector(), &MukaiVector::new(2, 1, 1));
    }

    #[test]
    fn fixedness_reports() {
        let phi = MukaiInvolution::rank_two_bundle(g(10)).unwrap();
        let rep = phi.fixedness_report(&MukaiVector::new(1, 1, 7));
        assert!(rep.condition_holds);
        assert!(rep.phi_fixed);
        assert_eq!(rep.s_dot_v, BigInt::from(-1));
        assert!(!rep.s_dot_v_is_zero);

        let rep = phi.fixedness_report(&MukaiVector::new(1, 1, 8));
        assert!(!rep.condition_holds);
        assert!(!rep.phi_fixed);
    }

    #[test]
    fn normalize_twist_examples() {
        // s = v(O(H)) = (1, 1, g), d = 2 normalizes to ((1,0,1), 0)
        for gv in [4, 7, 10] {
            let s = MukaiVector::new(1, 1, gv);
            let v = MukaiVector::new(3, 2, 5);
            let out = normalize_twist(&s, &BigInt::from(2), &v, g(gv)).unwrap();
            assert_eq!(out.s, MukaiVector::new(1, 0, 1));
            assert_eq!(out.d, BigInt::zero());
            assert_eq!(out.v, tensor(&BigInt::from(-1), &v, g(gv)));
        }

        // d already in {0, 1} is untouched
        let s = MukaiVector::new(1, 0, 1);
        let v = MukaiVector::new(2, 3, 4);
        let out = normalize_twist(&s, &BigInt::one(), &v, g(5)).unwrap();
        assert_eq!(out.s, s);
        assert_eq!(out.d, BigInt::one());
        assert_eq!(out.v, v);

        // one conjugation step back from s·ch(H), d = 3
        let base = MukaiVector::new(2, 1, 5);
        let twisted = tensor(&BigInt::one(), &base, g(10));
        let out = normalize_twist(&twisted, &BigInt::from(3), &MukaiVector::zero(), g(10)).unwrap();
        assert_eq!(out.d, BigInt::one());
        assert_eq!(out.s, base);
        assert_eq!(out.s.square(g(10)), BigInt::from(-2));

        // negative degrees land in {0, 1} too
        let out = normalize_twist(&s, &BigInt::from(-3), &MukaiVector::zero(), g(5)).unwrap();
        assert_eq!(out.d, BigInt::one());
    }

    #[test]
    fn normalize_twist_rejects_non_spherical() {
        let err = normalize_twist(
            &MukaiVector::zero(),
            &BigInt::zero(),
            &MukaiVector::zero(),
            g(5),
        )
        .unwrap_err();
        assert!(matches!(err, ActionError::NotSpherical { .. }));
    }

    #[test]
    fn word_json_form() {
        let w = word(vec![
            Generator::Dual,
            Generator::Tensor(BigInt::from(2)),
            Generator::Shift,
            Generator::Reflect(MukaiVector::new(1, 0, 1)),
        ]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(
            json,
            r#"["dual",{"tensor":2},"shift",{"reflect":{"r":1,"c":0,"s":1}}]"#
        );
        assert_eq!(serde_json::from_str::<EquivalenceWord>(&json).unwrap(), w);
    }
}
