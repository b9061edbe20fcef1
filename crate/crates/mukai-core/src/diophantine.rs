//! Brute-force verifiers for the integer-interval steps of the stability
//! arguments, and a Pell-equation solver.
//!
//! Everything here runs in exact rational or integer arithmetic; there is
//! no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genus::Genus;

/// Which slope interval a record refers to.
///
/// * `ImageDegree`: degrees `c` with `r/2 < c < r/2 + r/(4k+2)` for the
///   image of the evaluation map, ranks `1 ≤ r ≤ 2k+1`; claimed empty.
/// * `DestabilizerDegree`: degrees `α` with
///   `h/2 − h/(4k+2) ≤ α ≤ h/2` for a destabilizer of the kernel, ranks
///   `1 ≤ h < 2k+1`; claimed to be exactly `α = h/2` for even `h`.
/// * `KernelDegree`: degrees `c` with `m/2 < c < m/2 + 1` for a
///   destabilizer of the extension, ranks `1 ≤ m ≤ 2k+2`; claimed to be
///   exactly `c = (m+1)/2` for odd `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeKind {
    ImageDegree,
    DestabilizerDegree,
    KernelDegree,
}

/// One interval that was swept, with exact rational bounds. Whether the
/// bounds are open or closed is determined by the kind (see [`RangeKind`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedRange {
    pub kind: RangeKind,
    pub rank: i64,
    #[serde(with = "crate::jsonnum::big_ratio")]
    pub lower: BigRational,
    #[serde(with = "crate::jsonnum::big_ratio")]
    pub upper: BigRational,
}

/// An integer degree that contradicts the claimed solution set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeViolation {
    pub kind: RangeKind,
    pub rank: i64,
    #[serde(with = "crate::jsonnum::bigint")]
    pub degree: BigInt,
}

/// Result of sweeping every slope interval at a fixed `k`. Empty
/// `violations` means the impossibility claims hold for this `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalReport {
    pub k: i64,
    pub checked_ranges: Vec<CheckedRange>,
    pub violations: Vec<SlopeViolation>,
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integers strictly inside `(lo, hi)`.
fn integers_in_open(lo: &BigRational, hi: &BigRational) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut x: BigInt = lo.floor().to_integer() + 1;
    while BigRational::from(x.clone()) < *hi {
        out.push(x.clone());
        x += 1;
    }
    out
}

/// Integers inside the closed interval `[lo, hi]`.
fn integers_in_closed(lo: &BigRational, hi: &BigRational) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut x: BigInt = lo.ceil().to_integer();
    while BigRational::from(x.clone()) <= *hi {
        out.push(x.clone());
        x += 1;
    }
    out
}

/// Sweeps the three slope-interval families for one `k ≥ 0`, recording
/// every range and every integer that contradicts the claimed solution
/// set (in either direction: unexpected solutions and missing ones).
pub fn check_stability_intervals(k: i64) -> IntervalReport {
    assert!(k >= 0, "k must be nonnegative");
    let mut checked_ranges = Vec::new();
    let mut violations = Vec::new();
    let record = |kind: RangeKind,
                  rank: i64,
                  lower: BigRational,
                  upper: BigRational,
                  found: Vec<BigInt>,
                  expected: Vec<BigInt>,
                  checked: &mut Vec<CheckedRange>,
                  bad: &mut Vec<SlopeViolation>| {
        for x in &found {
            if !expected.contains(x) {
                bad.push(SlopeViolation {
                    kind,
                    rank,
                    degree: x.clone(),
                });
            }
        }
        for x in &expected {
            if !found.contains(x) {
                bad.push(SlopeViolation {
                    kind,
                    rank,
                    degree: x.clone(),
                });
            }
        }
        checked.push(CheckedRange {
            kind,
            rank,
            lower,
            upper,
        });
    };

    // (r/2, r/2 + r/(4k+2)) open, ranks up to 2k+1: no integer degrees.
    for r in 1..=2 * k + 1 {
        let lo = ratio(r, 2);
        let hi = &lo + ratio(r, 4 * k + 2);
        let found = integers_in_open(&lo, &hi);
        record(
            RangeKind::ImageDegree,
            r,
            lo,
            hi,
            found,
            vec![],
            &mut checked_ranges,
            &mut violations,
        );
    }

    // [h/2 − h/(4k+2), h/2] closed, ranks below 2k+1: only α = h/2, h even.
    for h in 1..2 * k + 1 {
        let hi = ratio(h, 2);
        let lo = &hi - ratio(h, 4 * k + 2);
        let found = integers_in_closed(&lo, &hi);
        let expected = if h % 2 == 0 {
            vec![BigInt::from(h / 2)]
        } else {
            vec![]
        };
        record(
            RangeKind::DestabilizerDegree,
            h,
            lo,
            hi,
            found,
            expected,
            &mut checked_ranges,
            &mut violations,
        );
    }

    // (m/2, m/2 + 1) open, ranks below 2k+3: only c = (m+1)/2, m odd.
    for m in 1..=2 * k + 2 {
        let lo = ratio(m, 2);
        let hi = &lo + BigRational::one();
        let found = integers_in_open(&lo, &hi);
        let expected = if m % 2 == 1 {
            vec![BigInt::from((m + 1) / 2)]
        } else {
            vec![]
        };
        record(
            RangeKind::KernelDegree,
            m,
            lo,
            hi,
            found,
            expected,
            &mut checked_ranges,
            &mut violations,
        );
    }

    IntervalReport {
        k,
        checked_ranges,
        violations,
    }
}

/// Verifies for all `0 ≤ k ≤ k_max` that the sequence `(k+1)/(2k+1)` is
/// strictly decreasing and that `μ(F) = 1/2 + 1/(4k+6)` stays below
/// `μ(E) = 1/2 + 1/(4k+2)`, in exact rational arithmetic.
pub fn check_slope_monotonicity(k_max: i64) -> bool {
    assert!(k_max >= 1, "k_max must be at least 1");
    let half = ratio(1, 2);
    for k in 0..=k_max {
        let seq_k = ratio(k + 1, 2 * k + 1);
        let seq_next = ratio(k + 2, 2 * k + 3);
        if seq_k <= seq_next {
            return false;
        }
        let mu_e = &half + ratio(1, 4 * k + 2);
        let mu_f = &half + ratio(1, 4 * k + 6);
        if mu_f >= mu_e {
            return false;
        }
    }
    true
}

/// The minimal positive solution of `z² − D y² = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "crate::jsonnum::bigint")]
    pub d: BigInt,
    #[serde(with = "crate::jsonnum::bigint")]
    pub z: BigInt,
    #[serde(with = "crate::jsonnum::bigint")]
    pub y: BigInt,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DiophantineError {
    #[error("z² − {d}·y² = 1 has no solution with y ≥ 1 (D must be a non-square ≥ 2)")]
    NoNontrivialSolution { d: BigInt },
}

/// Fundamental solution of the Pell equation via the continued-fraction
/// expansion of √D: convergents are generated until one satisfies
/// `z² − D y² = 1`. Every solution appears among the convergents and their
/// denominators grow strictly, so the first hit is the minimal one.
pub fn pell_minimal(d: &BigInt) -> Result<PellSolution, DiophantineError> {
    if *d < BigInt::from(2) {
        return Err(DiophantineError::NoNontrivialSolution { d: d.clone() });
    }
    let a0 = d.sqrt();
    if &a0 * &a0 == *d {
        return Err(DiophantineError::NoNontrivialSolution { d: d.clone() });
    }

    // √D = [a0; a1, a2, ...] with the standard P/Q recurrence.
    let mut p = BigInt::zero();
    let mut q = BigInt::one();
    let mut a = a0.clone();

    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());

    loop {
        if !k.is_zero() && &h * &h - d * &k * &k == BigInt::one() {
            return Ok(PellSolution {
                d: d.clone(),
                z: h,
                y: k,
            });
        }
        p = &q * &a - &p;
        q = (d - &p * &p) / &q;
        a = (&a0 + &p) / &q;

        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Pell solution for `D = (g − 1)(n − 1)`.
pub fn pell_for_moduli(g: Genus, n: i64) -> Result<PellSolution, DiophantineError> {
    let d = BigInt::from(g.get() - 1) * BigInt::from(n - 1);
    pell_minimal(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> Genus {
        Genus::new(v).unwrap()
    }

    #[test]
    fn integer_range_helpers() {
        let open = integers_in_open(&ratio(3, 2), &ratio(3, 1));
        assert_eq!(open, vec![BigInt::from(2)]);
        assert!(integers_in_open(&ratio(1, 1), &ratio(2, 1)).is_empty());
        assert_eq!(
            integers_in_closed(&ratio(0, 1), &ratio(3, 2)),
            vec![BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            integers_in_closed(&ratio(-3, 2), &ratio(1, 2)),
            vec![BigInt::from(-1), BigInt::from(0)]
        );
    }

    #[test]
    fn intervals_small_k() {
        let report = check_stability_intervals(0);
        assert!(report.violations.is_empty());
        // r = 1 sweeps (1/2, 1)
        let first = &report.checked_ranges[0];
        assert_eq!(first.kind, RangeKind::ImageDegree);
        assert_eq!(first.lower, ratio(1, 2));
        assert_eq!(first.upper, ratio(1, 1));

        let report = check_stability_intervals(1);
        assert!(report.violations.is_empty());
        // families: 3 image ranks + 2 destabilizer ranks + 4 kernel ranks
        assert_eq!(report.checked_ranges.len(), 3 + 2 + 4);

        for k in 0..=50 {
            assert!(check_stability_intervals(k).violations.is_empty());
        }
    }

    #[test]
    fn slope_monotonicity_small() {
        assert!(check_slope_monotonicity(1));
        assert!(check_slope_monotonicity(1000));
        // spot values: 1/1 > 2/3, 2/3 > 3/5
        assert!(ratio(1, 1) > ratio(2, 3));
        assert!(ratio(2, 3) > ratio(3, 5));
    }

    #[test]
    fn slope_monotonicity_large_sweep() {
        assert!(check_slope_monotonicity(1_000_000));
    }

    #[test]
    fn pell_small_solutions() {
        let sol = pell_minimal(&BigInt::from(2)).unwrap();
        assert_eq!((sol.z, sol.y), (BigInt::from(3), BigInt::from(2)));

        let sol = pell_minimal(&BigInt::from(18)).unwrap();
        assert_eq!((sol.z, sol.y), (BigInt::from(17), BigInt::from(4)));

        let sol = pell_minimal(&BigInt::from(3)).unwrap();
        assert_eq!((sol.z, sol.y), (BigInt::from(2), BigInt::from(1)));
    }

    #[test]
    fn pell_rejects_squares_and_small_d() {
        for d in [-4i64, 0, 1, 4, 9, 100] {
            assert!(matches!(
                pell_minimal(&BigInt::from(d)),
                Err(DiophantineError::NoNontrivialSolution { .. })
            ));
        }
    }

    #[test]
    fn pell_postcondition_holds_broadly() {
        for d in 2..200i64 {
            let big = BigInt::from(d);
            let root = big.sqrt();
            if &root * &root == big {
                continue;
            }
            let sol = pell_minimal(&big).unwrap();
            assert_eq!(&sol.z * &sol.z - &big * &sol.y * &sol.y, BigInt::one());
            assert!(sol.y >= BigInt::one());
        }
    }

    #[test]
    fn pell_for_moduli_examples() {
        let sol = pell_for_moduli(g(3), 2).unwrap();
        assert_eq!(
            (sol.d, sol.z, sol.y),
            (BigInt::from(2), BigInt::from(3), BigInt::from(2))
        );

        let sol = pell_for_moduli(g(10), 3).unwrap();
        assert_eq!(
            (sol.d, sol.z, sol.y),
            (BigInt::from(18), BigInt::from(17), BigInt::from(4))
        );

        assert!(matches!(
            pell_for_moduli(g(5), 2),
            Err(DiophantineError::NoNontrivialSolution { .. })
        ));
    }

    #[test]
    fn interval_report_serializes() {
        let report = check_stability_intervals(1);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["k"], serde_json::json!(1));
        assert_eq!(json["violations"], serde_json::json!([]));
        assert_eq!(
            json["checked_ranges"][0]["lower"],
            serde_json::json!({"num": 1, "den": 2})
        );
        let back: IntervalReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, report);
    }
}
