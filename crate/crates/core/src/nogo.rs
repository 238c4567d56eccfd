//! Exhaustive check that no phased-cyclic unitary shifts every XZ^k
//! eigenbasis simultaneously.
//!
//! A phased-cyclic candidate acts on the computational basis as
//! `U|j⟩ = a_j|j+1⟩` with unit-modulus phases `a_j = ω^{e_j}`. Demanding
//! that U send element T of every basis k to some element t_k ≠ T forces,
//! for each k, a specific phase vector; the vectors for two bases agree
//! only when `(k − t_k) mod d` is a constant. The search enumerates every
//! assignment of targets and counts the consistent ones; the count is zero
//! for every prime, which is verified here in exact integer arithmetic mod
//! d with no floating point on the decision path.

use serde::Serialize;
use thiserror::Error;

use crate::qudit::{
    equal_up_to_phase, modd, mub_family, BasisIndex, Dimension, ElementIndex, MubFamily,
    QuditState, UnitaryMatrix,
};
use crate::scalar::Scalar;

use ndarray::Array2;

/// Default enumeration budget: admits d·(d−1)^d for every prime d ≤ 7.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_100_000;

/// A hypothetical simultaneous shift: source element T and a target
/// t_k ≠ T for every basis exponent k ∈ 0..d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftAssignment {
    pub source: usize,
    pub targets: Vec<usize>,
}

/// Unit-modulus column phases a_j = ω^{e_j} of a phased-cyclic candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseVector {
    pub exponents: Vec<usize>,
}

/// Outcome of the exhaustive search.
#[derive(Debug, Clone, Serialize)]
pub struct NoGoReport {
    pub d: usize,
    pub searched: u64,
    pub consistent: u64,
    pub witnesses: Vec<ShiftAssignment>,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum NogoError {
    #[error("search space {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("exact search and matrix reconstruction disagree for T={element}, targets {targets:?}")]
    MatrixCheckContradiction { element: usize, targets: Vec<usize> },
}

/// The phase exponents e_j = (t(d−j−1) − T(d−j) + kj) mod d that a
/// phased-cyclic unitary must carry to send element `source` of basis
/// exponent k to element `target`.
pub fn derive_phases(dim: Dimension, k: usize, source: usize, target: usize) -> PhaseVector {
    let d = dim.get();
    let exponents = (0..d)
        .map(|j| {
            let e = target as i64 * (d as i64 - j as i64 - 1) - source as i64 * (d - j) as i64
                + (k * j) as i64;
            modd(e, d)
        })
        .collect();
    PhaseVector { exponents }
}

/// The matrix U|j⟩ = ω^{e_j}|j+1 mod d⟩ of a phased-cyclic candidate.
pub fn phased_cyclic_matrix<T: Scalar>(dim: Dimension, phases: &PhaseVector) -> UnitaryMatrix<T> {
    let d = dim.get();
    let mut mat = Array2::zeros((d, d));
    for (j, &e) in phases.exponents.iter().enumerate() {
        mat[[(j + 1) % d, j]] = dim.omega_pow::<T>(e as i64);
    }
    UnitaryMatrix::new(mat).expect("unit-modulus cyclic matrix is unitary")
}

/// True iff the per-basis phase vectors agree: (k − t_k) mod d takes a
/// single value over all k.
pub fn assignment_consistent(dim: Dimension, asg: &ShiftAssignment) -> bool {
    let d = dim.get();
    debug_assert_eq!(asg.targets.len(), d);
    let first = modd(0i64 - asg.targets[0] as i64, d);
    asg.targets
        .iter()
        .enumerate()
        .all(|(k, &t)| modd(k as i64 - t as i64, d) == first)
}

/// Walks all d·(d−1)^d shift assignments (t_k ≠ T everywhere), calling
/// `visit` on each; the assignment buffer is reused between calls.
fn enumerate_assignments(
    d: usize,
    mut visit: impl FnMut(&ShiftAssignment),
) {
    for source in 0..d {
        // digits in base d−1 select targets from Z_d \ {source}
        let choices: Vec<usize> = (0..d).filter(|&t| t != source).collect();
        let mut digits = vec![0usize; d];
        let mut asg = ShiftAssignment {
            source,
            targets: digits.iter().map(|&i| choices[i]).collect(),
        };
        loop {
            for (k, &i) in digits.iter().enumerate() {
                asg.targets[k] = choices[i];
            }
            visit(&asg);
            let mut pos = 0;
            loop {
                if pos == d {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < d - 1 {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
    }
}

/// Exhaustively searches all d·(d−1)^d shift assignments, counting the
/// consistent ones (expected: none) and spot-checking a sample at the
/// matrix level: the candidate built from the basis-0 phases must fail to
/// realize the assignment on at least one basis.
pub fn nogo_search<T: Scalar>(dim: Dimension, budget: u64) -> Result<NoGoReport, NogoError> {
    let d = dim.get();
    let required: u128 = d as u128 * (d as u128 - 1).pow(d as u32);
    if required > budget as u128 {
        return Err(NogoError::BudgetExceeded { required, budget });
    }

    let fam = mub_family::<T>(dim).expect("family construction is verified for prime d");
    let stride = ((required as u64) / 32).max(1);

    let mut searched = 0u64;
    let mut consistent = 0u64;
    let mut witnesses = Vec::new();
    let mut contradiction: Option<ShiftAssignment> = None;

    enumerate_assignments(d, |asg| {
        searched += 1;
        if assignment_consistent(dim, asg) {
            consistent += 1;
            if witnesses.len() < 16 {
                witnesses.push(asg.clone());
            }
        }
        if searched.is_multiple_of(stride) && contradiction.is_none() {
            let phases = derive_phases(dim, 0, asg.source, asg.targets[0]);
            let u = phased_cyclic_matrix::<T>(dim, &phases);
            if realizes_assignment(&u, &fam, asg) {
                contradiction = Some(asg.clone());
            }
        }
    });

    if let Some(asg) = contradiction {
        return Err(NogoError::MatrixCheckContradiction {
            element: asg.source,
            targets: asg.targets,
        });
    }

    Ok(NoGoReport {
        d,
        searched,
        consistent,
        witnesses,
    })
}

/// True iff `u` sends element `source` of each basis k+1 to the assigned
/// target, up to global phase, for every k.
fn realizes_assignment<T: Scalar>(
    u: &UnitaryMatrix<T>,
    fam: &MubFamily<T>,
    asg: &ShiftAssignment,
) -> bool {
    let dim = fam.dim();
    let source = ElementIndex::new(asg.source, dim).expect("in range");
    asg.targets.iter().enumerate().all(|(k, &t)| {
        let b = BasisIndex::new(k + 1, dim).expect("in range");
        let image = u.apply(fam.state(b, source)).expect("same d");
        let target: &QuditState<T> = fam.state(b, ElementIndex::new(t, dim).expect("in range"));
        equal_up_to_phase(&image, target, T::TOL)
    })
}

/// Counts consistent assignments when exactly one basis exponent
/// `exempt_k` is allowed to keep its source (t_k = T permitted there,
/// forbidden elsewhere). Non-zero counts show the main search is not
/// vacuously empty.
pub fn relaxed_search(dim: Dimension, exempt_k: usize) -> u64 {
    let d = dim.get();
    assert!(exempt_k < d);
    let mut count = 0u64;
    for source in 0..d {
        // a consistent family has t_k = k − x for a single x; scan all x
        for x in 0..d {
            let targets: Vec<usize> = (0..d).map(|k| modd(k as i64 - x as i64, d)).collect();
            let admissible = targets
                .iter()
                .enumerate()
                .all(|(k, &t)| t != source || k == exempt_k);
            if admissible
                && assignment_consistent(
                    dim,
                    &ShiftAssignment {
                        source,
                        targets: targets.clone(),
                    },
                )
            {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn derive_phases_qubit_example() {
        // d=2, k=0, T=0, t=1: e_j = t(1−j) mod 2 = (1, 0), i.e. a = (−1, 1)
        let p = derive_phases(dim(2), 0, 0, 1);
        assert_eq!(p.exponents, vec![1, 0]);
        let u = phased_cyclic_matrix::<f64>(dim(2), &p);
        assert!((u.entries()[[1, 0]] - Complex::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((u.entries()[[0, 1]] - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn phase_ratio_is_constant_in_j() {
        // e_j − e_{j+1} ≡ t − T − k for every j, so a_{j+1}/a_j = ω^{T+k−t}
        for d in [2usize, 3, 5, 7] {
            let dm = dim(d);
            for k in 0..d {
                for source in 0..d {
                    for target in 0..d {
                        let p = derive_phases(dm, k, source, target);
                        let want = modd(
                            target as i64 - source as i64 - k as i64,
                            d,
                        );
                        for j in 0..d - 1 {
                            let diff = modd(
                                p.exponents[j] as i64 - p.exponents[j + 1] as i64,
                                d,
                            );
                            assert_eq!(diff, want, "d={d} k={k} T={source} t={target} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ratio_collapses_to_basis_exponent_when_source_equals_target() {
        // with T = t the ratio a_{j+1}/a_j reduces to ω^k
        let dm = dim(3);
        for k in 0..3 {
            for t in 0..3 {
                let p = derive_phases(dm, k, t, t);
                let diff = modd(p.exponents[1] as i64 - p.exponents[0] as i64, 3);
                assert_eq!(diff, modd(0 - (t as i64 - t as i64 - k as i64), 3) % 3);
                assert_eq!(diff, k % 3);
            }
        }
    }

    #[test]
    fn consistency_examples() {
        let dm = dim(3);
        // k − t_k = (−1, −1, 2) ≡ (2, 2, 2): consistent ratios, but
        // t_2 = 0 equals T so the main search never visits it
        let asg = ShiftAssignment {
            source: 0,
            targets: vec![1, 2, 0],
        };
        assert!(assignment_consistent(dm, &asg));
        assert!(asg.targets.contains(&asg.source));

        let d2 = dim(2);
        let asg = ShiftAssignment {
            source: 0,
            targets: vec![1, 1],
        };
        assert!(!assignment_consistent(d2, &asg));
    }

    #[test]
    fn every_consistent_family_collapses_onto_its_source() {
        // scanning all target maps with no exclusion: consistency forces
        // t_{k'} = T for some k'
        for d in [2usize, 3, 5] {
            let dm = dim(d);
            for source in 0..d {
                let mut digits = vec![0usize; d];
                loop {
                    let asg = ShiftAssignment {
                        source,
                        targets: digits.clone(),
                    };
                    if assignment_consistent(dm, &asg) {
                        assert!(
                            asg.targets.contains(&source),
                            "d={d}: consistent family avoiding its source: {asg:?}"
                        );
                    }
                    let mut pos = 0;
                    loop {
                        if pos == d {
                            break;
                        }
                        digits[pos] += 1;
                        if digits[pos] < d {
                            break;
                        }
                        digits[pos] = 0;
                        pos += 1;
                    }
                    if pos == d {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn search_counts_and_empty_witness_lists() {
        let cases = [(2usize, 2u64), (3, 24), (5, 5120)];
        for (d, searched) in cases {
            let report = nogo_search::<f64>(dim(d), DEFAULT_SEARCH_BUDGET).unwrap();
            assert_eq!(report.searched, searched, "d={d}");
            assert_eq!(report.consistent, 0, "d={d}");
            assert!(report.witnesses.is_empty(), "d={d}");
        }
    }

    #[test]
    fn budget_rejects_d11() {
        let err = nogo_search::<f64>(dim(11), DEFAULT_SEARCH_BUDGET).unwrap_err();
        assert!(matches!(err, NogoError::BudgetExceeded { .. }));
    }

    #[test]
    fn relaxed_search_is_nonempty() {
        for d in [2usize, 3, 5, 7] {
            for exempt in 0..d {
                assert!(relaxed_search(dim(d), exempt) >= 1, "d={d} exempt={exempt}");
            }
        }
    }

    #[test]
    fn single_basis_shifts_do_exist_at_matrix_level() {
        // the candidate built for basis k genuinely shifts basis k
        for d in [2usize, 3, 5] {
            let dm = dim(d);
            let fam = mub_family::<f64>(dm).unwrap();
            for k in 0..d {
                let b = BasisIndex::new(k + 1, dm).unwrap();
                for source in 0..d {
                    let target = (source + 1) % d;
                    let p = derive_phases(dm, k, source, target);
                    let u = phased_cyclic_matrix::<f64>(dm, &p);
                    let img = u
                        .apply(fam.state(b, ElementIndex::new(source, dm).unwrap()))
                        .unwrap();
                    assert!(
                        equal_up_to_phase(
                            &img,
                            fam.state(b, ElementIndex::new(target, dm).unwrap()),
                            1e-9
                        ),
                        "d={d} k={k} T={source}"
                    );
                }
            }
        }
    }

    #[test]
    fn sampled_candidates_fail_some_basis() {
        // direct form of the matrix spot-check inside nogo_search
        for d in [2usize, 3] {
            let dm = dim(d);
            let fam = mub_family::<f64>(dm).unwrap();
            let mut all_failed = true;
            enumerate_assignments(d, |asg| {
                let p = derive_phases(dm, 0, asg.source, asg.targets[0]);
                let u = phased_cyclic_matrix::<f64>(dm, &p);
                if realizes_assignment(&u, &fam, asg) {
                    all_failed = false;
                }
            });
            assert!(all_failed, "d={d}: some assignment was realized");
        }
    }

    #[test]
    fn report_serializes_to_the_wire_shape() {
        let report = nogo_search::<f64>(dim(3), DEFAULT_SEARCH_BUDGET).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["d"], 3);
        assert_eq!(json["searched"], 24);
        assert_eq!(json["consistent"], 0);
        assert_eq!(json["witnesses"], serde_json::json!([]));
    }
}
