//! The blind encoding/decoding protocol over strings of d qudits drawn
//! from d distinct bases, and the partial-string uncertainty simulation.
//!
//! Bob prepares one qudit per basis 1..=d (the computational basis d+1 is
//! reserved), recording privately what he prepared. Alice builds a single
//! composite unitary from her codeword and applies it to every position
//! identically: her code path never reads basis or element metadata. Bob
//! decodes by locating each returned state within its known basis.
//!
//! Randomness is ChaCha8 seeded from a caller-supplied u64; independent
//! trials use the seed's substreams, so every simulation is reproducible
//! across platforms and schedules.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::infotheory::{analytic_posterior, shannon_entropy, EntropyReport};
use crate::qudit::{
    equal_up_to_phase, modd, mub_state, BasisIndex, Dimension, ElementIndex, MubFamily,
    QuditState,
};
use crate::scalar::Scalar;
use crate::shift::{composite_unitary, solve_exponents, ShiftError, ShiftTable, UnitaryId};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ProtocolError {
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("position {position}: state matches no element of basis {basis}")]
    UnidentifiedState { position: usize, basis: usize },
    #[error("codeword length {got}, want {want}")]
    CodewordLength { got: usize, want: usize },
    #[error("string has {got} positions, record covers {want}")]
    RecordMismatch { got: usize, want: usize },
    #[error("prepared bases are not pairwise distinct")]
    DuplicateBasis,
    #[error("position {position}: state is not the recorded basis element")]
    StateMetadataMismatch { position: usize },
    #[error("observed-qudit count {m} outside 1..={d}")]
    QuditCountOutOfRange { m: usize, d: usize },
}

/// Per-basis shift amounts (a_1, …, a_d): one of the d^d messages.
/// Entry l−1 is the shift Alice intends for the qudit prepared in basis l.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Codeword {
    values: Vec<usize>,
}

impl Codeword {
    /// Length must be d; entries are reduced mod d.
    pub fn new(values: Vec<usize>, dim: Dimension) -> Result<Self, ProtocolError> {
        let d = dim.get();
        if values.len() != d {
            return Err(ProtocolError::CodewordLength {
                got: values.len(),
                want: d,
            });
        }
        Ok(Self {
            values: values.into_iter().map(|a| a % d).collect(),
        })
    }

    pub fn zero(dim: Dimension) -> Self {
        Self {
            values: vec![0; dim.get()],
        }
    }

    pub fn random(dim: Dimension, rng: &mut impl Rng) -> Self {
        let d = dim.get();
        Self {
            values: (0..d).map(|_| rng.gen_range(0..d)).collect(),
        }
    }

    /// All d^d codewords in odometer order. Only sensible for small d.
    pub fn all(dim: Dimension) -> impl Iterator<Item = Codeword> {
        let d = dim.get();
        let total = (d as u64).pow(d as u32);
        (0..total).map(move |mut i| {
            let values = (0..d)
                .map(|_| {
                    let v = (i % d as u64) as usize;
                    i /= d as u64;
                    v
                })
                .collect();
            Codeword { values }
        })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// One prepared position: basis, element, and the state itself.
#[derive(Debug, Clone)]
pub struct PreparedQudit<T: Scalar> {
    pub basis: BasisIndex,
    pub element: ElementIndex,
    pub state: QuditState<T>,
}

/// Bob's string of d qudits, one per basis 1..=d.
#[derive(Debug, Clone)]
pub struct PreparedString<T: Scalar> {
    qudits: Vec<PreparedQudit<T>>,
}

impl<T: Scalar> PreparedString<T> {
    /// Validates that bases are pairwise distinct and that each state is
    /// the recorded basis element (up to global phase).
    pub fn new(qudits: Vec<PreparedQudit<T>>, dim: Dimension) -> Result<Self, ProtocolError> {
        let mut seen = vec![false; dim.get() + 2];
        for (position, q) in qudits.iter().enumerate() {
            if seen[q.basis.get()] {
                return Err(ProtocolError::DuplicateBasis);
            }
            seen[q.basis.get()] = true;
            let reference = mub_state(dim, q.basis, q.element);
            if !equal_up_to_phase(&q.state, &reference, T::TOL) {
                return Err(ProtocolError::StateMetadataMismatch { position });
            }
        }
        Ok(Self { qudits })
    }

    pub fn positions(&self) -> &[PreparedQudit<T>] {
        &self.qudits
    }

    pub fn len(&self) -> usize {
        self.qudits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qudits.is_empty()
    }

    /// The private record for this string.
    pub fn record(&self, seed: u64) -> PreparationRecord {
        PreparationRecord {
            seed,
            entries: self.qudits.iter().map(|q| (q.basis, q.element)).collect(),
        }
    }
}

/// Bob's private copy of what was prepared at each position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreparationRecord {
    pub seed: u64,
    pub entries: Vec<(BasisIndex, ElementIndex)>,
}

/// Per-position shift indicators observed by Bob.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ObservationPattern {
    pub shifted: Vec<bool>,
}

/// Bob prepares d qudits: the bases are a uniformly random permutation of
/// 1..=d, the elements uniform in Z_d. Identical seeds give identical
/// strings.
pub fn bob_prepare<T: Scalar>(
    dim: Dimension,
    fam: &MubFamily<T>,
    seed: u64,
) -> (PreparedString<T>, PreparationRecord) {
    let d = dim.get();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases: Vec<usize> = (1..=d).collect();
    bases.shuffle(&mut rng);
    let qudits = bases
        .into_iter()
        .map(|b| {
            let basis = BasisIndex::new(b, dim).expect("in range");
            let element = ElementIndex::new(rng.gen_range(0..d), dim).expect("in range");
            PreparedQudit {
                basis,
                element,
                state: fam.state(basis, element).clone(),
            }
        })
        .collect();
    let string = PreparedString { qudits };
    let record = string.record(seed);
    (string, record)
}

/// Alice encodes blindly: one composite unitary, solved from the codeword
/// and the shift table, applied to every position's state. Only the states
/// are read; basis and element metadata never influence the output.
pub fn alice_encode<T: Scalar>(
    string: &PreparedString<T>,
    a: &Codeword,
    table: &ShiftTable,
) -> Result<Vec<QuditState<T>>, ProtocolError> {
    let exps = solve_exponents(table, a)?;
    let v = composite_unitary::<T>(table.dim(), &exps);
    Ok(string
        .qudits
        .iter()
        .map(|q| v.apply(&q.state).expect("same d by construction"))
        .collect())
}

/// Bob decodes: each returned state is located within its known basis and
/// the element shift lands in the codeword slot of that basis.
pub fn bob_decode<T: Scalar>(
    encoded: &[QuditState<T>],
    record: &PreparationRecord,
    fam: &MubFamily<T>,
) -> Result<Codeword, ProtocolError> {
    let dim = fam.dim();
    let d = dim.get();
    if encoded.len() != record.entries.len() {
        return Err(ProtocolError::RecordMismatch {
            got: encoded.len(),
            want: record.entries.len(),
        });
    }
    let mut values = vec![0usize; d];
    for (position, (state, &(basis, element))) in
        encoded.iter().zip(record.entries.iter()).enumerate()
    {
        let received = fam
            .basis(basis)
            .iter()
            .position(|cand| equal_up_to_phase(state, cand, T::TOL))
            .ok_or(ProtocolError::UnidentifiedState {
                position,
                basis: basis.get(),
            })?;
        values[basis.get() - 1] = modd(received as i64 - element.get() as i64, d);
    }
    Ok(Codeword { values })
}

/// True iff distinct codewords produce pairwise distinguishable output
/// strings on a fixed preparation: exhaustive over all d^d codewords for
/// d ≤ 3, over 512 random codewords beyond.
pub fn uniqueness_check<T: Scalar>(
    dim: Dimension,
    fam: &MubFamily<T>,
    table: &ShiftTable,
) -> Result<bool, ProtocolError> {
    let (string, _) = bob_prepare(dim, fam, 0);
    let codewords: Vec<Codeword> = if dim.get() <= 3 {
        Codeword::all(dim).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        (0..512).map(|_| Codeword::random(dim, &mut rng)).collect()
    };
    let mut outputs = Vec::with_capacity(codewords.len());
    for a in &codewords {
        outputs.push(alice_encode(&string, a, table)?);
    }
    for i in 0..outputs.len() {
        for j in i + 1..outputs.len() {
            if codewords[i] == codewords[j] {
                continue;
            }
            let all_equal = outputs[i]
                .iter()
                .zip(outputs[j].iter())
                .all(|(x, y)| equal_up_to_phase(x, y, T::TOL));
            if all_equal {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Monte-Carlo partial decoding: per trial, m distinct bases are drawn
/// from 1..=d+1, a hidden unitary is drawn from the d+2 ids, and Bob sees
/// only which positions shifted. The empirical posterior entropy is
/// tallied conditional on (bases, pattern) jointly, because a pattern's
/// meaning depends on which bases were drawn; Bob knows his bases.
///
/// Trial i uses substream i of the seed, so results are independent of
/// scheduling and identical across runs.
pub fn simulate_partial_decoding(
    dim: Dimension,
    table: &ShiftTable,
    m: usize,
    trials: u64,
    seed: u64,
) -> Result<EntropyReport, ProtocolError> {
    let d = dim.get();
    if m == 0 || m > d {
        return Err(ProtocolError::QuditCountOutOfRange { m, d });
    }
    let ids = UnitaryId::all(dim);
    let mut cells: BTreeMap<(Vec<usize>, ObservationPattern), Vec<u64>> = BTreeMap::new();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let mut all_bases: Vec<usize> = (1..=d + 1).collect();
        all_bases.shuffle(&mut rng);
        let mut bases = all_bases[..m].to_vec();
        bases.sort_unstable();
        let hidden = rng.gen_range(0..ids.len());
        let pattern = ObservationPattern {
            shifted: bases
                .iter()
                .map(|&b| {
                    let basis = BasisIndex::new(b, dim).expect("in range");
                    table.shift(ids[hidden], basis) != 0
                })
                .collect(),
        };
        cells.entry((bases, pattern)).or_insert_with(|| vec![0; ids.len()])[hidden] += 1;
    }

    let mut empirical = 0.0f64;
    for counts in cells.values() {
        let n: u64 = counts.iter().sum();
        let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        let h = shannon_entropy(&probs).expect("counts normalize by construction");
        empirical += (n as f64 / trials as f64) * h;
    }

    Ok(EntropyReport {
        d,
        m,
        analytic_bits: analytic_posterior::<f64>(dim, m).expect("m validated"),
        empirical_bits: Some(empirical),
        trials: Some(trials),
    })
}
