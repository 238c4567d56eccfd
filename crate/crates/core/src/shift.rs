//! The d+2 shift unitaries, the brute-force oracle that extracts how each
//! one permutes every basis, and the GF(d) solver that recovers encoding
//! exponents from per-basis shift targets.
//!
//! The oracle is the source of truth for shift amounts: nothing downstream
//! assumes the offsets are +1, only that each unitary acts on each basis as
//! some constant offset t → t ⊕ c (which the oracle verifies element by
//! element).

use serde::Serialize;
use thiserror::Error;

use crate::protocol::Codeword;
use crate::qudit::{
    equal_up_to_phase, modd, pauli_x, pauli_z, BasisIndex, Dimension, MubFamily, UnitaryMatrix,
};
use crate::scalar::Scalar;

/// One of the d+2 unitaries available for blind shifting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitaryId {
    /// X·Z^m with m ∈ 0..d.
    XZ(usize),
    /// The phase operator Z.
    ZGate,
    Identity,
}

impl UnitaryId {
    /// All d+2 ids in table order: XZ^0, …, XZ^{d−1}, Z, I.
    pub fn all(dim: Dimension) -> Vec<UnitaryId> {
        let mut ids: Vec<UnitaryId> = (0..dim.get()).map(UnitaryId::XZ).collect();
        ids.push(UnitaryId::ZGate);
        ids.push(UnitaryId::Identity);
        ids
    }

    pub fn label(self) -> String {
        match self {
            UnitaryId::XZ(m) => format!("XZ^{m}"),
            UnitaryId::ZGate => "Z".to_string(),
            UnitaryId::Identity => "I".to_string(),
        }
    }

    fn row(self, dim: Dimension) -> usize {
        match self {
            UnitaryId::XZ(m) => {
                assert!(m < dim.get(), "XZ exponent {m} outside 0..{}", dim.get());
                m
            }
            UnitaryId::ZGate => dim.get(),
            UnitaryId::Identity => dim.get() + 1,
        }
    }
}

/// Errors from oracle extraction and exponent solving.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ShiftError {
    #[error("{unitary} maps basis {b} element {t} outside the basis")]
    ImageOutsideBasis { unitary: String, b: usize, t: usize },
    #[error("{unitary} is not a constant offset on basis {b}: offsets {offsets:?}")]
    InconsistentShift {
        unitary: String,
        b: usize,
        offsets: Vec<usize>,
    },
    #[error(
        "no exponent vector realizes shifts {codeword:?} over GF({d}); \
         the target lies outside the span of the generators' shift patterns"
    )]
    NoSolution { d: usize, codeword: Vec<usize> },
}

/// The matrix of a shift unitary: X·Z^m, Z, or I.
pub fn shift_unitary<T: Scalar>(dim: Dimension, u: UnitaryId) -> UnitaryMatrix<T> {
    match u {
        UnitaryId::XZ(m) => {
            assert!(m < dim.get(), "XZ exponent {m} outside 0..{}", dim.get());
            pauli_x(dim).dot(&pauli_z(dim).pow(m))
        }
        UnitaryId::ZGate => pauli_z(dim),
        UnitaryId::Identity => UnitaryMatrix::identity(dim.get()),
    }
}

/// Oracle-extracted shift amounts: entry (u, b) = c means u maps element t
/// of basis b to element t ⊕ c, for every t, up to global phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftTable {
    dim: Dimension,
    /// Rows in `UnitaryId::all` order, columns b = 1..=d+1.
    shifts: Vec<Vec<usize>>,
}

impl ShiftTable {
    /// Assembles a table directly, bypassing the oracle. Row order is
    /// `UnitaryId::all`, column order b = 1..=d+1.
    pub fn from_shifts(dim: Dimension, shifts: Vec<Vec<usize>>) -> Self {
        let d = dim.get();
        assert_eq!(shifts.len(), d + 2, "need d+2 rows");
        assert!(shifts.iter().all(|r| r.len() == d + 1), "need d+1 columns");
        assert!(
            shifts.iter().all(|r| r.iter().all(|&c| c < d)),
            "offsets must be reduced mod d"
        );
        Self { dim, shifts }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn shift(&self, u: UnitaryId, b: BasisIndex) -> usize {
        self.shifts[u.row(self.dim)][b.get() - 1]
    }

    /// The JSON-facing view: integer matrix plus row and column legends.
    pub fn report(&self) -> ShiftTableReport {
        let d = self.dim.get();
        let rows = UnitaryId::all(self.dim)
            .into_iter()
            .map(UnitaryId::label)
            .collect();
        let columns = (1..=d + 1)
            .map(|b| {
                if b == d + 1 {
                    format!("basis {b} (computational)")
                } else {
                    format!("basis {b} (XZ^{})", b - 1)
                }
            })
            .collect();
        ShiftTableReport {
            d,
            rows,
            columns,
            shifts: self.shifts.clone(),
        }
    }
}

/// Serializable (d+2) × (d+1) shift matrix with legends.
#[derive(Debug, Clone, Serialize)]
pub struct ShiftTableReport {
    pub d: usize,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub shifts: Vec<Vec<usize>>,
}

/// Extracts the shift table by applying every unitary to every basis
/// element and locating the image within the basis up to global phase.
///
/// Fails if an image leaves its basis or if the induced index map is not a
/// single constant offset; for this operator family on a verified MUB set,
/// neither ever happens.
pub fn build_shift_table<T: Scalar>(
    dim: Dimension,
    fam: &MubFamily<T>,
) -> Result<ShiftTable, ShiftError> {
    let d = dim.get();
    let mut shifts = Vec::with_capacity(d + 2);
    for u in UnitaryId::all(dim) {
        let matrix = shift_unitary::<T>(dim, u);
        let mut row = Vec::with_capacity(d + 1);
        for b in BasisIndex::all(dim) {
            let basis = fam.basis(b);
            let mut offsets = Vec::with_capacity(d);
            for (t, state) in basis.iter().enumerate() {
                let image = matrix.apply(state).expect("same d by construction");
                let target = basis
                    .iter()
                    .position(|cand| equal_up_to_phase(&image, cand, T::TOL))
                    .ok_or_else(|| ShiftError::ImageOutsideBasis {
                        unitary: u.label(),
                        b: b.get(),
                        t,
                    })?;
                offsets.push(modd(target as i64 - t as i64, d));
            }
            if offsets.iter().any(|&c| c != offsets[0]) {
                return Err(ShiftError::InconsistentShift {
                    unitary: u.label(),
                    b: b.get(),
                    offsets,
                });
            }
            row.push(offsets[0]);
        }
        shifts.push(row);
    }
    Ok(ShiftTable { dim, shifts })
}

/// Number of bases the unitary moves (shift ≠ 0).
pub fn shifted_bases_count(table: &ShiftTable, u: UnitaryId) -> usize {
    BasisIndex::all(table.dim)
        .filter(|&b| table.shift(u, b) != 0)
        .count()
}

/// Exponents (n_0, …, n_{d−1}, n_Z) of the encoding composite
/// Π_m (XZ^m)^{n_m} · Z^{n_Z}, all reduced mod d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentVector {
    pub xz: Vec<usize>,
    pub z: usize,
}

fn gf_inv(x: usize, d: usize) -> usize {
    // Fermat: x^{d−2} mod d, d prime, x != 0
    let mut result = 1usize;
    let mut base = x % d;
    let mut e = d - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % d;
        }
        base = base * base % d;
        e >>= 1;
    }
    result
}

/// Solves Σ_m n_m·c(XZ^m, l) + n_Z·c(Z, l) ≡ a_l (mod d) for every basis
/// l ∈ 1..=d, by Gaussian elimination over GF(d).
///
/// The system is underdetermined (d equations, d+1 unknowns); the canonical
/// solution zeroes non-pivot variables except n_Z, which, when free, takes
/// Σ a_l mod d. On a table whose off-diagonal entries are all 1 this
/// reduces to n_m = d − a_{m+1}, n_Z = Σ a_l.
///
/// Returns `NoSolution` when the target shifts lie outside the span of the
/// generators' shift patterns. Every composite of the d+2 unitaries equals
/// X^α·Z^β up to global phase, so that span has dimension at most 2; for
/// d ≥ 3 most codewords are therefore unreachable.
pub fn solve_exponents(table: &ShiftTable, a: &Codeword) -> Result<ExponentVector, ShiftError> {
    let dim = table.dim;
    let d = dim.get();
    assert_eq!(a.values().len(), d, "codeword length must equal d");

    // augmented rows: d+1 coefficient columns (n_0..n_{d−1}, n_Z) + rhs
    let mut rows: Vec<Vec<usize>> = (1..=d)
        .map(|l| {
            let b = BasisIndex::new(l, dim).expect("l in range");
            let mut row: Vec<usize> = (0..d)
                .map(|m| table.shift(UnitaryId::XZ(m), b))
                .collect();
            row.push(table.shift(UnitaryId::ZGate, b));
            row.push(a.values()[l - 1]);
            row
        })
        .collect();

    let cols = d + 1;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next_row = 0;
    for col in 0..cols {
        let Some(pivot) = (next_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(next_row, pivot);
        let inv = gf_inv(rows[next_row][col], d);
        for x in rows[next_row].iter_mut() {
            *x = *x * inv % d;
        }
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && row[col] != 0 {
                let factor = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    let sub = factor * p % d;
                    *x = modd(*x as i64 - sub as i64, d);
                }
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }

    if rows
        .iter()
        .any(|r| r[..cols].iter().all(|&x| x == 0) && r[cols] != 0)
    {
        return Err(ShiftError::NoSolution {
            d,
            codeword: a.values().to_vec(),
        });
    }

    let mut solution = vec![0usize; cols];
    if pivot_of_col[d].is_none() {
        solution[d] = a.values().iter().sum::<usize>() % d;
    }
    for col in (0..cols).rev() {
        if let Some(r) = pivot_of_col[col] {
            let mut value = rows[r][cols];
            for c in col + 1..cols {
                value = modd(
                    value as i64 - (rows[r][c] * solution[c]) as i64,
                    d,
                );
            }
            solution[col] = value;
        }
    }

    Ok(ExponentVector {
        xz: solution[..d].to_vec(),
        z: solution[d],
    })
}

/// The encoding composite Π_m (XZ^m)^{n_m} · Z^{n_Z}, multiplied ascending
/// in m with the Z factor last. Factor order only moves an unobservable
/// global phase.
pub fn composite_unitary<T: Scalar>(dim: Dimension, exps: &ExponentVector) -> UnitaryMatrix<T> {
    let mut acc = UnitaryMatrix::identity(dim.get());
    for (m, &n) in exps.xz.iter().enumerate() {
        acc = acc.dot(&shift_unitary::<T>(dim, UnitaryId::XZ(m)).pow(n));
    }
    acc.dot(&shift_unitary::<T>(dim, UnitaryId::ZGate).pow(exps.z))
}
