//! Mutually unbiased bases in prime dimension: construction and
//! verification of the maximal d+1 set, the exhaustive shift no-go search,
//! and simulation of blind encoding of classical messages into strings of
//! qudits.
//!
//! * [`qudit`] — dense complex states and unitaries, generalized Pauli
//!   operators, MUB construction and invariant checks.
//! * [`shift`] — the d+2 shift unitaries, the oracle-extracted shift
//!   table, and the GF(d) exponent solver.
//! * [`nogo`] — exhaustive search showing no phased-cyclic unitary shifts
//!   every basis simultaneously.
//! * [`protocol`] — Bob prepares, Alice encodes blindly, Bob decodes;
//!   plus the partial-string uncertainty simulation.
//! * [`infotheory`] — entropy, capacity and efficiency figures in bits.
//!
//! All state and operator math is generic over the [`Scalar`] backing
//! float; the aliases below fix the two supported precisions. f64 is the
//! default choice everywhere precision matters.

pub mod infotheory;
pub mod nogo;
pub mod protocol;
pub mod qudit;
pub mod scalar;
pub mod shift;

pub use infotheory::{
    analytic_posterior, capacity, efficiency, efficiency_row, efficiency_table,
    initial_uncertainty, max_info, primes_through, shannon_entropy, EfficiencyRow, EntropyError,
    EntropyReport,
};
pub use nogo::{
    assignment_consistent, derive_phases, nogo_search, phased_cyclic_matrix, relaxed_search,
    NoGoReport, NogoError, PhaseVector, ShiftAssignment, DEFAULT_SEARCH_BUDGET,
};
pub use protocol::{
    alice_encode, bob_decode, bob_prepare, simulate_partial_decoding, uniqueness_check, Codeword,
    ObservationPattern, PreparationRecord, PreparedQudit, PreparedString, ProtocolError,
};
pub use qudit::{
    check_commutation, commutation_defect, equal_up_to_phase, mub_family, mub_state, pauli_x,
    pauli_z, BasisIndex, Dimension, ElementIndex, MubError, MubFamily, QuditError, QuditState,
    UnitaryMatrix,
};
pub use scalar::Scalar;
pub use shift::{
    build_shift_table, composite_unitary, shift_unitary, shifted_bases_count, solve_exponents,
    ExponentVector, ShiftError, ShiftTable, ShiftTableReport, UnitaryId,
};

/// Complex amplitude at double precision.
pub type C64 = num_complex::Complex<f64>;
/// Complex amplitude at single precision.
pub type C32 = num_complex::Complex<f32>;

pub type State64 = qudit::QuditState<f64>;
pub type State32 = qudit::QuditState<f32>;
pub type Unitary64 = qudit::UnitaryMatrix<f64>;
pub type Unitary32 = qudit::UnitaryMatrix<f32>;
pub type Mub64 = qudit::MubFamily<f64>;
pub type Mub32 = qudit::MubFamily<f32>;
