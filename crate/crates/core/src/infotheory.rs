//! Closed-form entropy, capacity and efficiency figures, in bits.
//!
//! Logarithms are base 2 throughout the crate.

use serde::Serialize;
use thiserror::Error;

use crate::qudit::Dimension;
use crate::scalar::{real_from_usize, Scalar};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EntropyError {
    #[error("probability {p} at index {index} is negative")]
    NegativeEntry { index: usize, p: f64 },
    #[error("probabilities sum to {sum}, want 1")]
    NotNormalized { sum: f64 },
    #[error("observed-qudit count {m} outside 1..={d}")]
    QuditCountOutOfRange { m: usize, d: usize },
}

/// Analytic and (optionally) empirical posterior uncertainty about the
/// hidden unitary after observing m qudits, in bits.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub d: usize,
    pub m: usize,
    pub analytic_bits: f64,
    pub empirical_bits: Option<f64>,
    pub trials: Option<u64>,
}

/// One row of the capacity-vs-maximal-information table.
#[derive(Debug, Clone, Serialize)]
pub struct EfficiencyRow {
    pub d: usize,
    pub capacity_bits: f64,
    pub max_info_bits: f64,
    pub ratio: f64,
}

/// −Σ p_i log2 p_i with 0·log 0 = 0. Validates the distribution.
pub fn shannon_entropy<T: Scalar>(p: &[T]) -> Result<T, EntropyError> {
    let mut sum = T::zero();
    for (index, &x) in p.iter().enumerate() {
        if x < T::zero() {
            return Err(EntropyError::NegativeEntry {
                index,
                p: x.to_f64().unwrap_or(f64::NAN),
            });
        }
        sum = sum + x;
    }
    let tol = T::from_f64(1e-9).unwrap_or(T::TOL);
    if (sum - T::one()).abs() > tol {
        return Err(EntropyError::NotNormalized {
            sum: sum.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut h = T::zero();
    for &x in p {
        if x > T::zero() {
            h = h - x * x.log2();
        }
    }
    Ok(h)
}

/// H(U) = log2(d+2): the uncertainty over the d+2 equiprobable unitaries
/// before any observation.
pub fn initial_uncertainty<T: Scalar>(dim: Dimension) -> T {
    real_from_usize::<T>(dim.get() + 2).log2()
}

/// Posterior uncertainty about the unitary after observing the shift
/// pattern of m qudits from m distinct bases.
///
/// One qudit leaves a two-way ambiguity on "no shift" (fixer or identity)
/// and a d-way ambiguity on "shift":
/// `(d/(d+2))·log2 d + (2/(d+2))`. From two qudits up, every pattern with
/// a zero identifies the unitary outright and only the all-shifted pattern
/// retains ambiguity: `((d−m+1)/(d+2))·log2(d−m+1)`, which reaches 0 at
/// m = d.
pub fn analytic_posterior<T: Scalar>(dim: Dimension, m: usize) -> Result<T, EntropyError> {
    let d = dim.get();
    if m == 0 || m > d {
        return Err(EntropyError::QuditCountOutOfRange { m, d });
    }
    let dp2 = real_from_usize::<T>(d + 2);
    if m == 1 {
        let df = real_from_usize::<T>(d);
        Ok(df / dp2 * df.log2() + (T::one() + T::one()) / dp2)
    } else {
        let x = d - m + 1;
        let xf = real_from_usize::<T>(x);
        Ok(xf / dp2 * xf.log2())
    }
}

/// The ideal channel capacity of the d+2-unitary scheme:
/// −log2(1/(d+2)) = log2(d+2), numerically identical to
/// `initial_uncertainty`.
pub fn capacity<T: Scalar>(dim: Dimension) -> T {
    initial_uncertainty(dim)
}

/// The maximal classical information carried by d perfectly
/// distinguishable qudits: d·log2 d.
pub fn max_info<T: Scalar>(dim: Dimension) -> T {
    real_from_usize::<T>(dim.get()) * real_from_usize::<T>(dim.get()).log2()
}

/// capacity / max_info: 1 exactly at d = 2, strictly below 1 afterwards.
pub fn efficiency<T: Scalar>(dim: Dimension) -> T {
    capacity::<T>(dim) / max_info::<T>(dim)
}

/// The efficiency table row for one dimension.
pub fn efficiency_row(dim: Dimension) -> EfficiencyRow {
    EfficiencyRow {
        d: dim.get(),
        capacity_bits: capacity::<f64>(dim),
        max_info_bits: max_info::<f64>(dim),
        ratio: efficiency::<f64>(dim),
    }
}

/// All primes ≤ n, ascending.
pub fn primes_through(n: usize) -> Vec<usize> {
    (2..=n).filter(|&d| Dimension::new(d).is_ok()).collect()
}

/// Efficiency rows for every prime ≤ d_max.
pub fn efficiency_table(d_max: usize) -> Vec<EfficiencyRow> {
    primes_through(d_max)
        .into_iter()
        .map(|d| efficiency_row(Dimension::new(d).expect("prime")))
        .collect()
}
