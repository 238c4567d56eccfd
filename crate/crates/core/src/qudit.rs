//! Dense complex arithmetic for d-dimensional qudit states and unitaries,
//! the generalized Pauli operators X and Z, and construction plus
//! verification of the maximal set of d+1 mutually unbiased bases for
//! prime d.
//!
//! Conventions used throughout the crate:
//!
//! * `X|j⟩ = |j+1 mod d⟩` and `Z|j⟩ = ω^j|j⟩` with `ω = exp(i 2π/d)`.
//! * Basis `b ∈ {1, …, d}` is the eigenbasis of `X·Z^{b−1}`; basis `d+1`
//!   is the computational (Z) basis. Element `t ∈ {0, …, d−1}`.
//! * For `b ≤ d` the element-`t` state has amplitudes
//!   `(1/√d)·ω^{t(d−j) − (b−1)·s_j}` at position `j`, where
//!   `s_j = j + (j+1) + … + (d−1)`.
//! * State equality is always taken up to an unobservable global phase.
//!
//! The amplitude rule above produces genuine `XZ^{b−1}` eigenbases for odd
//! primes only. At d = 2 the required ±i amplitudes are not powers of
//! ω = −1, so basis 2 is built directly as the XZ eigenbasis
//! `(1, ±i)/√2`; every verified invariant (orthonormality, unbiasedness,
//! eigenvector property, constant shift offsets) is identical in form to
//! the odd-prime case.

use ndarray::{Array1, Array2};
use num_complex::Complex;
use thiserror::Error;

use crate::scalar::{real_from_usize, Scalar};

/// Errors from constructing or combining states, unitaries and indices.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuditError {
    #[error("dimension {0} is not prime")]
    NotPrime(usize),
    #[error("basis index {b} outside 1..={max}")]
    BasisOutOfRange { b: usize, max: usize },
    #[error("element index {t} outside 0..{d}")]
    ElementOutOfRange { t: usize, d: usize },
    #[error("state squared norm {norm_sq} differs from 1 beyond tolerance")]
    NotNormalized { norm_sq: f64 },
    #[error("matrix is not unitary: max |U†U − I| entry = {defect}")]
    NotUnitary { defect: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Verification failures for a candidate MUB family, carrying the
/// offending (basis, basis′, element, element′) quadruple.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum MubError {
    #[error("basis {b}: |⟨{t}|{t_prime}⟩| = {overlap}, want δ")]
    Orthonormality {
        b: usize,
        t: usize,
        t_prime: usize,
        overlap: f64,
    },
    #[error("bases {b},{b_prime}: |⟨{t}|{t_prime}⟩|² = {overlap_sq}, want 1/d")]
    Unbiasedness {
        b: usize,
        b_prime: usize,
        t: usize,
        t_prime: usize,
        overlap_sq: f64,
    },
    #[error("basis {b} element {t} is not an eigenvector of XZ^{}", b - 1)]
    Eigenstate { b: usize, t: usize },
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// `x mod d` with the result in `0..d`, for possibly negative `x`.
pub(crate) fn modd(x: i64, d: usize) -> usize {
    x.rem_euclid(d as i64) as usize
}

/// A prime qudit dimension d, the source of ω = exp(i 2π/d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    d: usize,
}

impl Dimension {
    /// Rejects non-prime d.
    pub fn new(d: usize) -> Result<Self, QuditError> {
        if is_prime(d) {
            Ok(Self { d })
        } else {
            Err(QuditError::NotPrime(d))
        }
    }

    pub fn get(self) -> usize {
        self.d
    }

    /// The primitive d-th root of unity ω = exp(i 2π/d).
    pub fn omega<T: Scalar>(self) -> Complex<T> {
        self.omega_pow(1)
    }

    /// ω^e, with the exponent reduced mod d before any floating-point work
    /// so large exponents lose no precision.
    pub fn omega_pow<T: Scalar>(self, e: i64) -> Complex<T> {
        let r = modd(e, self.d);
        let angle = T::TAU() * real_from_usize::<T>(r) / real_from_usize::<T>(self.d);
        Complex::from_polar(T::one(), angle)
    }
}

/// Basis label b ∈ {1, …, d+1}; b = d+1 is the computational basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex(usize);

impl BasisIndex {
    pub fn new(b: usize, dim: Dimension) -> Result<Self, QuditError> {
        if (1..=dim.get() + 1).contains(&b) {
            Ok(Self(b))
        } else {
            Err(QuditError::BasisOutOfRange {
                b,
                max: dim.get() + 1,
            })
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// All d+1 bases in order 1, …, d+1.
    pub fn all(dim: Dimension) -> impl Iterator<Item = BasisIndex> {
        (1..=dim.get() + 1).map(BasisIndex)
    }
}

/// Element label t ∈ {0, …, d−1} within a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementIndex(usize);

impl ElementIndex {
    pub fn new(t: usize, dim: Dimension) -> Result<Self, QuditError> {
        if t < dim.get() {
            Ok(Self(t))
        } else {
            Err(QuditError::ElementOutOfRange { t, d: dim.get() })
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn all(dim: Dimension) -> impl Iterator<Item = ElementIndex> {
        (0..dim.get()).map(ElementIndex)
    }
}

/// A pure qudit state: d complex amplitudes of unit total norm.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditState<T: Scalar> {
    amps: Array1<Complex<T>>,
}

impl<T: Scalar> QuditState<T> {
    /// Validates the unit-norm invariant within `T::TOL`.
    pub fn new(amps: Array1<Complex<T>>) -> Result<Self, QuditError> {
        let norm_sq = amps.iter().fold(T::zero(), |s, a| s + a.norm_sqr());
        if (norm_sq - T::one()).abs() > T::TOL {
            return Err(QuditError::NotNormalized {
                norm_sq: norm_sq.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { amps })
    }

    /// The computational state |t⟩.
    pub fn computational(dim: Dimension, t: ElementIndex) -> Self {
        let mut amps = Array1::zeros(dim.get());
        amps[t.get()] = Complex::new(T::one(), T::zero());
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex<T>> {
        &self.amps
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| {
                s + a.conj() * *b
            })
    }

    /// Amplitudes as [re, im] pairs, the JSON wire form.
    pub fn to_pairs(&self) -> Vec<[T; 2]> {
        self.amps.iter().map(|a| [a.re, a.im]).collect()
    }
}

/// True iff the two states differ only by a global phase: |⟨a|b⟩| = 1
/// within `eps`.
pub fn equal_up_to_phase<T: Scalar>(a: &QuditState<T>, b: &QuditState<T>, eps: T) -> bool {
    a.dim() == b.dim() && (a.inner(b).norm() - T::one()).abs() < eps
}

/// A d×d unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix<T: Scalar> {
    mat: Array2<Complex<T>>,
}

impl<T: Scalar> UnitaryMatrix<T> {
    /// Validates squareness and U†U = I entrywise within `T::TOL`.
    pub fn new(mat: Array2<Complex<T>>) -> Result<Self, QuditError> {
        let (r, c) = mat.dim();
        if r != c {
            return Err(QuditError::DimensionMismatch { left: r, right: c });
        }
        let u = Self { mat };
        let defect = u.unitarity_defect();
        if defect > T::TOL {
            return Err(QuditError::NotUnitary {
                defect: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(u)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            mat: Array2::eye(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex<T>> {
        &self.mat
    }

    /// Max entry of |U†U − I|.
    pub fn unitarity_defect(&self) -> T {
        let dagger = self.mat.t().mapv(|a| a.conj());
        let prod = dagger.dot(&self.mat);
        let eye: Array2<Complex<T>> = Array2::eye(self.dim());
        (&prod - &eye)
            .iter()
            .fold(T::zero(), |m, a| m.max(a.norm()))
    }

    /// Matrix-vector product. The output inherits the unit norm of the
    /// input because the matrix is unitary.
    pub fn apply(&self, s: &QuditState<T>) -> Result<QuditState<T>, QuditError> {
        if self.dim() != s.dim() {
            return Err(QuditError::DimensionMismatch {
                left: self.dim(),
                right: s.dim(),
            });
        }
        QuditState::new(self.mat.dot(s.amplitudes()))
    }

    /// Matrix product self·other. Panics on dimension mismatch: all
    /// composites in this crate are built at a single fixed d.
    pub fn dot(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "composing unitaries of unequal d");
        Self {
            mat: self.mat.dot(&other.mat),
        }
    }

    /// self^k by repeated multiplication; k is at most d in practice.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..k {
            acc = acc.dot(self);
        }
        acc
    }

    /// Max entrywise |self − other|.
    pub fn max_entry_diff(&self, other: &Self) -> T {
        self.mat
            .iter()
            .zip(other.mat.iter())
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    /// Entries as [re, im] pairs in row-major order.
    pub fn to_pairs(&self) -> Vec<Vec<[T; 2]>> {
        self.mat
            .rows()
            .into_iter()
            .map(|row| row.iter().map(|a| [a.re, a.im]).collect())
            .collect()
    }
}

/// The cyclic shift operator: X|j⟩ = |j+1 mod d⟩.
pub fn pauli_x<T: Scalar>(dim: Dimension) -> UnitaryMatrix<T> {
    let d = dim.get();
    let mut mat = Array2::zeros((d, d));
    for j in 0..d {
        mat[[(j + 1) % d, j]] = Complex::new(T::one(), T::zero());
    }
    UnitaryMatrix { mat }
}

/// The phase operator: Z|j⟩ = ω^j|j⟩.
pub fn pauli_z<T: Scalar>(dim: Dimension) -> UnitaryMatrix<T> {
    let d = dim.get();
    let mut mat = Array2::zeros((d, d));
    for j in 0..d {
        mat[[j, j]] = dim.omega_pow(j as i64);
    }
    UnitaryMatrix { mat }
}

/// Max entry of |ZX − ωXZ| for the given pair.
pub fn commutation_defect<T: Scalar>(
    x: &UnitaryMatrix<T>,
    z: &UnitaryMatrix<T>,
    omega: Complex<T>,
) -> T {
    let zx = z.dot(x);
    let xz = x.dot(z);
    zx.mat
        .iter()
        .zip(xz.mat.iter())
        .fold(T::zero(), |m, (a, b)| m.max((a - omega * b).norm()))
}

/// True iff ZX = ωXZ holds entrywise within `T::TOL` for the canonical
/// X and Z at this dimension.
pub fn check_commutation<T: Scalar>(dim: Dimension) -> bool {
    commutation_defect(&pauli_x::<T>(dim), &pauli_z::<T>(dim), dim.omega()) < T::TOL
}

/// s_j = j + (j+1) + … + (d−1), in closed form.
fn exponent_sum(d: usize, j: usize) -> usize {
    (d - j) * (d - 1 + j) / 2
}

/// Element t of basis b.
///
/// For b ≤ d this is the eigenvector of X·Z^{b−1} with amplitudes
/// `(1/√d)·ω^{t(d−j) − (b−1)·s_j}` at position j (d = 2, b = 2 is the
/// directly built XZ eigenbasis, see the module docs); for b = d+1 it is
/// the computational state |t⟩.
pub fn mub_state<T: Scalar>(dim: Dimension, b: BasisIndex, t: ElementIndex) -> QuditState<T> {
    let d = dim.get();
    assert!(b.get() <= d + 1 && t.get() < d, "index from a different d");
    if b.get() == d + 1 {
        return QuditState::computational(dim, t);
    }
    let inv_sqrt_d = T::one() / real_from_usize::<T>(d).sqrt();
    if d == 2 {
        // (1, ±1)/√2 for b = 1, (1, ±i)/√2 for b = 2; the sign alternates
        // with t.
        let k = (b.get() - 1) as u32;
        let sign = if t.get().is_multiple_of(2) {
            T::one()
        } else {
            -T::one()
        };
        let second = Complex::<T>::i().powu(k) * sign;
        let amps = Array1::from(vec![
            Complex::new(inv_sqrt_d, T::zero()),
            second * inv_sqrt_d,
        ]);
        return QuditState { amps };
    }
    let k = (b.get() - 1) as i64;
    let amps = (0..d)
        .map(|j| {
            let e = t.get() as i64 * (d - j) as i64 - k * exponent_sum(d, j) as i64;
            dim.omega_pow::<T>(e) * inv_sqrt_d
        })
        .collect::<Array1<_>>();
    QuditState { amps }
}

/// The full (d+1) × d table of basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct MubFamily<T: Scalar> {
    dim: Dimension,
    bases: Vec<Vec<QuditState<T>>>,
}

impl<T: Scalar> MubFamily<T> {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn state(&self, b: BasisIndex, t: ElementIndex) -> &QuditState<T> {
        &self.bases[b.get() - 1][t.get()]
    }

    pub fn basis(&self, b: BasisIndex) -> &[QuditState<T>] {
        &self.bases[b.get() - 1]
    }

    /// Re-runs the orthonormality and unbiasedness sweep within `T::TOL`.
    pub fn verify(&self) -> Result<(), MubError> {
        let d = self.dim.get();
        let inv_d = T::one() / real_from_usize::<T>(d);
        for (bi, basis) in self.bases.iter().enumerate() {
            for t in 0..d {
                for t2 in 0..d {
                    let ov = basis[t].inner(&basis[t2]).norm();
                    let expect = if t == t2 { T::one() } else { T::zero() };
                    if (ov - expect).abs() > T::TOL {
                        return Err(MubError::Orthonormality {
                            b: bi + 1,
                            t,
                            t_prime: t2,
                            overlap: ov.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                }
            }
        }
        for bi in 0..=d {
            for bj in 0..=d {
                if bi == bj {
                    continue;
                }
                for t in 0..d {
                    for t2 in 0..d {
                        let ov_sq = self.bases[bi][t].inner(&self.bases[bj][t2]).norm_sqr();
                        if (ov_sq - inv_d).abs() > T::TOL {
                            return Err(MubError::Unbiasedness {
                                b: bi + 1,
                                b_prime: bj + 1,
                                t,
                                t_prime: t2,
                                overlap_sq: ov_sq.to_f64().unwrap_or(f64::NAN),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds and fully verifies the d+1 bases: intra-basis orthonormality,
/// inter-basis unbiasedness, and the eigenvector property of each basis
/// b ≤ d under X·Z^{b−1}.
pub fn mub_family<T: Scalar>(dim: Dimension) -> Result<MubFamily<T>, MubError> {
    let bases = BasisIndex::all(dim)
        .map(|b| {
            ElementIndex::all(dim)
                .map(|t| mub_state(dim, b, t))
                .collect()
        })
        .collect();
    let fam = MubFamily { dim, bases };
    fam.verify()?;
    let x = pauli_x::<T>(dim);
    let z = pauli_z::<T>(dim);
    for b in 1..=dim.get() {
        let generator = x.dot(&z.pow(b - 1));
        for t in 0..dim.get() {
            let state = &fam.bases[b - 1][t];
            let image = generator.apply(state).expect("same d by construction");
            if !equal_up_to_phase(state, &image, T::TOL) {
                return Err(MubError::Eigenstate { b, t });
            }
        }
    }
    Ok(fam)
}
