//! Dense Kronecker-product oracles, independent of the library's fast paths.
//!
//! Everything here builds explicit 2^n × 2^n matrices and exponentiates them
//! through a Hermitian eigendecomposition, so comparisons against the
//! library's diagonal-phase and factorized-rotation implementations are
//! genuine dual-route checks.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::Rng;

use isingprep_core::{Basis, StateVector};

pub fn sigma_x() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[
        C64::new(0.0, 0.0), C64::new(1.0, 0.0),
        C64::new(1.0, 0.0), C64::new(0.0, 0.0),
    ])
}

pub fn sigma_y() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[
        C64::new(0.0, 0.0), C64::new(0.0, -1.0),
        C64::new(0.0, 1.0), C64::new(0.0, 0.0),
    ])
}

pub fn sigma_z() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[
        C64::new(1.0, 0.0), C64::new(0.0, 0.0),
        C64::new(0.0, 0.0), C64::new(-1.0, 0.0),
    ])
}

fn identity(d: usize) -> DMatrix<C64> {
    DMatrix::identity(d, d)
}

/// Single-site operator acting on qubit `q` (qubit 0 = least significant
/// bit, i.e. the rightmost Kronecker factor).
pub fn single_site(n: usize, q: usize, op: &DMatrix<C64>) -> DMatrix<C64> {
    let mut out = identity(1);
    for site in (0..n).rev() {
        let factor = if site == q { op.clone() } else { identity(2) };
        out = out.kronecker(&factor);
    }
    out
}

/// `Σ_k σ_k` for the given single-qubit operator.
pub fn collective(n: usize, op: &DMatrix<C64>) -> DMatrix<C64> {
    let dim = 1 << n;
    let mut out = DMatrix::zeros(dim, dim);
    for q in 0..n {
        out += single_site(n, q, op);
    }
    out
}

/// `Σ_{k<m} σᶻ_k σᶻ_m`, assembled entry by entry from per-pair bit signs
/// (diagonal, but derived without the closed-form eigenvalue expression).
pub fn ising_dense(n: usize) -> DMatrix<C64> {
    let dim = 1usize << n;
    let mut out = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let mut total = 0i64;
        for a in 0..n {
            for b in (a + 1)..n {
                let sa = if k >> a & 1 == 0 { 1i64 } else { -1 };
                let sb = if k >> b & 1 == 0 { 1i64 } else { -1 };
                total += sa * sb;
            }
        }
        out[(k, k)] = C64::new(total as f64, 0.0);
    }
    out
}

/// `exp(-i·t·H)` for Hermitian `H`, via eigendecomposition.
pub fn expm_hermitian(h: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    let eig = h.clone().symmetric_eigen();
    let phases = DMatrix::from_diagonal(&DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|l| C64::from_polar(1.0, -t * l)),
    ));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

pub fn to_dvector(state: &StateVector) -> DVector<C64> {
    DVector::from_column_slice(state.amps())
}

pub fn from_dvector(n: usize, v: &DVector<C64>) -> StateVector {
    StateVector::from_amps(n, Basis::Full, v.iter().copied().collect()).unwrap()
}

/// Haar-ish random normalized full-basis state.
pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    let dim = 1usize << n;
    let mut amps: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amps(n, Basis::Full, amps).unwrap()
}

/// Random normalized coordinate vector of the given dimension.
pub fn random_coords<R: Rng>(dim: usize, rng: &mut R) -> DVector<C64> {
    let v = DVector::from_fn(dim, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let norm = v.norm();
    v.map(|x| x / norm)
}
