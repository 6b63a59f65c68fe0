//! Exact full-Hilbert-space simulation: n-qubit state vectors, the three
//! global propagators (ZZ free evolution, global X/Y rotations), target-state
//! constructors, and the fidelity objective.
//!
//! Basis convention: index `k` is read as an n-bit string; bit `i` (least
//! significant = qubit 0) gives qubit `i`'s σᶻ value with `|0⟩` the +1
//! eigenstate, so the spin-up count is `popcount(k)`. Pulse angles are the
//! exponent coefficient in `exp(-i·angle·H)`; a single qubit therefore
//! rotates by `2·angle` on the Bloch sphere.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Which labeled basis a state's amplitudes refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Computational basis, 2^n amplitudes.
    Full,
    /// Dicke (symmetry-adapted) basis, n+1 amplitudes.
    Symmetric,
    /// A parity-sector block, at most n+1 amplitudes.
    Block,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PulseKind {
    Zz,
    X,
    Y,
}

/// Global rotation axis for `apply_global_rotation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// A single δ-pulse: `exp(-i·angle·H_kind)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    pub kind: PulseKind,
    pub angle: f64,
}

impl Pulse {
    pub fn zz(angle: f64) -> Self {
        Pulse { kind: PulseKind::Zz, angle }
    }

    pub fn x(angle: f64) -> Self {
        Pulse { kind: PulseKind::X, angle }
    }

    pub fn y(angle: f64) -> Self {
        Pulse { kind: PulseKind::Y, angle }
    }
}

/// Time-ordered pulse list; index 0 is applied first, so the total propagator
/// is the right-to-left product of the individual propagators.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence {
    pub n: usize,
    pub pulses: Vec<Pulse>,
}

impl PulseSequence {
    pub fn new(n: usize, pulses: Vec<Pulse>) -> Self {
        PulseSequence { n, pulses }
    }
}

/// Complex amplitudes over a labeled basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    basis: Basis,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|00⋯0⟩` in the full basis.
    pub fn zero_state(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::QubitCount { n, min: 1 });
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[0] = C64::new(1.0, 0.0);
        Ok(StateVector { n, basis: Basis::Full, amps })
    }

    pub fn from_amps(n: usize, basis: Basis, amps: Vec<C64>) -> Result<Self> {
        let ok = match basis {
            Basis::Full => amps.len() == 1 << n,
            Basis::Symmetric => amps.len() == n + 1,
            Basis::Block => !amps.is_empty() && amps.len() <= n + 1,
        };
        if !ok {
            return Err(Error::AmplitudeLength { n, basis, len: amps.len() });
        }
        Ok(StateVector { n, basis, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_compatible(self, other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

fn check_compatible(a: &StateVector, b: &StateVector) -> Result<()> {
    if a.n != b.n {
        return Err(Error::QubitMismatch { state_n: a.n, seq_n: b.n });
    }
    if a.basis != b.basis || a.amps.len() != b.amps.len() {
        return Err(Error::BasisMismatch { expected: a.basis, found: b.basis });
    }
    Ok(())
}

fn check_full(state: &StateVector) -> Result<()> {
    if state.basis != Basis::Full {
        return Err(Error::BasisMismatch { expected: Basis::Full, found: state.basis });
    }
    Ok(())
}

/// Number of spin-up qubits in computational basis state `|k⟩`.
pub fn spin_up_count(k: usize, n: usize) -> Result<u32> {
    if k >= 1 << n {
        return Err(Error::IndexOutOfRange { k, n });
    }
    Ok(k.count_ones())
}

/// Eigenvalue of the all-to-all Ising coupling on `|k⟩`:
/// `n(n-1)/2 - 2·s·(n-s)` with `s = spin_up_count(k)`.
pub fn ising_eigenvalue(k: usize, n: usize) -> Result<f64> {
    let s = spin_up_count(k, n)? as i64;
    let n = n as i64;
    Ok((n * (n - 1) / 2 - 2 * s * (n - s)) as f64)
}

/// Free evolution `ZZ(τ) = exp(-i·τ·H_zz)`: a diagonal phase per basis state.
pub fn apply_zz(state: &StateVector, tau: f64) -> Result<StateVector> {
    check_full(state)?;
    let n = state.n;
    let amps = state
        .amps
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let lambda = ising_eigenvalue(k, n).expect("k in range");
            a * C64::from_polar(1.0, -tau * lambda)
        })
        .collect();
    StateVector::from_amps(n, Basis::Full, amps)
}

/// Global rotation `exp(-i·β·H_axis)`, factorized into n single-qubit
/// rotations of Bloch angle 2β.
pub fn apply_global_rotation(state: &StateVector, axis: Axis, beta: f64) -> Result<StateVector> {
    check_full(state)?;
    let n = state.n;
    let (c, s) = (beta.cos(), beta.sin());
    // Single-qubit exp(-i·β·σ): cos β · I - i sin β · σ.
    let (u00, u01, u10, u11) = match axis {
        Axis::X => (
            C64::new(c, 0.0),
            C64::new(0.0, -s),
            C64::new(0.0, -s),
            C64::new(c, 0.0),
        ),
        Axis::Y => (
            C64::new(c, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(c, 0.0),
        ),
    };
    let mut amps = state.amps.clone();
    for q in 0..n {
        let stride = 1usize << q;
        for base in 0..amps.len() {
            if base & stride == 0 {
                let a0 = amps[base];
                let a1 = amps[base | stride];
                amps[base] = u00 * a0 + u01 * a1;
                amps[base | stride] = u10 * a0 + u11 * a1;
            }
        }
    }
    StateVector::from_amps(n, Basis::Full, amps)
}

pub fn apply_pulse(state: &StateVector, pulse: Pulse) -> Result<StateVector> {
    match pulse.kind {
        PulseKind::Zz => apply_zz(state, pulse.angle),
        PulseKind::X => apply_global_rotation(state, Axis::X, pulse.angle),
        PulseKind::Y => apply_global_rotation(state, Axis::Y, pulse.angle),
    }
}

/// Applies the pulses in listed time order.
pub fn apply_sequence(state: &StateVector, seq: &PulseSequence) -> Result<StateVector> {
    if state.n != seq.n {
        return Err(Error::QubitMismatch { state_n: state.n, seq_n: seq.n });
    }
    let mut current = state.clone();
    for pulse in &seq.pulses {
        current = apply_pulse(&current, *pulse)?;
    }
    Ok(current)
}

/// `(|00⋯0⟩ + |11⋯1⟩)/√2`.
pub fn ghz_state(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::QubitCount { n, min: 2 });
    }
    let dim = 1usize << n;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    let inv = C64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    amps[0] = inv;
    amps[dim - 1] = inv;
    StateVector::from_amps(n, Basis::Full, amps)
}

/// Uniform superposition of the n single-excitation basis states.
pub fn w_state(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::QubitCount { n, min: 2 });
    }
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    let inv = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    for q in 0..n {
        amps[1 << q] = inv;
    }
    StateVector::from_amps(n, Basis::Full, amps)
}

/// `|⟨a|b⟩|`, blind to the global phase of either argument.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm())
}
