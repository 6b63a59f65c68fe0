use thiserror::Error;

use crate::sim::{Basis, PulseKind};
use crate::symmetry::Sector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis index {k} out of range for {n} qubits")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("qubit count must be at least {min}, got {n}")]
    QubitCount { n: usize, min: usize },
    #[error("expected state in {expected:?} basis, got {found:?}")]
    BasisMismatch { expected: Basis, found: Basis },
    #[error("amplitude vector length {len} does not match basis {basis:?} for n = {n}")]
    AmplitudeLength { n: usize, basis: Basis, len: usize },
    #[error("qubit count mismatch: state has {state_n}, sequence has {seq_n}")]
    QubitMismatch { state_n: usize, seq_n: usize },
    #[error("pulse kind {kind:?} is not represented in sector {sector:?}")]
    KindNotInSector { kind: PulseKind, sector: Sector },
    #[error("coordinate vector length {len} does not match subspace dimension {dim}")]
    CoordinateLength { dim: usize, len: usize },
    #[error("parameter count mismatch: ansatz needs {expected}, got {found}")]
    ParamCount { expected: usize, found: usize },
    #[error("matrices must be square and of equal dimension")]
    MatrixDimension,
    #[error("invalid range: from = {from}, to = {to}")]
    InvalidRange { from: usize, to: usize },
    #[error("invalid optimization config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
