//! Construction, simulation, optimization, and verification of global-control
//! pulse sequences that prepare GHZ and W states on an n-spin all-to-all Ising
//! model.
//!
//! The library is organized around the permutation symmetry of the model: the
//! full 2^n dynamics ([`sim`]) restricts to the (n+1)-dimensional Dicke basis
//! and its X/Y-parity blocks ([`symmetry`]), which is where the closed-form
//! sequences ([`analytic`]), the numerical W-state search ([`search`]), and
//! the controllability checks ([`control`]) operate.

pub mod analytic;
pub mod control;
pub mod error;
pub mod search;
pub mod sim;
pub mod symmetry;

pub use error::{Error, Result};
pub use sim::{
    Axis, Basis, Pulse, PulseKind, PulseSequence, StateVector, apply_global_rotation, apply_pulse,
    apply_sequence, apply_zz, fidelity, ghz_state, ising_eigenvalue, spin_up_count, w_state,
};
pub use symmetry::{
    BoundaryStates, DickeBasis, Sector, SubspaceRep, boundary_states, dicke_basis,
    evolve_symmetric, parity_sector, symmetric_hams,
};
pub use analytic::{NamedSequence, TargetState, ghz_sequence, global_z_decomposition, w3_sequence, w4_sequence};
pub use control::{ControllabilityReport, Edge, commutant_dimension, connectivity_report};
pub use search::{
    Ansatz, LinearFit, OptimizationConfig, OptimizationResult, ScanRecord, ScanResult,
    min_params_scan, objective, optimize,
};
