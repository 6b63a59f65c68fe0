//! Closed-form pulse sequences: GHZ preparation for any n (odd and even
//! branches), the three- and four-spin W solutions, and the global-Z
//! decomposition into available pulses.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::sim::{Pulse, PulseSequence};

/// Which state a named sequence prepares from `|00⋯0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetState {
    Ghz,
    W,
}

/// A pulse sequence together with the state it prepares.
#[derive(Debug, Clone)]
pub struct NamedSequence {
    pub label: String,
    pub n: usize,
    pub seq: PulseSequence,
    pub target: TargetState,
}

/// Interior X angle of the three-spin W sequence: `arccos(1/3)/4`.
///
/// The corresponding Bloch-sphere rotation in the 2-dimensional X+ block is
/// by the full angle `arccos(1/3)` about the axis `(√3/2, 0, -1/2)`; the
/// pulse angle is a quarter of that because the traceless part of the reduced
/// generator has norm 2 and the exponent convention contributes another
/// factor of 2.
pub fn w3_x_angle() -> f64 {
    (1.0f64 / 3.0).acos() / 4.0
}

/// ZZ angle of the three-spin W sequence: `(π - arccos(1/3))/4`.
pub fn w3_zz_angle() -> f64 {
    (PI - (1.0f64 / 3.0).acos()) / 4.0
}

/// Exact GHZ preparation from `|00⋯0⟩`.
///
/// Odd n: `Y(π/4) - ZZ(π/4) - X(π/4)`. Even n appends the global-Z
/// correction that fixes the residual `i^(n+1)` phase between `|00⋯0⟩` and
/// `|11⋯1⟩`: `Y(π/4) - ZZ(π/4) - X(-(n+1)π/4n) - Y(-π/4)`.
pub fn ghz_sequence(n: usize) -> Result<NamedSequence> {
    if n < 2 {
        return Err(Error::QubitCount { n, min: 2 });
    }
    let pulses = if n % 2 == 1 {
        vec![Pulse::y(FRAC_PI_4), Pulse::zz(FRAC_PI_4), Pulse::x(FRAC_PI_4)]
    } else {
        vec![
            Pulse::y(FRAC_PI_4),
            Pulse::zz(FRAC_PI_4),
            Pulse::x(-(n as f64 + 1.0) * PI / (4.0 * n as f64)),
            Pulse::y(-FRAC_PI_4),
        ]
    };
    Ok(NamedSequence {
        label: format!("ghz-{n}"),
        n,
        seq: PulseSequence::new(n, pulses),
        target: TargetState::Ghz,
    })
}

/// Three-pulse realization of the global Z rotation `exp(-i·θ·Σσᶻ)` (up to
/// global phase): `Y(π/4) - X(θ) - Y(-π/4)`.
pub fn global_z_decomposition(n: usize, theta: f64) -> PulseSequence {
    PulseSequence::new(
        n,
        vec![Pulse::y(FRAC_PI_4), Pulse::x(theta), Pulse::y(-FRAC_PI_4)],
    )
}

/// Exact three-spin W preparation.
///
/// The interior X pulse angle is `arccos(1/3)/4` ([`w3_x_angle`]); the
/// quarter-angle form is the one that yields fidelity 1.
pub fn w3_sequence() -> NamedSequence {
    let zz = w3_zz_angle();
    let x = w3_x_angle();
    NamedSequence {
        label: "w-3".to_string(),
        n: 3,
        seq: PulseSequence::new(
            3,
            vec![
                Pulse::y(FRAC_PI_4),
                Pulse::zz(zz),
                Pulse::x(x),
                Pulse::zz(zz),
                Pulse::y(FRAC_PI_4),
            ],
        ),
        target: TargetState::W,
    }
}

/// Exact four-spin W preparation:
/// `Y(π/4) - ZZ(π/4) - X(π/16) - Y(3π/8) - ZZ(π/12) - X(π/4)`.
pub fn w4_sequence() -> NamedSequence {
    NamedSequence {
        label: "w-4".to_string(),
        n: 4,
        seq: PulseSequence::new(
            4,
            vec![
                Pulse::y(FRAC_PI_4),
                Pulse::zz(FRAC_PI_4),
                Pulse::x(PI / 16.0),
                Pulse::y(3.0 * PI / 8.0),
                Pulse::zz(PI / 12.0),
                Pulse::x(FRAC_PI_4),
            ],
        ),
        target: TargetState::W,
    }
}
