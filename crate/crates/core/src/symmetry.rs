//! Dicke (symmetry-adapted) basis and X/Y-parity block machinery.
//!
//! All three global Hamiltonians are permutation symmetric, so the dynamics
//! launched from `|00⋯0⟩` lives in the (n+1)-dimensional Dicke basis
//! `|φ_m⟩`, m = 1…n+1. `{H_zz, H_x}` further block-diagonalize over the
//! X-parity eigenspaces `X±` and `{H_zz, H_y}` over the Y-parity eigenspaces
//! `Y±`. This module builds the reduced Hermitian matrices, the isometric
//! embeddings back to the Dicke and full bases, and the boundary states that
//! frame the W-preparation problem in low dimension.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::sim::{Basis, Pulse, PulseKind, StateVector};

/// Parity sector (or the whole symmetric space).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    XPlus,
    XMinus,
    YPlus,
    YMinus,
    Symmetric,
}

impl Sector {
    pub const PARITY: [Sector; 4] = [Sector::XPlus, Sector::XMinus, Sector::YPlus, Sector::YMinus];

    pub fn name(&self) -> &'static str {
        match self {
            Sector::XPlus => "Xplus",
            Sector::XMinus => "Xminus",
            Sector::YPlus => "Yplus",
            Sector::YMinus => "Yminus",
            Sector::Symmetric => "symmetric",
        }
    }
}

/// The n+1 orthonormal Dicke vectors `|φ_m⟩` as full-basis states.
#[derive(Debug, Clone)]
pub struct DickeBasis {
    n: usize,
    vectors: Vec<StateVector>,
}

impl DickeBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// Uniform superpositions `|φ_m⟩` over all basis states with m-1 spins up.
pub fn dicke_basis(n: usize) -> Result<DickeBasis> {
    if n < 1 {
        return Err(Error::QubitCount { n, min: 1 });
    }
    let dim = 1usize << n;
    let mut vectors = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let amp = C64::new(1.0 / binomial(n, m).sqrt(), 0.0);
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        for (k, a) in amps.iter_mut().enumerate() {
            if k.count_ones() as usize == m {
                *a = amp;
            }
        }
        vectors.push(StateVector::from_amps(n, Basis::Full, amps)?);
    }
    Ok(DickeBasis { n, vectors })
}

/// Dicke-basis coordinates `⟨φ_m|ψ⟩` of a full-basis state.
pub fn project_symmetric(state: &StateVector) -> Result<DVector<C64>> {
    if state.basis() != Basis::Full {
        return Err(Error::BasisMismatch { expected: Basis::Full, found: state.basis() });
    }
    let n = state.n();
    let mut coords = DVector::from_element(n + 1, C64::new(0.0, 0.0));
    for (k, amp) in state.amps().iter().enumerate() {
        coords[k.count_ones() as usize] += amp;
    }
    for m in 0..=n {
        coords[m] /= C64::new(binomial(n, m).sqrt(), 0.0);
    }
    Ok(coords)
}

/// Full-basis state `Σ_m coords_m |φ_m⟩`.
pub fn embed_full(n: usize, coords: &DVector<C64>) -> Result<StateVector> {
    if coords.len() != n + 1 {
        return Err(Error::CoordinateLength { dim: n + 1, len: coords.len() });
    }
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    for (k, amp) in amps.iter_mut().enumerate() {
        let m = k.count_ones() as usize;
        *amp = coords[m] / C64::new(binomial(n, m).sqrt(), 0.0);
    }
    StateVector::from_amps(n, Basis::Full, amps)
}

/// Reduced Hamiltonians `(h_x, h_y, h_zz)` in the n+1 Dicke basis.
///
/// `h_x`/`h_y` are tridiagonal with `|⟨φ_k|H|φ_{k+1}⟩| = √(k(n-k+1))`;
/// `h_zz` is diagonal with `λ_k = 2(k-1-n/2)² - n/2`.
pub fn symmetric_hams(n: usize) -> (DMatrix<C64>, DMatrix<C64>, DMatrix<C64>) {
    let dim = n + 1;
    let mut h_x = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    let mut h_y = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    let mut h_zz = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for k in 1..=n {
        let c = (k as f64 * (n - k + 1) as f64).sqrt();
        h_x[(k - 1, k)] = C64::new(c, 0.0);
        h_x[(k, k - 1)] = C64::new(c, 0.0);
        h_y[(k - 1, k)] = C64::new(0.0, -c);
        h_y[(k, k - 1)] = C64::new(0.0, c);
    }
    for k in 1..=dim {
        h_zz[(k - 1, k - 1)] = C64::new(zz_eigenvalue(n, k), 0.0);
    }
    (h_x, h_y, h_zz)
}

/// `λ_k = 2(k-1-n/2)² - n/2`, the k-th diagonal entry of `h_zz` (1-based k).
pub fn zz_eigenvalue(n: usize, k: usize) -> f64 {
    let d = k as f64 - 1.0 - n as f64 / 2.0;
    2.0 * d * d - n as f64 / 2.0
}

/// A parity sector's reduced representation: the Hermitian generators that
/// preserve the sector and the isometry from sector coordinates to Dicke
/// coordinates.
#[derive(Debug, Clone)]
pub struct SubspaceRep {
    pub n: usize,
    pub sector: Sector,
    pub dim: usize,
    /// Always populated; diagonal in every sector.
    pub h_zz: DMatrix<C64>,
    /// Populated for X sectors and the symmetric rep.
    pub h_x: Option<DMatrix<C64>>,
    /// Populated for Y sectors and the symmetric rep.
    pub h_y: Option<DMatrix<C64>>,
    /// (n+1) × dim isometry, sector coordinates → Dicke coordinates.
    pub embed: DMatrix<C64>,
}

impl SubspaceRep {
    /// The whole (n+1)-dimensional symmetric rep with all three generators.
    pub fn symmetric(n: usize) -> Result<SubspaceRep> {
        if n < 1 {
            return Err(Error::QubitCount { n, min: 1 });
        }
        let (h_x, h_y, h_zz) = symmetric_hams(n);
        Ok(SubspaceRep {
            n,
            sector: Sector::Symmetric,
            dim: n + 1,
            h_zz,
            h_x: Some(h_x),
            h_y: Some(h_y),
            embed: DMatrix::identity(n + 1, n + 1),
        })
    }

    pub fn generator(&self, kind: PulseKind) -> Option<&DMatrix<C64>> {
        match kind {
            PulseKind::Zz => Some(&self.h_zz),
            PulseKind::X => self.h_x.as_ref(),
            PulseKind::Y => self.h_y.as_ref(),
        }
    }

    /// Sector coordinates → Dicke coordinates.
    pub fn embed_symmetric(&self, coords: &DVector<C64>) -> Result<DVector<C64>> {
        if coords.len() != self.dim {
            return Err(Error::CoordinateLength { dim: self.dim, len: coords.len() });
        }
        Ok(&self.embed * coords)
    }

    /// Sector coordinates → full-basis state.
    pub fn embed_to_full(&self, coords: &DVector<C64>) -> Result<StateVector> {
        embed_full(self.n, &self.embed_symmetric(coords)?)
    }

    /// Dicke coordinates → sector coordinates (adjoint of the embedding).
    pub fn project_from_symmetric(&self, coords: &DVector<C64>) -> Result<DVector<C64>> {
        if coords.len() != self.n + 1 {
            return Err(Error::CoordinateLength { dim: self.n + 1, len: coords.len() });
        }
        Ok(self.embed.adjoint() * coords)
    }
}

/// Phase factor `i^n (-1)^(k-1)` pairing `|φ_k⟩` with `|φ_{n+2-k}⟩` in the
/// Y-parity basis (1-based k).
fn y_pair_phase(n: usize, k: usize) -> C64 {
    let i_pow = match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    if k % 2 == 1 { i_pow } else { -i_pow }
}

/// Builds a parity sector's orthonormal basis, reduced generators, and
/// embedding. X sectors carry `{h_zz, h_x}`, Y sectors `{h_zz, h_y}`; a pulse
/// of the other rotation axis does not preserve the sector.
pub fn parity_sector(n: usize, sector: Sector) -> Result<SubspaceRep> {
    if n < 2 {
        return Err(Error::QubitCount { n, min: 2 });
    }
    if sector == Sector::Symmetric {
        return SubspaceRep::symmetric(n);
    }
    let sym_dim = n + 1;
    let pairs = n.div_ceil(2);
    let inv_sqrt2 = C64::new(1.0 / 2.0_f64.sqrt(), 0.0);

    // The even-n middle Dicke vector |φ_{n/2+1}⟩ is self-paired; its phase
    // factor is +1 for both X+ and Y+, so it joins the plus sectors only.
    let has_middle = n.is_multiple_of(2) && matches!(sector, Sector::XPlus | Sector::YPlus);
    let dim = pairs + usize::from(has_middle);

    let mut embed = DMatrix::from_element(sym_dim, dim, C64::new(0.0, 0.0));
    for k in 1..=pairs {
        let partner = n + 2 - k; // 1-based index of |φ_{n+2-k}⟩
        let phase = match sector {
            Sector::XPlus => C64::new(1.0, 0.0),
            Sector::XMinus => C64::new(-1.0, 0.0),
            Sector::YPlus => y_pair_phase(n, k),
            Sector::YMinus => -y_pair_phase(n, k),
            Sector::Symmetric => unreachable!(),
        };
        embed[(k - 1, k - 1)] = inv_sqrt2;
        embed[(partner - 1, k - 1)] = phase * inv_sqrt2;
    }
    if has_middle {
        embed[(n / 2, dim - 1)] = C64::new(1.0, 0.0);
    }

    let (h_x_sym, h_y_sym, h_zz_sym) = symmetric_hams(n);
    let h_zz = embed.adjoint() * &h_zz_sym * &embed;
    let (h_x, h_y) = match sector {
        Sector::XPlus | Sector::XMinus => (Some(embed.adjoint() * &h_x_sym * &embed), None),
        Sector::YPlus | Sector::YMinus => (None, Some(embed.adjoint() * &h_y_sym * &embed)),
        Sector::Symmetric => unreachable!(),
    };

    Ok(SubspaceRep { n, sector, dim, h_zz, h_x, h_y, embed })
}

struct EigPair {
    values: DVector<f64>,
    vectors: DMatrix<C64>,
}

type EigCache = HashMap<(usize, Sector, PulseKind), Arc<EigPair>>;

// Eigendecompositions are reused across thousands of optimizer evaluations;
// write-once per (n, sector, kind).
static EIG_CACHE: Lazy<Mutex<EigCache>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn cached_eig(rep: &SubspaceRep, kind: PulseKind) -> Result<Arc<EigPair>> {
    let key = (rep.n, rep.sector, kind);
    let mut cache = EIG_CACHE.lock().unwrap();
    if let Some(eig) = cache.get(&key) {
        return Ok(eig.clone());
    }
    let mat = rep
        .generator(kind)
        .ok_or(Error::KindNotInSector { kind, sector: rep.sector })?;
    let decomp = mat.clone().symmetric_eigen();
    let eig = Arc::new(EigPair { values: decomp.eigenvalues, vectors: decomp.eigenvectors });
    cache.insert(key, eig.clone());
    Ok(eig)
}

/// `exp(-i·angle·h_kind)·state` in a reduced representation.
pub fn evolve_symmetric(state: &DVector<C64>, pulse: Pulse, rep: &SubspaceRep) -> Result<DVector<C64>> {
    if state.len() != rep.dim {
        return Err(Error::CoordinateLength { dim: rep.dim, len: state.len() });
    }
    if rep.generator(pulse.kind).is_none() {
        return Err(Error::KindNotInSector { kind: pulse.kind, sector: rep.sector });
    }
    if pulse.kind == PulseKind::Zz {
        // h_zz is diagonal in every sector.
        let mut out = state.clone();
        for i in 0..rep.dim {
            out[i] *= C64::from_polar(1.0, -pulse.angle * rep.h_zz[(i, i)].re);
        }
        return Ok(out);
    }
    let eig = cached_eig(rep, pulse.kind)?;
    let mut coeffs = eig.vectors.adjoint() * state;
    for i in 0..rep.dim {
        coeffs[i] *= C64::from_polar(1.0, -pulse.angle * eig.values[i]);
    }
    Ok(&eig.vectors * coeffs)
}

/// Dicke-coordinate endpoints of the W-preparation problem: the rotated
/// initial state `Y(π/4)|0⋯0⟩` and the rotated target `Y(-π/4)|W⟩` (odd n)
/// or `X(-π/4)|W⟩` (even n).
#[derive(Debug, Clone)]
pub struct BoundaryStates {
    pub n: usize,
    pub init_sym: DVector<C64>,
    pub target_sym: DVector<C64>,
}

/// Closed-form boundary states. The initial state lies in the X+ image for
/// every n; the target lies in X+ for odd n and in Y- for even n.
pub fn boundary_states(n: usize) -> Result<BoundaryStates> {
    if n < 2 {
        return Err(Error::QubitCount { n, min: 2 });
    }
    let x_plus = parity_sector(n, Sector::XPlus)?;
    let mut init_sym = DVector::from_element(n + 1, C64::new(0.0, 0.0));
    let mut target_sym = DVector::from_element(n + 1, C64::new(0.0, 0.0));

    let pow = 2f64.powi(n as i32 - 1);
    if n % 2 == 1 {
        for k in 0..=(n - 1) / 2 {
            let col = x_plus.embed.column(k);
            let init_c = (binomial(n, k) / pow).sqrt();
            let target_c =
                (binomial(n, k) / (pow * n as f64)).sqrt() * if k % 2 == 0 { 1.0 } else { -1.0 } * (n as f64 - 2.0 * k as f64);
            init_sym += col * C64::new(init_c, 0.0);
            target_sym += col * C64::new(target_c, 0.0);
        }
    } else {
        for k in 0..n / 2 {
            let c = (binomial(n, k) / pow).sqrt();
            init_sym += x_plus.embed.column(k) * C64::new(c, 0.0);
        }
        let mid = (binomial(n, n / 2) / (2.0 * pow)).sqrt();
        init_sym += x_plus.embed.column(n / 2) * C64::new(mid, 0.0);

        let y_minus = parity_sector(n, Sector::YMinus)?;
        let i_unit = C64::new(0.0, 1.0);
        for k in 0..n / 2 {
            let mag = (binomial(n, k) / (pow * n as f64)).sqrt() * (2.0 * k as f64 - n as f64);
            // i^(k-1) = i^k / i
            let phase = i_unit.powu(k as u32) / i_unit;
            target_sym += y_minus.embed.column(k) * (phase * C64::new(mag, 0.0));
        }
    }

    Ok(BoundaryStates { n, init_sym, target_sym })
}
