//! Executable controllability and irreducibility checks for the parity
//! sectors: connectivity graph of the ZZ eigenstates under the sector's
//! control generator, transition-frequency non-degeneracy, and commutant
//! triviality.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::sim::PulseKind;
use crate::symmetry::{Sector, parity_sector};

const COUPLING_TOL: f64 = 1e-12;

/// A nonzero control-matrix element linking two ZZ eigenstates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub coupling: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllabilityReport {
    pub n: usize,
    pub sector: Sector,
    pub dim: usize,
    pub edges: Vec<Edge>,
    /// Adjacent eigenvalue differences `λ_k - λ_{k+1} = 2(n+1) - 4k`; exact
    /// integers, so degeneracy checks need no floating tolerance.
    pub frequencies: Vec<i64>,
    pub connected: bool,
    /// Adjacent transition frequencies pairwise distinct in magnitude.
    pub nondegenerate: bool,
    /// Whether any non-adjacent eigenvalue gap collides with another gap.
    /// Recorded for inspection; not part of the controllability criterion.
    pub nonadjacent_coincidence: bool,
    pub commutant_dim: usize,
    /// `connected && nondegenerate`, the hypothesis of the graph-connectivity
    /// controllability criterion.
    pub controllable: bool,
}

/// Twice the k-th ZZ eigenvalue (1-based k), always an integer:
/// `2λ_k = (2k-2-n)² - n`.
fn two_lambda(n: usize, k: usize) -> i64 {
    let d = 2 * k as i64 - 2 - n as i64;
    d * d - n as i64
}

fn connected_components(dim: usize, edges: &[Edge]) -> usize {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if a != b {
            parent[a] = b;
        }
    }
    (0..dim).filter(|&v| find(&mut parent, v) == v).count()
}

/// Builds the connectivity report for one parity sector.
pub fn connectivity_report(n: usize, sector: Sector) -> Result<ControllabilityReport> {
    let rep = parity_sector(n, sector)?;
    let kind = match sector {
        Sector::XPlus | Sector::XMinus => PulseKind::X,
        Sector::YPlus | Sector::YMinus => PulseKind::Y,
        Sector::Symmetric => PulseKind::X,
    };
    let generator = rep
        .generator(kind)
        .ok_or(Error::KindNotInSector { kind, sector })?
        .clone();

    let mut edges = Vec::new();
    for j in 0..rep.dim {
        for k in (j + 1)..rep.dim {
            let coupling = generator[(j, k)].norm();
            if coupling > COUPLING_TOL {
                edges.push(Edge { from: j, to: k, coupling });
            }
        }
    }

    let frequencies: Vec<i64> = (1..rep.dim)
        .map(|k| (two_lambda(n, k) - two_lambda(n, k + 1)) / 2)
        .collect();

    let connected = connected_components(rep.dim, &edges) <= 1;
    let nondegenerate = {
        let mut mags: Vec<i64> = frequencies.iter().map(|f| f.abs()).collect();
        mags.sort_unstable();
        mags.windows(2).all(|w| w[0] != w[1])
    };

    // All pairwise gaps |λ_j - λ_k|, flagged when two distinct pairs share a
    // magnitude and at least one pair is non-adjacent.
    let mut gaps: Vec<(i64, bool)> = Vec::new();
    for j in 1..=rep.dim {
        for k in (j + 1)..=rep.dim {
            let gap = ((two_lambda(n, j) - two_lambda(n, k)) / 2).abs();
            gaps.push((gap, k == j + 1));
        }
    }
    let mut nonadjacent_coincidence = false;
    for (i, a) in gaps.iter().enumerate() {
        for b in &gaps[i + 1..] {
            if a.0 == b.0 && !(a.1 && b.1) {
                nonadjacent_coincidence = true;
            }
        }
    }

    let commutant_dim = commutant_dimension(&[rep.h_zz.clone(), generator])?;

    Ok(ControllabilityReport {
        n,
        sector,
        dim: rep.dim,
        edges,
        frequencies,
        connected,
        nondegenerate,
        nonadjacent_coincidence,
        commutant_dim,
        controllable: connected && nondegenerate,
    })
}

/// Dimension of `{A : [M, A] = 0 for all M}`, computed as the null-space
/// dimension of the stacked commutator map on d×d matrices. Returns 1 iff
/// the set acts irreducibly.
pub fn commutant_dimension(mats: &[DMatrix<C64>]) -> Result<usize> {
    let d = match mats.first() {
        Some(m) => m.nrows(),
        None => return Err(Error::MatrixDimension),
    };
    if mats.iter().any(|m| m.nrows() != d || m.ncols() != d) {
        return Err(Error::MatrixDimension);
    }
    // vec([M, A]) = (M ⊗ I - I ⊗ Mᵀ) vec(A), stacked over all M.
    let id = DMatrix::<C64>::identity(d, d);
    let mut stacked = DMatrix::<C64>::zeros(mats.len() * d * d, d * d);
    for (i, m) in mats.iter().enumerate() {
        let block = m.kronecker(&id) - id.kronecker(&m.transpose());
        stacked.view_mut((i * d * d, 0), (d * d, d * d)).copy_from(&block);
    }
    let svd = stacked.svd(false, false);
    let smax = svd.singular_values.max();
    if smax <= 0.0 {
        return Ok(d * d);
    }
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > 1e-9 * smax)
        .count();
    Ok(d * d - rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(d: usize, f: impl Fn(usize, usize) -> C64) -> DMatrix<C64> {
        DMatrix::from_fn(d, d, f)
    }

    #[test]
    fn identity_commutes_with_everything() {
        let id = DMatrix::<C64>::identity(3, 3);
        assert_eq!(commutant_dimension(&[id]).unwrap(), 9);
    }

    #[test]
    fn distinct_diagonal_has_diagonal_commutant() {
        let m = cm(4, |i, j| {
            if i == j { C64::new(i as f64 + 1.0, 0.0) } else { C64::new(0.0, 0.0) }
        });
        assert_eq!(commutant_dimension(&[m]).unwrap(), 4);
    }

    #[test]
    fn sector_pairs_are_irreducible() {
        let report = connectivity_report(5, Sector::XPlus).unwrap();
        assert_eq!(report.commutant_dim, 1);
        for n in 4..=12 {
            if n % 2 == 0 {
                let report = connectivity_report(n, Sector::YMinus).unwrap();
                assert_eq!(report.commutant_dim, 1, "n={n}");
            }
        }
    }

    #[test]
    fn n5_x_plus_frequencies() {
        let report = connectivity_report(5, Sector::XPlus).unwrap();
        assert_eq!(report.frequencies, vec![8, 4]);
        assert!(report.connected);
        assert!(report.nondegenerate);
        assert!(report.controllable);
    }

    #[test]
    fn edge_couplings_match_collective_spin_elements() {
        for n in 3..=10 {
            for sector in [Sector::XPlus, Sector::XMinus, Sector::YPlus, Sector::YMinus] {
                let report = connectivity_report(n, sector).unwrap();
                for e in &report.edges {
                    assert_eq!(e.to, e.from + 1, "n={n} {sector:?}");
                    let k = e.from + 1;
                    // The edge into the even-n self-paired middle vector picks
                    // up a √2 from the pair normalization.
                    let expected = if n % 2 == 0 && k == n / 2 && e.to == report.dim - 1 {
                        (n as f64 * (n + 2) as f64 / 2.0).sqrt()
                    } else {
                        (k as f64 * (n - k + 1) as f64).sqrt()
                    };
                    assert!((e.coupling - expected).abs() < 1e-10, "n={n} {sector:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let a = DMatrix::<C64>::identity(2, 2);
        let b = DMatrix::<C64>::identity(3, 3);
        assert!(commutant_dimension(&[a, b]).is_err());
    }

    #[test]
    fn commutant_agrees_with_brute_force_small() {
        // Brute force: row-reduce the same constraints with plain Gaussian
        // elimination, independent of the SVD path.
        fn brute(mats: &[DMatrix<C64>]) -> usize {
            let d = mats[0].nrows();
            let mut rows: Vec<Vec<C64>> = Vec::new();
            for m in mats {
                for p in 0..d {
                    for q in 0..d {
                        // constraint row for entry (p, q) of [M, A]
                        let mut row = vec![C64::new(0.0, 0.0); d * d];
                        for r in 0..d {
                            row[r * d + q] += m[(p, r)];
                            row[p * d + r] -= m[(r, q)];
                        }
                        rows.push(row);
                    }
                }
            }
            let mut rank = 0;
            let cols = d * d;
            let mut used = vec![false; rows.len()];
            for c in 0..cols {
                let mut pivot = None;
                for (i, row) in rows.iter().enumerate() {
                    if !used[i] && row[c].norm() > 1e-8 {
                        pivot = Some(i);
                        break;
                    }
                }
                let Some(p) = pivot else { continue };
                used[p] = true;
                rank += 1;
                let prow = rows[p].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != p && row[c].norm() > 0.0 {
                        let factor = row[c] / prow[c];
                        for (x, y) in row.iter_mut().zip(&prow) {
                            *x -= factor * y;
                        }
                    }
                }
            }
            cols - rank
        }

        for n in [3usize, 4, 5] {
            let rep = parity_sector(n, Sector::XPlus).unwrap();
            let mats = vec![rep.h_zz.clone(), rep.h_x.clone().unwrap()];
            assert_eq!(commutant_dimension(&mats).unwrap(), brute(&mats), "n={n}");
        }
        let id = [DMatrix::<C64>::identity(3, 3)];
        assert_eq!(commutant_dimension(&id).unwrap(), brute(&id));
    }
}
