//! Numerical search for W-state pulse parameters in the linear-dimension
//! symmetric representation: the fidelity objective, a seeded multistart
//! Nelder-Mead optimizer, and the minimum-parameter-count scan over system
//! size.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sim::{Pulse, PulseSequence};
use crate::symmetry::{BoundaryStates, SubspaceRep, boundary_states, evolve_symmetric};

/// Interior block pattern `{ZZ-X}^i {ZZ-Y}^j`; `j = 0` for odd n. Each block
/// contributes two parameters (a ZZ angle and a rotation angle).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ansatz {
    pub n: usize,
    pub zz_x_blocks: usize,
    pub zz_y_blocks: usize,
}

impl Ansatz {
    pub fn new(n: usize, zz_x_blocks: usize, zz_y_blocks: usize) -> Self {
        Ansatz { n, zz_x_blocks, zz_y_blocks }
    }

    pub fn param_count(&self) -> usize {
        2 * (self.zz_x_blocks + self.zz_y_blocks)
    }

    /// Interior pulses for a parameter vector, in time order.
    pub fn interior_sequence(&self, params: &[f64]) -> Result<PulseSequence> {
        self.check_params(params)?;
        let mut pulses = Vec::with_capacity(params.len());
        for b in 0..self.zz_x_blocks {
            pulses.push(Pulse::zz(params[2 * b]));
            pulses.push(Pulse::x(params[2 * b + 1]));
        }
        let off = 2 * self.zz_x_blocks;
        for b in 0..self.zz_y_blocks {
            pulses.push(Pulse::zz(params[off + 2 * b]));
            pulses.push(Pulse::y(params[off + 2 * b + 1]));
        }
        Ok(PulseSequence::new(self.n, pulses))
    }

    /// Full preparation sequence: `Y(π/4)` opener, interior blocks, and the
    /// parity-matched closer (`Y(π/4)` for odd n, `X(π/4)` for even n). The
    /// opener and closer are not counted as parameters.
    pub fn full_sequence(&self, params: &[f64]) -> Result<PulseSequence> {
        let interior = self.interior_sequence(params)?;
        let mut pulses = vec![Pulse::y(FRAC_PI_4)];
        pulses.extend(interior.pulses);
        if self.n % 2 == 1 {
            pulses.push(Pulse::y(FRAC_PI_4));
        } else {
            pulses.push(Pulse::x(FRAC_PI_4));
        }
        Ok(PulseSequence::new(self.n, pulses))
    }

    fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.param_count() {
            return Err(Error::ParamCount { expected: self.param_count(), found: params.len() });
        }
        Ok(())
    }
}

/// Multistart configuration. Defaults: 100 restarts, a 0.999 fidelity
/// threshold, and a 500-evaluation budget per restart. The budget keeps a
/// full scan fast; note that raising it lets the multistart find rare
/// low-parameter solutions at large n, which flattens the count-vs-n curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Objective evaluation budget per restart.
    pub max_evals: usize,
    /// Simplex-size convergence tolerance.
    pub ftol: f64,
    /// Success threshold on the achieved fidelity.
    pub threshold: f64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        OptimizationConfig {
            restarts: 100,
            seed: 1,
            max_evals: 500,
            ftol: 1e-12,
            threshold: 0.999,
        }
    }
}

impl OptimizationConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be >= 1".into()));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::InvalidConfig("threshold must be in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub ansatz: Ansatz,
    pub best_params: Vec<f64>,
    pub best_fidelity: f64,
    pub evals_used: usize,
    pub restart_index: usize,
    pub success: bool,
}

/// Wraps an angle into `[-π, π)`; the objective is 2π-periodic per
/// parameter because all generator eigenvalue differences are integers.
fn wrap_angle(theta: f64) -> f64 {
    let wrapped = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if wrapped >= PI { wrapped - 2.0 * PI } else { wrapped }
}

/// `1 - |⟨target_sym|U(params)|init_sym⟩|` evaluated in the (n+1)-dim
/// symmetric representation.
pub fn objective(params: &[f64], ansatz: &Ansatz, boundary: &BoundaryStates) -> Result<f64> {
    let rep = SubspaceRep::symmetric(ansatz.n)?;
    objective_with_rep(params, ansatz, boundary, &rep)
}

fn objective_with_rep(
    params: &[f64],
    ansatz: &Ansatz,
    boundary: &BoundaryStates,
    rep: &SubspaceRep,
) -> Result<f64> {
    let interior = ansatz.interior_sequence(params)?;
    let mut state = boundary.init_sym.clone();
    for pulse in &interior.pulses {
        state = evolve_symmetric(&state, *pulse, rep)?;
    }
    let overlap: C64 = boundary
        .target_sym
        .iter()
        .zip(state.iter())
        .map(|(t, s)| t.conj() * s)
        .sum();
    Ok(1.0 - overlap.norm())
}

struct SimplexOutcome {
    params: Vec<f64>,
    value: f64,
    evals: usize,
}

/// Standard Nelder-Mead on an unconstrained parameter space (angles are
/// wrapped at evaluation time). Stops on the evaluation budget, simplex
/// collapse, or once `stop_below` is reached.
fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    max_evals: usize,
    ftol: f64,
    stop_below: f64,
) -> SimplexOutcome {
    let dim = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evals)).collect();

    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    loop {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        let spread = values[worst] - values[best];
        if values[best] <= stop_below || evals >= max_evals || spread < ftol {
            return SimplexOutcome {
                params: simplex[best].clone(),
                value: values[best],
                evals,
            };
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; dim];
        for (i, v) in simplex.iter().enumerate() {
            if i == worst {
                continue;
            }
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }

        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&simplex[worst])
            .map(|(c, w)| c + alpha * (c - w))
            .collect();
        let f_reflect = eval(&reflect, &mut evals);

        if f_reflect < values[best] {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&reflect)
                .map(|(c, r)| c + gamma * (r - c))
                .collect();
            let f_expand = eval(&expand, &mut evals);
            if f_expand < f_reflect {
                simplex[worst] = expand;
                values[worst] = f_expand;
            } else {
                simplex[worst] = reflect;
                values[worst] = f_reflect;
            }
        } else if f_reflect < values[second_worst] {
            simplex[worst] = reflect;
            values[worst] = f_reflect;
        } else {
            let contract: Vec<f64> = if f_reflect < values[worst] {
                centroid
                    .iter()
                    .zip(&reflect)
                    .map(|(c, r)| c + rho * (r - c))
                    .collect()
            } else {
                centroid
                    .iter()
                    .zip(&simplex[worst])
                    .map(|(c, w)| c + rho * (w - c))
                    .collect()
            };
            let f_contract = eval(&contract, &mut evals);
            if f_contract < values[worst].min(f_reflect) {
                simplex[worst] = contract;
                values[worst] = f_contract;
            } else {
                // Shrink toward the best vertex.
                let best_point = simplex[best].clone();
                for i in 0..=dim {
                    if i == best {
                        continue;
                    }
                    for (x, b) in simplex[i].iter_mut().zip(&best_point) {
                        *x = b + sigma * (*x - b);
                    }
                    values[i] = eval(&simplex[i].clone(), &mut evals);
                }
            }
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed derived per (base seed, n, restart index) so restarts are independent
/// and the whole run is reproducible.
fn restart_seed(seed: u64, n: usize, restart: usize) -> u64 {
    splitmix64(seed ^ splitmix64(n as u64) ^ splitmix64(0x5151_u64 ^ restart as u64))
}

/// Multistart Nelder-Mead over the ansatz parameters. Restarts run in
/// parallel; the winner is chosen by (fidelity, restart index) so parallel
/// and serial runs agree exactly.
pub fn optimize(
    ansatz: &Ansatz,
    boundary: &BoundaryStates,
    config: &OptimizationConfig,
) -> Result<OptimizationResult> {
    config.validate()?;
    let rep = SubspaceRep::symmetric(ansatz.n)?;
    let dim = ansatz.param_count();
    let stop_below = 1.0 - config.threshold;

    let runs: Vec<SimplexOutcome> = (0..config.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(config.seed, ansatz.n, restart));
            let x0: Vec<f64> = (0..dim).map(|_| rng.gen_range(-PI..PI)).collect();
            let f = |x: &[f64]| {
                let wrapped: Vec<f64> = x.iter().copied().map(wrap_angle).collect();
                objective_with_rep(&wrapped, ansatz, boundary, &rep).expect("valid params")
            };
            nelder_mead(f, &x0, 0.4, config.max_evals, config.ftol, stop_below)
        })
        .collect();

    let evals_used = runs.iter().map(|r| r.evals).sum();
    let (restart_index, best) = runs
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.value.total_cmp(&b.value).then(ia.cmp(ib)))
        .expect("restarts >= 1");

    let best_fidelity = 1.0 - best.value;
    Ok(OptimizationResult {
        ansatz: *ansatz,
        best_params: best.params.iter().copied().map(wrap_angle).collect(),
        best_fidelity,
        evals_used,
        restart_index,
        success: best_fidelity >= config.threshold,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRecord {
    pub n: usize,
    /// `None` when the budget was exhausted without reaching the threshold.
    pub min_param_count: Option<usize>,
    pub fidelity: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub records: Vec<ScanRecord>,
    pub fit: Option<LinearFit>,
}

/// Ansatz shapes for a given n in enumeration order: fewest blocks first.
/// Odd n uses `{ZZ-X}^i` only; even n splits `i + j = b` with `i, j >= 1`,
/// larger `i` first.
fn ansatz_candidates(n: usize, max_blocks: usize) -> Vec<Ansatz> {
    let mut out = Vec::new();
    if n % 2 == 1 {
        for i in 1..=max_blocks {
            out.push(Ansatz::new(n, i, 0));
        }
    } else {
        for b in 2..=max_blocks {
            for j in 1..b {
                out.push(Ansatz::new(n, b - j, j));
            }
        }
    }
    out
}

/// Increments the ansatz size per n until the optimizer reaches the fidelity
/// threshold, recording the minimal interior parameter count, then fits a
/// line to (n, count). Budget exhaustion at some n is recorded as an
/// unresolved row; the scan continues.
pub fn min_params_scan(
    n_from: usize,
    n_to: usize,
    config: &OptimizationConfig,
) -> Result<ScanResult> {
    if n_from < 2 || n_to < n_from {
        return Err(Error::InvalidRange { from: n_from, to: n_to });
    }
    config.validate()?;

    let mut records = Vec::new();
    for n in n_from..=n_to {
        let seed_n = splitmix64(config.seed ^ splitmix64(n as u64));
        let per_n = OptimizationConfig { seed: seed_n, ..*config };
        let boundary = boundary_states(n)?;
        let max_blocks = 2 * n;

        let mut record = ScanRecord { n, min_param_count: None, fidelity: 0.0, seed: seed_n };
        for ansatz in ansatz_candidates(n, max_blocks) {
            let result = optimize(&ansatz, &boundary, &per_n)?;
            if result.success {
                record.min_param_count = Some(ansatz.param_count());
                record.fidelity = result.best_fidelity;
                break;
            }
            record.fidelity = record.fidelity.max(result.best_fidelity);
        }
        records.push(record);
    }

    let points: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| r.min_param_count.map(|p| (r.n as f64, p as f64)))
        .collect();
    let fit = linear_fit(&points);
    Ok(ScanResult { records, fit })
}

/// Least-squares line through (x, y) points with the correlation coefficient.
pub fn linear_fit(points: &[(f64, f64)]) -> Option<LinearFit> {
    if points.len() < 2 {
        return None;
    }
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r = if syy == 0.0 { 1.0 } else { sxy / (sxx * syy).sqrt() };
    Some(LinearFit { slope, intercept, r })
}
