//! Command implementations and the exit-code contract:
//! 0 success, 1 usage, 2 parse/IO, 3 threshold not met, 4 budget exhausted.

use std::fmt;
use std::path::{Path, PathBuf};

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use serde::Deserialize;

use isingprep_core::{
    Ansatz, NamedSequence, OptimizationConfig, PulseSequence, Sector, StateVector, SubspaceRep,
    apply_sequence, boundary_states, connectivity_report, evolve_symmetric, fidelity, ghz_sequence,
    ghz_state, min_params_scan, optimize, w3_sequence, w4_sequence, w_state,
};

use crate::files::{
    FitSidecar, ReportEntry, SequenceFile, StateFile, atomic_write, read_json, scan_csv,
    write_json,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parse(String),
    Threshold(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::Threshold(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg)
            | CliError::Io(msg)
            | CliError::Parse(msg)
            | CliError::Threshold(msg)
            | CliError::Budget(msg) => f.write_str(msg),
        }
    }
}

impl From<isingprep_core::Error> for CliError {
    fn from(e: isingprep_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// JSON mirror of [`OptimizationConfig`]; absent fields keep their defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigFile {
    pub restarts: Option<usize>,
    pub seed: Option<u64>,
    pub max_evals: Option<usize>,
    pub ftol: Option<f64>,
    pub threshold: Option<f64>,
}

/// Flag values that override both defaults and the config file.
#[derive(Debug, Default, Clone, Copy)]
pub struct ConfigOverrides {
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub threshold: Option<f64>,
    pub max_evals: Option<usize>,
}

pub fn resolve_config(
    config_path: Option<&Path>,
    overrides: &ConfigOverrides,
) -> Result<OptimizationConfig, CliError> {
    let mut config = OptimizationConfig::default();
    if let Some(path) = config_path {
        let file: ConfigFile = read_json(path)?;
        if let Some(v) = file.restarts {
            config.restarts = v;
        }
        if let Some(v) = file.seed {
            config.seed = v;
        }
        if let Some(v) = file.max_evals {
            config.max_evals = v;
        }
        if let Some(v) = file.ftol {
            config.ftol = v;
        }
        if let Some(v) = file.threshold {
            config.threshold = v;
        }
    }
    if let Some(v) = overrides.seed {
        config.seed = v;
    }
    if let Some(v) = overrides.restarts {
        config.restarts = v;
    }
    if let Some(v) = overrides.threshold {
        config.threshold = v;
    }
    if let Some(v) = overrides.max_evals {
        config.max_evals = v;
    }
    Ok(config)
}

fn write_sequence(path: &Path, file: &SequenceFile) -> Result<(), CliError> {
    write_json(path, file)
}

fn print_fidelity(f: f64) {
    println!("fidelity {f:.12}");
}

/// Fidelity of a sequence applied to `|0⋯0⟩` against the W state, computed
/// in the (n+1)-dimensional symmetric representation. Used past the
/// full-space cap; every available pulse preserves the symmetric subspace.
fn w_fidelity_symmetric(seq: &PulseSequence) -> Result<f64, CliError> {
    let n = seq.n;
    let rep = SubspaceRep::symmetric(n)?;
    let mut coords = DVector::from_fn(n + 1, |i, _| {
        C64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0)
    });
    for pulse in &seq.pulses {
        coords = evolve_symmetric(&coords, *pulse, &rep)?;
    }
    Ok(coords[1].norm())
}

pub fn cmd_ghz(n: usize, out: Option<&Path>, max_full: usize) -> Result<(), CliError> {
    if n < 2 || n > max_full {
        return Err(CliError::Usage(format!(
            "n must be in 2..={max_full} (raise --max-full for larger systems), got {n}"
        )));
    }
    let named = ghz_sequence(n)?;
    let zero = StateVector::zero_state(n)?;
    let prepared = apply_sequence(&zero, &named.seq)?;
    let f = fidelity(&prepared, &ghz_state(n)?)?;
    if let Some(path) = out {
        write_sequence(path, &SequenceFile::from_named(&named))?;
    }
    print_fidelity(f);
    if f < 1.0 - 1e-9 {
        return Err(CliError::Threshold(format!("fidelity {f} below 1 - 1e-9")));
    }
    Ok(())
}

/// Interior block shapes for a given n, fewest blocks first. Odd n and the
/// n = 2 special case use `{ZZ-X}^i` only; even n >= 4 splits `i + j`
/// blocks between X and Y rotations, larger X share first.
fn ansatz_candidates(n: usize, max_blocks: usize) -> Vec<Ansatz> {
    let mut out = Vec::new();
    if n % 2 == 1 || n == 2 {
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

pub fn cmd_w(
    n: usize,
    out: Option<&Path>,
    config_path: Option<&Path>,
    overrides: &ConfigOverrides,
    max_full: usize,
) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("n must be >= 2, got {n}")));
    }
    let config = resolve_config(config_path, overrides)?;

    let (named, threshold) = match n {
        3 => (w3_sequence(), 1.0 - 1e-9),
        4 => (w4_sequence(), 1.0 - 1e-9),
        _ => {
            let boundary = boundary_states(n)?;
            let mut found = None;
            for ansatz in ansatz_candidates(n, 2 * n) {
                let result = optimize(&ansatz, &boundary, &config)?;
                if result.success {
                    found = Some((ansatz, result));
                    break;
                }
            }
            let (ansatz, result) = found.ok_or_else(|| {
                CliError::Budget(format!(
                    "optimizer budget exhausted for n = {n} ({} restarts, {} evals each)",
                    config.restarts, config.max_evals
                ))
            })?;
            let named = NamedSequence {
                label: format!("w-{n}-opt"),
                n,
                seq: ansatz.full_sequence(&result.best_params)?,
                target: isingprep_core::TargetState::W,
            };
            (named, config.threshold)
        }
    };

    let f = if n <= max_full {
        let zero = StateVector::zero_state(n)?;
        fidelity(&apply_sequence(&zero, &named.seq)?, &w_state(n)?)?
    } else {
        w_fidelity_symmetric(&named.seq)?
    };
    if let Some(path) = out {
        write_sequence(path, &SequenceFile::from_named(&named))?;
    }
    print_fidelity(f);
    if f < threshold {
        return Err(CliError::Threshold(format!("fidelity {f} below {threshold}")));
    }
    Ok(())
}

pub fn cmd_simulate(
    seq_path: &Path,
    target: &str,
    dump: Option<&Path>,
    max_full: usize,
) -> Result<(), CliError> {
    let file: SequenceFile = read_json(seq_path)?;
    let seq = file.to_sequence()?;
    if seq.n > max_full {
        return Err(CliError::Usage(format!(
            "n = {} exceeds the full-space cap {max_full} (raise --max-full)",
            seq.n
        )));
    }
    let zero = StateVector::zero_state(seq.n)?;
    let final_state = apply_sequence(&zero, &seq)?;

    let target_state = match target {
        "ghz" => ghz_state(seq.n)?,
        "w" => w_state(seq.n)?,
        path => {
            let state_file: StateFile = read_json(Path::new(path))?;
            let state = state_file.to_state()?;
            if state.n() != seq.n {
                return Err(CliError::Usage(format!(
                    "target state has n = {}, sequence has n = {}",
                    state.n(),
                    seq.n
                )));
            }
            state
        }
    };

    let f = fidelity(&final_state, &target_state)?;
    if let Some(path) = dump {
        write_json(path, &StateFile::from_state(&final_state))?;
    }
    print_fidelity(f);
    Ok(())
}

pub fn cmd_scan(
    n_from: usize,
    n_to: usize,
    out_csv: &Path,
    config_path: Option<&Path>,
    overrides: &ConfigOverrides,
) -> Result<(), CliError> {
    let config = resolve_config(config_path, overrides)?;
    let result = min_params_scan(n_from, n_to, &config)?;

    atomic_write(out_csv, &scan_csv(&result))?;
    let sidecar_path = sidecar_path(out_csv);
    write_json(&sidecar_path, &FitSidecar::from(&result))?;

    for record in &result.records {
        match record.min_param_count {
            Some(p) => println!("n={} min_params={p} fidelity={:.6}", record.n, record.fidelity),
            None => println!("n={} unresolved (best fidelity {:.6})", record.n, record.fidelity),
        }
    }
    if let Some(fit) = result.fit {
        println!("fit slope={:.4} intercept={:.4} r={:.4}", fit.slope, fit.intercept, fit.r);
    }

    if result.records.iter().any(|r| r.min_param_count.is_none()) {
        return Err(CliError::Budget("some rows unresolved within the budget".into()));
    }
    Ok(())
}

fn sidecar_path(csv: &Path) -> PathBuf {
    let mut path = csv.as_os_str().to_owned();
    path.push(".fit.json");
    PathBuf::from(path)
}

pub fn cmd_controllability(
    n_from: usize,
    n_to: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if n_from < 2 || n_to < n_from {
        return Err(CliError::Usage(format!("invalid range {n_from}..={n_to}")));
    }
    let mut entries = Vec::new();
    let mut all_pass = true;
    for n in n_from..=n_to {
        for sector in Sector::PARITY {
            let report = connectivity_report(n, sector)?;
            all_pass &= report.controllable;
            entries.push(ReportEntry::from(&report));
        }
    }

    let text = serde_json::to_string_pretty(&entries)
        .map_err(|e| CliError::Io(e.to_string()))?;
    match out {
        Some(path) => atomic_write(path, &format!("{text}\n"))?,
        None => println!("{text}"),
    }

    if !all_pass {
        return Err(CliError::Threshold("a sector failed the controllability checks".into()));
    }
    Ok(())
}
