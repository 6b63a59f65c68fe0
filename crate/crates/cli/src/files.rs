//! On-disk artifact formats: JSON sequence and state files, the scan CSV
//! table with its JSON fit sidecar, and the controllability report array.
//! All writes go through a temp-file-plus-rename so readers never observe a
//! partial file.

use std::fs;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use isingprep_core::{
    Basis, ControllabilityReport, NamedSequence, Pulse, PulseKind, PulseSequence, ScanResult,
    StateVector, TargetState,
};

use crate::commands::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindTag {
    #[serde(rename = "ZZ")]
    Zz,
    X,
    Y,
}

impl From<PulseKind> for KindTag {
    fn from(kind: PulseKind) -> Self {
        match kind {
            PulseKind::Zz => KindTag::Zz,
            PulseKind::X => KindTag::X,
            PulseKind::Y => KindTag::Y,
        }
    }
}

impl From<KindTag> for PulseKind {
    fn from(tag: KindTag) -> Self {
        match tag {
            KindTag::Zz => PulseKind::Zz,
            KindTag::X => PulseKind::X,
            KindTag::Y => PulseKind::Y,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseEntry {
    pub kind: KindTag,
    pub angle: f64,
}

/// Serialized pulse sequence. Angles are radians; pulses apply in array
/// order. JSON numbers round-trip f64 exactly (shortest representation).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    pub schema_version: u32,
    pub n: usize,
    pub pulses: Vec<PulseEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

impl SequenceFile {
    pub fn from_sequence(seq: &PulseSequence, label: Option<String>, target: Option<String>) -> Self {
        SequenceFile {
            schema_version: SCHEMA_VERSION,
            n: seq.n,
            pulses: seq
                .pulses
                .iter()
                .map(|p| PulseEntry { kind: p.kind.into(), angle: p.angle })
                .collect(),
            label,
            target,
        }
    }

    pub fn from_named(named: &NamedSequence) -> Self {
        let target = match named.target {
            TargetState::Ghz => "ghz",
            TargetState::W => "w",
        };
        Self::from_sequence(&named.seq, Some(named.label.clone()), Some(target.to_string()))
    }

    pub fn to_sequence(&self) -> Result<PulseSequence, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Parse(format!(
                "unsupported schema_version {} (expected {})",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        if self.n < 1 {
            return Err(CliError::Parse("field n must be >= 1".into()));
        }
        let mut pulses = Vec::with_capacity(self.pulses.len());
        for (i, entry) in self.pulses.iter().enumerate() {
            if !entry.angle.is_finite() {
                return Err(CliError::Parse(format!("pulses[{i}].angle is not finite")));
            }
            pulses.push(Pulse { kind: entry.kind.into(), angle: entry.angle });
        }
        Ok(PulseSequence::new(self.n, pulses))
    }
}

/// Serialized state vector in the full computational basis; amplitudes are
/// `[re, im]` pairs indexed by bit pattern.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub schema_version: u32,
    pub n: usize,
    pub amps: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(state: &StateVector) -> Self {
        StateFile {
            schema_version: SCHEMA_VERSION,
            n: state.n(),
            amps: state.amps().iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn to_state(&self) -> Result<StateVector, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Parse(format!(
                "unsupported schema_version {} (expected {})",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        if self.amps.len() != 1usize << self.n {
            return Err(CliError::Parse(format!(
                "field amps has {} entries, expected {}",
                self.amps.len(),
                1usize << self.n
            )));
        }
        for (i, [re, im]) in self.amps.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(CliError::Parse(format!("amps[{i}] is not finite")));
            }
        }
        let amps = self.amps.iter().map(|[re, im]| C64::new(*re, *im)).collect();
        StateVector::from_amps(self.n, Basis::Full, amps)
            .map_err(|e| CliError::Parse(e.to_string()))
    }
}

#[derive(Debug, Serialize)]
struct EdgeEntry {
    from: usize,
    to: usize,
    coupling: f64,
}

#[derive(Debug, Serialize)]
pub struct ReportEntry {
    n: usize,
    sector: &'static str,
    dim: usize,
    edges: Vec<EdgeEntry>,
    frequencies: Vec<i64>,
    connected: bool,
    nondegenerate: bool,
    nonadjacent_coincidence: bool,
    commutant_dim: usize,
    controllable: bool,
}

impl From<&ControllabilityReport> for ReportEntry {
    fn from(r: &ControllabilityReport) -> Self {
        ReportEntry {
            n: r.n,
            sector: r.sector.name(),
            dim: r.dim,
            edges: r
                .edges
                .iter()
                .map(|e| EdgeEntry { from: e.from, to: e.to, coupling: e.coupling })
                .collect(),
            frequencies: r.frequencies.clone(),
            connected: r.connected,
            nondegenerate: r.nondegenerate,
            nonadjacent_coincidence: r.nonadjacent_coincidence,
            commutant_dim: r.commutant_dim,
            controllable: r.controllable,
        }
    }
}

/// CSV table for the minimum-parameter scan; unresolved rows leave the
/// min_params column empty.
pub fn scan_csv(result: &ScanResult) -> String {
    let mut out = String::from("n,min_params,fidelity,seed\n");
    for record in &result.records {
        let min = record
            .min_param_count
            .map_or(String::new(), |p| p.to_string());
        out.push_str(&format!("{},{},{},{}\n", record.n, min, record.fidelity, record.seed));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct FitSidecar {
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub r: Option<f64>,
}

impl From<&ScanResult> for FitSidecar {
    fn from(result: &ScanResult) -> Self {
        FitSidecar {
            slope: result.fit.map(|f| f.slope),
            intercept: result.fit.map(|f| f.intercept),
            r: result.fit.map(|f| f.r),
        }
    }
}

/// Writes a sibling temp file and renames it over the target.
pub fn atomic_write(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, contents)
        .map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    atomic_write(path, &text)
}
