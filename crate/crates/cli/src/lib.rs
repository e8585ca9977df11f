//! Batch front-end: instance manifests, verification and audit runs, exit codes.
//!
//! A run is fully described by a [`Manifest`]. The manifest is hashed in a
//! canonical form (worker count excluded) and the hash is written into the
//! report so a report can be matched to the exact input that produced it.

use std::fs;
use std::path::{Path, PathBuf};

use hopfcx::instances::{convention_audit, verify_instance, AuditReport};
use hopfcx::report::sha256_hex;
use hopfcx::{ConventionPoint, FiberMatrix, InstanceDescriptor, InstanceKind, ProbeConfig, VerificationReport};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_REGULARITY: i32 = 2;
pub const EXIT_MANIFEST: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("{0}")]
    Core(hopfcx::Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_regularity() => EXIT_REGULARITY,
            CliError::Core(_) | CliError::Manifest(_) => EXIT_MANIFEST,
            // An unwritable output path is an input problem too.
            CliError::Io { .. } => EXIT_MANIFEST,
        }
    }
}

impl From<hopfcx::Error> for CliError {
    fn from(e: hopfcx::Error) -> Self {
        CliError::Core(e)
    }
}

/// A sign convention given either as a lattice index or as explicit flags.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConventionSpec {
    Index(usize),
    Flags(ConventionPoint),
}

impl Default for ConventionSpec {
    fn default() -> Self {
        ConventionSpec::Index(0)
    }
}

impl ConventionSpec {
    pub fn resolve(self) -> Result<ConventionPoint, CliError> {
        match self {
            ConventionSpec::Index(i) if i < ConventionPoint::COUNT => Ok(ConventionPoint::from_index(i)),
            ConventionSpec::Index(i) => Err(CliError::Manifest(format!(
                "convention index {i} out of range (0..{})",
                ConventionPoint::COUNT
            ))),
            ConventionSpec::Flags(c) => Ok(c),
        }
    }
}

fn default_samples() -> usize {
    200
}
fn default_pairs() -> usize {
    20
}
fn default_seed() -> u64 {
    42
}
fn default_tol() -> f64 {
    1e-9
}

/// The input document of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub instance: String,
    /// Instance parameter; the instance default when absent.
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub convention: ConventionSpec,
    #[serde(default)]
    pub fiber_matrix: Option<FiberMatrix>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_pairs")]
    pub pairs: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Thread count; 0 uses the rayon default. Never affects report bytes.
    #[serde(default)]
    pub workers: usize,
}

impl Manifest {
    pub fn new(instance: &str) -> Self {
        Manifest {
            instance: instance.to_string(),
            n: None,
            convention: ConventionSpec::default(),
            fiber_matrix: None,
            samples: default_samples(),
            pairs: default_pairs(),
            seed: default_seed(),
            tol: default_tol(),
            workers: 0,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Manifest(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Validates the manifest and resolves defaults.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let kind: InstanceKind = self.instance.parse()?;
        if self.samples == 0 {
            return Err(CliError::Manifest("samples must be at least 1".into()));
        }
        if self.pairs == 0 {
            return Err(CliError::Manifest("pairs must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Manifest(format!("tol must be positive, got {}", self.tol)));
        }
        let convention = self.convention.resolve()?;
        let fiber = match self.fiber_matrix {
            Some(m) => FiberMatrix::new(m.alpha, m.beta, m.gamma, m.delta)?,
            None => FiberMatrix::standard(),
        };
        Ok(RunConfig {
            kind,
            n: self.n.unwrap_or_else(|| kind.default_n()),
            convention,
            fiber,
            probe: ProbeConfig::new(self.samples, self.pairs, self.seed, self.tol),
            workers: self.workers,
            manifest_sha256: self.canonical_hash(kind, convention, fiber),
        })
    }

    fn canonical_hash(&self, kind: InstanceKind, convention: ConventionPoint, fiber: FiberMatrix) -> String {
        #[derive(Serialize)]
        struct Canonical<'a> {
            instance: &'a str,
            n: usize,
            convention: usize,
            fiber_matrix: [String; 4],
            samples: usize,
            pairs: usize,
            seed: u64,
            tol: String,
        }
        let f = hopfcx::report::format_float;
        let c = Canonical {
            instance: kind.name(),
            n: self.n.unwrap_or_else(|| kind.default_n()),
            convention: convention.index(),
            fiber_matrix: [f(fiber.alpha), f(fiber.beta), f(fiber.gamma), f(fiber.delta)],
            samples: self.samples,
            pairs: self.pairs,
            seed: self.seed,
            tol: f(self.tol),
        };
        sha256_hex(serde_json::to_string(&c).expect("manifest serializes").as_bytes())
    }
}

/// A validated run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub kind: InstanceKind,
    pub n: usize,
    pub convention: ConventionPoint,
    pub fiber: FiberMatrix,
    pub probe: ProbeConfig,
    pub workers: usize,
    pub manifest_sha256: String,
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Builds the instance and runs its full suite.
pub fn verify(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    with_workers(cfg.workers, || {
        let d = InstanceDescriptor::build(cfg.kind, cfg.n, cfg.convention)?;
        let mut report = verify_instance(&d, cfg.fiber, &cfg.probe);
        report.environment.manifest_sha256 = Some(cfg.manifest_sha256.clone());
        Ok(report)
    })
}

/// Runs the convention audit for a bundle instance.
pub fn audit(cfg: &RunConfig) -> Result<AuditReport, CliError> {
    if !cfg.kind.has_bundle() {
        return Err(CliError::Manifest(format!(
            "instance '{}' carries no bundle to audit",
            cfg.kind.name()
        )));
    }
    with_workers(cfg.workers, || {
        let mut report = convention_audit(cfg.kind, cfg.n, &cfg.probe)?;
        report.environment.manifest_sha256 = Some(cfg.manifest_sha256.clone());
        Ok(report)
    })
}

/// Result of a front-end run: the serialized document and the exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub document: Option<String>,
    pub summary: String,
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    if let Some(path) = out {
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(())
}

fn failed(e: CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        document: None,
        summary: format!("error: {e}"),
    }
}

/// Exit 0 iff every non-vacuous check passes, 1 on any failure, 2 on
/// regularity or sampling errors, 3 on manifest errors.
pub fn run_verify(manifest: &Manifest, out: Option<&Path>) -> Outcome {
    let run = || -> Result<Outcome, CliError> {
        let cfg = manifest.resolve()?;
        let report = verify(&cfg)?;
        let doc = report.to_json();
        write_out(out, &doc)?;
        let (code, summary) = match report.first_failure() {
            None if report.errors.is_empty() => (EXIT_PASS, format!("{}: all checks pass", report.subject)),
            None => (
                EXIT_CHECK_FAILURE,
                format!("{}: {} evaluation errors", report.subject, report.errors.len()),
            ),
            Some(c) => (
                EXIT_CHECK_FAILURE,
                format!(
                    "{}: {} failing checks, first {} (max {:e})",
                    report.subject,
                    report.failures().count(),
                    c.id,
                    c.max()
                ),
            ),
        };
        Ok(Outcome {
            code,
            document: Some(doc),
            summary,
        })
    };
    run().unwrap_or_else(failed)
}

/// Exit 0 iff at least one convention passes every guaranteed sub-check.
pub fn run_audit(manifest: &Manifest, out: Option<&Path>) -> Outcome {
    let run = || -> Result<Outcome, CliError> {
        let cfg = manifest.resolve()?;
        let report = audit(&cfg)?;
        let doc = report.to_json();
        write_out(out, &doc)?;
        let mut summary = String::new();
        for row in &report.rows {
            summary.push_str(&format!(
                "{:>2} [{:>2}] {:<40} guaranteed={} full={} failed={} worst={:e}\n",
                row.rank,
                row.index,
                row.label,
                row.guaranteed_pass,
                row.full_pass,
                row.failed_checks,
                row.worst_failing_residual.0
            ));
        }
        let code = if report.any_guaranteed_pass() {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILURE
        };
        Ok(Outcome {
            code,
            document: Some(doc),
            summary,
        })
    };
    run().unwrap_or_else(failed)
}

/// One line per catalog entry: name, default n, description.
pub fn list_instances() -> String {
    InstanceKind::ALL
        .iter()
        .map(|k| format!("{:<16} n={:<3} {}\n", k.name(), k.default_n(), k.description()))
        .collect()
}
