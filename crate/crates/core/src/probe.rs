//! Parallel evaluation of per-point checks with order-stable aggregation.
//!
//! Points are sampled and evaluated on the ambient rayon pool; results are
//! collected in index order and folded sequentially, so reports do not depend
//! on the number of worker threads.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{point_rng, LevelSetManifold, Point};
use crate::report::{CheckRecord, VerificationReport};

/// Offset separating tangent-vector streams from point streams.
const TANGENT_STREAM: u64 = 0x7461_6e67_656e_7473;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeConfig {
    pub samples: usize,
    /// Random tangent arguments drawn per point.
    pub pairs: usize,
    pub seed: u64,
    pub tol: f64,
}

impl ProbeConfig {
    pub fn new(samples: usize, pairs: usize, seed: u64, tol: f64) -> Self {
        ProbeConfig {
            samples,
            pairs,
            seed,
            tol,
        }
    }
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig::new(200, 20, 42, 1e-9)
    }
}

/// Residual lists keyed by check id, in first-insertion order.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    entries: Vec<(String, Vec<f64>)>,
    pub errors: Vec<String>,
}

impl Tally {
    fn slot(&mut self, id: &str) -> &mut Vec<f64> {
        let pos = match self.entries.iter().position(|(k, _)| k == id) {
            Some(p) => p,
            None => {
                self.entries.push((id.to_string(), Vec::new()));
                self.entries.len() - 1
            }
        };
        &mut self.entries[pos].1
    }

    pub fn add(&mut self, id: &str, value: f64) {
        self.slot(id).push(value);
    }

    /// Records a fallible residual; an error becomes NaN plus a message.
    pub fn add_result(&mut self, id: &str, value: Result<f64>) {
        match value {
            Ok(v) => self.add(id, v),
            Err(e) => {
                self.add(id, f64::NAN);
                self.errors.push(format!("{id}: {e}"));
            }
        }
    }

    /// Makes sure `id` exists even if no value is ever added.
    pub fn touch(&mut self, id: &str) {
        self.slot(id);
    }

    pub fn merge(&mut self, other: Tally) {
        for (k, v) in other.entries {
            self.slot(&k).extend(v);
        }
        self.errors.extend(other.errors);
    }

    pub fn values(&self, id: &str) -> &[f64] {
        self.entries
            .iter()
            .find(|(k, _)| k == id)
            .map(|(_, v)| v.as_slice())
            .unwrap_or(&[])
    }
}

/// Per-point tangent stream.
pub fn tangent_rng(seed: u64, index: u64) -> ChaCha8Rng {
    point_rng(seed ^ TANGENT_STREAM, index)
}

/// Samples `cfg.samples` points and evaluates `f` at each one in parallel.
pub fn run_points<F>(m: &LevelSetManifold, cfg: &ProbeConfig, f: F) -> Result<Tally>
where
    F: Fn(&Point, &mut ChaCha8Rng) -> Tally + Sync,
{
    let results: Vec<Result<(Tally, usize)>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let (p, rejected) = m.sample_one(cfg.seed, i as u64)?;
            let mut rng = tangent_rng(cfg.seed, i as u64);
            Ok((f(&p, &mut rng), rejected))
        })
        .collect();
    let mut tally = Tally::default();
    let mut rejected = 0;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((t, rej)) => {
                tally.merge(t);
                rejected += rej;
            }
            Err(Error::SamplingExhausted { rejected: rej, .. }) => {
                return Err(Error::SamplingExhausted {
                    accepted: i,
                    rejected: rejected + rej,
                })
            }
            Err(e) => return Err(e),
        }
    }
    if cfg.samples > 0 && rejected > 99 * cfg.samples {
        return Err(Error::SamplingExhausted {
            accepted: cfg.samples,
            rejected,
        });
    }
    Ok(tally)
}

/// Declarative description of one report row built from a tally.
pub struct Row<'a> {
    pub id: &'a str,
    pub anchor: &'a str,
    pub gated: bool,
}

pub fn emit(report: &mut VerificationReport, tally: &Tally, rows: &[Row<'_>], tol: f64) {
    for row in rows {
        let values = tally.values(row.id);
        report.push(if row.gated {
            CheckRecord::from_residuals(row.id, row.anchor, values, tol)
        } else {
            CheckRecord::info(row.id, row.anchor, values)
        });
    }
    const MAX_ERRORS: usize = 20;
    let total = tally.errors.len();
    report.errors.extend(tally.errors.iter().take(MAX_ERRORS).cloned());
    if total > MAX_ERRORS {
        report
            .errors
            .push(format!("... {} further evaluation errors", total - MAX_ERRORS));
    }
}
