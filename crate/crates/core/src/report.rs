//! Residual reports and their deterministic JSON form.
//!
//! Floats are written with 17 significant digits in scientific notation and
//! non-finite values become `null`, so two runs with the same configuration
//! produce byte-identical documents.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

/// A float serialized as `{:.16e}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fixed(pub f64);

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format_float(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

pub fn format_float(v: f64) -> String {
    // Normalize -0 so sign noise never changes bytes.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

fn serialize_floats<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Fixed(*x))?;
    }
    seq.end()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Nothing to test (for example an empty distribution).
    VacuousPass,
    /// Recorded for inspection, never gating.
    Info,
    /// The check could not be evaluated.
    Error,
}

impl CheckStatus {
    pub fn is_failure(self) -> bool {
        matches!(self, CheckStatus::Fail | CheckStatus::Error)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The identity being checked, written out.
    pub anchor: String,
    pub max: Fixed,
    pub mean: Fixed,
    pub count: usize,
    pub tol: Fixed,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn max_mean(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mut max = 0.0f64;
    let mut sum = 0.0;
    for &v in values {
        let a = v.abs();
        if !a.is_finite() {
            max = f64::NAN;
        } else if !max.is_nan() {
            max = max.max(a);
        }
        sum += a;
    }
    (max, sum / values.len() as f64)
}

impl CheckRecord {
    /// Gated check: pass iff every `|value| < tol`.
    pub fn from_residuals(id: &str, anchor: &str, values: &[f64], tol: f64) -> Self {
        let (max, mean) = max_mean(values);
        let status = if values.is_empty() {
            CheckStatus::VacuousPass
        } else if max < tol {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            max: Fixed(max),
            mean: Fixed(mean),
            count: values.len(),
            tol: Fixed(tol),
            status,
            detail: None,
        }
    }

    pub fn vacuous(id: &str, anchor: &str, tol: f64, why: &str) -> Self {
        let mut r = Self::from_residuals(id, anchor, &[], tol);
        r.detail = Some(why.into());
        r
    }

    /// Non-gating record: statistics only.
    pub fn info(id: &str, anchor: &str, values: &[f64]) -> Self {
        let (max, mean) = max_mean(values);
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            max: Fixed(max),
            mean: Fixed(mean),
            count: values.len(),
            tol: Fixed(f64::NAN),
            status: CheckStatus::Info,
            detail: None,
        }
    }

    pub fn error(id: &str, anchor: &str, message: String) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            max: Fixed(f64::NAN),
            mean: Fixed(f64::NAN),
            count: 0,
            tol: Fixed(f64::NAN),
            status: CheckStatus::Error,
            detail: Some(message),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn max(&self) -> f64 {
        self.max.0
    }

    pub fn mean(&self) -> f64 {
        self.mean.0
    }

    pub fn passed(&self) -> bool {
        !self.status.is_failure()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Environment {
    pub seed: u64,
    pub samples: usize,
    pub pairs: usize,
    pub tol: Fixed,
    /// SHA-256 of the canonical manifest, hex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest_sha256: Option<String>,
}

impl Default for Fixed {
    fn default() -> Self {
        Fixed(0.0)
    }
}

impl Environment {
    pub fn new(seed: u64, samples: usize, pairs: usize, tol: f64) -> Self {
        Environment {
            seed,
            samples,
            pairs,
            tol: Fixed(tol),
            manifest_sha256: None,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub subject: String,
    pub environment: Environment,
    pub checks: Vec<CheckRecord>,
    /// Sampling or regularity failures that prevented some checks from running.
    pub errors: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: &str, subject: &str, environment: Environment) -> Self {
        VerificationReport {
            suite: suite.into(),
            subject: subject.into(),
            environment,
            checks: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.errors.extend(other.errors);
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// All gated checks pass and nothing errored.
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status.is_failure())
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.failures().next()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// A list of floats serialized with [`Fixed`] formatting.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FloatList(#[serde(serialize_with = "serialize_floats")] pub Vec<f64>);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed_width() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(-0.0), "0.0000000000000000e0");
        assert_eq!(format_float(1.5e-12), "1.5000000000000001e-12");
    }

    #[test]
    fn statuses() {
        let r = CheckRecord::from_residuals("a", "x = 0", &[1e-12, -3e-11], 1e-10);
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.max(), 3e-11);
        let r = CheckRecord::from_residuals("a", "x = 0", &[1e-9], 1e-10);
        assert_eq!(r.status, CheckStatus::Fail);
        let r = CheckRecord::from_residuals("a", "x = 0", &[f64::NAN], 1e-10);
        assert_eq!(r.status, CheckStatus::Fail);
        let r = CheckRecord::from_residuals("a", "x = 0", &[], 1e-10);
        assert_eq!(r.status, CheckStatus::VacuousPass);
    }

    #[test]
    fn json_is_stable_and_nulls_nan() {
        let mut rep = VerificationReport::new("s", "t", Environment::new(1, 2, 3, 1e-9));
        rep.push(CheckRecord::info("i", "a", &[f64::INFINITY]));
        let j = rep.to_json();
        assert_eq!(j, rep.clone().to_json());
        assert!(j.contains("\"max\": null"));
        assert!(j.contains("\"tol\": 1.0000000000000001e-9"));
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["checks"][0]["status"], "info");
    }

    #[test]
    fn sha_hex() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
