//! Enumeration of the sign-convention lattice for one bundle instance.

use serde::Serialize;

use super::checks::{ids as frame_ids, verify_instance};
use super::{ConventionPoint, InstanceDescriptor, InstanceKind};
use crate::error::Result;
use crate::hopf::{ids, FiberMatrix};
use crate::probe::ProbeConfig;
use crate::report::{CheckRecord, Environment, Fixed, VerificationReport};

/// Checks that hold as algebraic identities for a correct convention.
pub const GUARANTEED_CHECKS: [&str; 10] = [
    ids::VERTICAL_TANGENT,
    ids::VERTICAL_ORTHONORMAL,
    ids::VERTICAL_KILLING,
    ids::BRACKET_CONVENTION,
    ids::HORIZONTAL_EQUIVARIANCE,
    ids::REEB_TANGENT,
    ids::REEB_UNIT,
    ids::REEB_ORTHOGONAL,
    ids::CURV_VERTICAL_REEB,
    frame_ids::EMBEDDING,
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub rank: usize,
    pub index: usize,
    pub label: String,
    pub convention: ConventionPoint,
    /// Every guaranteed sub-check passes.
    pub guaranteed_pass: bool,
    /// Every gated check passes, integrability included.
    pub full_pass: bool,
    pub failed_checks: usize,
    /// Largest residual among failing checks (0 when nothing fails).
    pub worst_failing_residual: Fixed,
    pub first_failure: Option<String>,
    pub checks: Vec<CheckRecord>,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub instance: String,
    pub n: usize,
    pub environment: Environment,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn any_guaranteed_pass(&self) -> bool {
        self.rows.iter().any(|r| r.guaranteed_pass)
    }

    pub fn row(&self, index: usize) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.index == index)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("audit serializes");
        s.push('\n');
        s
    }
}

fn row_for(conv: ConventionPoint, report: VerificationReport) -> AuditRow {
    let guaranteed_pass = report.errors.is_empty()
        && GUARANTEED_CHECKS.iter().all(|id| {
            report
                .get(id)
                .map(|c| c.passed())
                // checks the instance does not carry do not count against it
                .unwrap_or(true)
        });
    let failing: Vec<&CheckRecord> = report.failures().collect();
    let worst = failing.iter().fold(0.0f64, |w, c| {
        let m = c.max();
        if m.is_nan() {
            f64::INFINITY
        } else {
            w.max(m)
        }
    });
    AuditRow {
        rank: 0,
        index: conv.index(),
        label: conv.label(),
        convention: conv,
        guaranteed_pass,
        full_pass: report.passed(),
        failed_checks: failing.len(),
        worst_failing_residual: Fixed(worst),
        first_failure: failing.first().map(|c| c.id.clone()),
        checks: report.checks,
        errors: report.errors,
    }
}

/// Runs the full instance suite for all 32 conventions on the same samples
/// and ranks them by (failed check count, worst failing residual, index).
pub fn convention_audit(kind: InstanceKind, n: usize, cfg: &ProbeConfig) -> Result<AuditReport> {
    let mut rows = Vec::with_capacity(ConventionPoint::COUNT);
    let mut name = kind.name().to_string();
    for conv in ConventionPoint::all() {
        let d = InstanceDescriptor::construct(kind, n, conv)?;
        if conv.index() == 0 {
            name = format!("{} n={n}", kind.name());
            // Regularity does not depend on the convention; probe once.
            InstanceDescriptor::build(kind, n, conv)?;
        }
        let report = verify_instance(&d, FiberMatrix::standard(), cfg);
        rows.push(row_for(conv, report));
    }
    rows.sort_by(|a, b| {
        a.failed_checks
            .cmp(&b.failed_checks)
            .then_with(|| a.worst_failing_residual.0.total_cmp(&b.worst_failing_residual.0))
            .then_with(|| a.index.cmp(&b.index))
    });
    for (r, row) in rows.iter_mut().enumerate() {
        row.rank = r + 1;
    }
    Ok(AuditReport {
        instance: name,
        n,
        environment: Environment::new(cfg.seed, cfg.samples, cfg.pairs, cfg.tol),
        rows,
    })
}
