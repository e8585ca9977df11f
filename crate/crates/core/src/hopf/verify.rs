//! Bundle invariants, curvature conditions, Nijenhuis checks and the
//! automorphism / non-Kähler checks for [`JStructure`].

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{HopfBundleInstance, JStructure};
use crate::algebra::Quaternion;
use crate::error::{Error, Result};
use crate::geometry::linalg;
use crate::geometry::{
    extend, exterior_d, exterior_d_two_form, killing_residual, lie_bracket, lie_derivative_endo, nijenhuis_tensor,
    EndomorphismField, Extension, FieldRef,
};
use crate::probe::{emit, run_points, ProbeConfig, Row, Tally};
use crate::report::{CheckRecord, CheckStatus, Environment, Fixed, VerificationReport};

pub mod ids {
    pub const VERTICAL_TANGENT: &str = "bundle.vertical_tangent";
    pub const VERTICAL_ORTHONORMAL: &str = "bundle.vertical_orthonormal";
    pub const VERTICAL_KILLING: &str = "bundle.vertical_killing";
    pub const BRACKET_CONVENTION: &str = "bundle.bracket_convention";
    pub const REEB_TANGENT: &str = "bundle.reeb_tangent";
    pub const REEB_UNIT: &str = "bundle.reeb_unit";
    pub const REEB_ORTHOGONAL: &str = "bundle.reeb_orthogonal";
    pub const HORIZONTAL_RANK: &str = "bundle.horizontal_rank";
    pub const ACTION_PRESERVES: &str = "bundle.action_preserves_level_set";
    pub const HORIZONTAL_EQUIVARIANCE: &str = "bundle.horizontal_equivariance";
    pub const REEB_EQUIVARIANCE: &str = "bundle.reeb_equivariance";
    pub const PHI_PRESERVES: &str = "bundle.phi_preserves_horizontal";
    pub const PHI_SQUARE: &str = "bundle.phi_square";
    pub const PHI_EQUIVARIANCE: &str = "bundle.phi_equivariance";

    pub const CURV_PHI_INVARIANCE: &str = "curvature.phi_invariance";
    pub const CURV_REEB_ANNIHILATION: &str = "curvature.reeb_annihilation";
    pub const CURV_VERTICAL_REEB: &str = "curvature.vertical_reeb";
    pub const CURV_TENSORIALITY: &str = "curvature.tensoriality";

    pub const J_TANGENT: &str = "j.tangent";
    pub const J_SQUARE: &str = "j.square";
    pub const J_HERMITIAN: &str = "j.hermitian";
    pub const J_HERMITIAN_FIBER: &str = "j.hermitian_fiber";
    pub const J_HERMITIAN_COMPLEMENT: &str = "j.hermitian_complement";
    pub const N_TOTAL: &str = "nijenhuis.total";
    pub const N_TENSORIALITY: &str = "nijenhuis.tensoriality";
    pub const N_HORIZONTAL_PAIR: &str = "nijenhuis.horizontal_pair";
    pub const N_HORIZONTAL_REEB: &str = "nijenhuis.horizontal_reeb";
    pub const N_HORIZONTAL_VERTICAL12: &str = "nijenhuis.horizontal_vertical12";
    pub const N_HORIZONTAL_XI3: &str = "nijenhuis.horizontal_xi3";
    pub const N_VERTICAL_REEB: &str = "nijenhuis.vertical_reeb";
    pub const N_VERTICAL_PAIR: &str = "nijenhuis.vertical_pair";
    pub const COMMUTING_ACTIONS: &str = "fiber.vertical_reeb_brackets";

    pub const AUTO_REEB: &str = "automorphism.reeb";
    pub const AUTO_XI3: &str = "automorphism.xi3";
    pub const D_OMEGA: &str = "nonkaehler.d_omega";

    /// The Nijenhuis case records, in the order of the case analysis.
    pub const NIJENHUIS_CASES: [&str; 6] = [
        N_HORIZONTAL_PAIR,
        N_HORIZONTAL_REEB,
        N_HORIZONTAL_VERTICAL12,
        N_HORIZONTAL_XI3,
        N_VERTICAL_REEB,
        N_VERTICAL_PAIR,
    ];
}

pub mod anchors {
    pub const VERTICAL_TANGENT: &str = "xi_i tangent to P";
    pub const VERTICAL_ORTHONORMAL: &str = "g(xi_i, xi_j) = delta_ij";
    pub const VERTICAL_KILLING: &str = "g(nabla_X xi_i, Y) + g(nabla_Y xi_i, X) = 0";
    pub const BRACKET_CONVENTION: &str = "[xi_i, xi_j] = 2 eps_ijk xi_k";
    pub const REEB_TANGENT: &str = "xi* tangent to P";
    pub const REEB_UNIT: &str = "|xi*| = 1";
    pub const REEB_ORTHOGONAL: &str = "g(xi*, xi_i) = 0";
    pub const HORIZONTAL_RANK: &str = "rank of the H' projector = dim P - 4";
    pub const ACTION_PRESERVES: &str = "F(h q) = 0 for unit q";
    pub const HORIZONTAL_EQUIVARIANCE: &str = "P_H(h q) R_q = R_q P_H(h)";
    pub const REEB_EQUIVARIANCE: &str = "xi*(h q) = R_q xi*(h)";
    pub const PHI_PRESERVES: &str = "phi-hat maps H' into H'";
    pub const PHI_SQUARE: &str = "phi-hat^2 X = -X on H'";
    pub const PHI_EQUIVARIANCE: &str = "phi-hat(h q) R_q X = R_q phi-hat(h) X on H'";

    pub const CURV_PHI_INVARIANCE: &str = "d eta-hat_i(phi-hat X, phi-hat Y) = d eta-hat_i(X, Y) for X, Y in H'";
    pub const CURV_REEB_ANNIHILATION: &str = "d eta-hat_i(X, xi*) = 0 for X in H'";
    pub const CURV_VERTICAL_REEB: &str = "d eta-hat_k(xi_i, xi*) = 0";
    pub const CURV_TENSORIALITY: &str = "d eta-hat_i(X, Y) unchanged under a change of extension";

    pub const J_TANGENT: &str = "J X tangent to P";
    pub const J_SQUARE: &str = "J^2 X = -X";
    pub const J_HERMITIAN: &str = "g(J X, J Y) = g(X, Y)";
    pub const J_HERMITIAN_FIBER: &str = "g(J X, J Y) = g(X, Y) for X, Y in span(xi*, xi_3)";
    pub const J_HERMITIAN_COMPLEMENT: &str = "g(J X, J Y) = g(X, Y) for X, Y in span(xi_1, xi_2) + H'";
    pub const N_TOTAL: &str = "[X,Y] + J[JX,Y] + J[X,JY] - [JX,JY] = 0";
    pub const N_TENSORIALITY: &str = "N(X, Y) unchanged under a change of extension";
    pub const N_HORIZONTAL_PAIR: &str = "N(X, Y) = 0 for X, Y in H'";
    pub const N_HORIZONTAL_REEB: &str = "N(X, xi*) = 0 for X in H'";
    pub const N_HORIZONTAL_VERTICAL12: &str = "N(X, xi_1) = N(X, xi_2) = 0 for X in H'";
    pub const N_HORIZONTAL_XI3: &str = "N(X, xi_3) = 0 for X in H'";
    pub const N_VERTICAL_REEB: &str = "N(xi_i, xi*) = 0";
    pub const N_VERTICAL_PAIR: &str = "N(xi_i, xi_j) = 0";
    pub const COMMUTING_ACTIONS: &str = "[xi_i, xi*] = 0";

    pub const AUTO_REEB: &str = "(L_{xi*} J) X = [xi*, J X] - J [xi*, X] = 0";
    pub const AUTO_XI3: &str = "(L_{xi_3} J) X = [xi_3, J X] - J [xi_3, X] = 0";
    pub const D_OMEGA: &str = "d omega(X, Y, Z) != 0 for omega(X, Y) = g(J X, Y)";
}

const EPS: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

fn env(cfg: &ProbeConfig) -> Environment {
    Environment::new(cfg.seed, cfg.samples, cfg.pairs, cfg.tol)
}

fn random_unit_quaternion(rng: &mut ChaCha8Rng) -> Quaternion<f64> {
    let g = crate::geometry::manifold::gaussian_vec(rng, 4);
    Quaternion::from_slice(&linalg::normalized(&g))
}

/// A random unit vector of `H′` at `p`, or `None` when `H′ = 0`.
fn random_horizontal(b: &HopfBundleInstance, p: &[f64], rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
    if b.horizontal_dim() == 0 {
        return None;
    }
    let g = crate::geometry::manifold::gaussian_vec(rng, b.total.ambient_dim());
    let h = b.frame(p).project_horizontal(&g);
    let n = linalg::norm_f64(&h);
    (n > 1e-8).then(|| h.iter().map(|x| x / n).collect())
}

fn norm(v: Result<Vec<f64>>) -> Result<f64> {
    v.map(|v| linalg::norm_f64(&v))
}

fn fail_matrix_diff(a: &crate::geometry::Mat<f64>, b: &crate::geometry::Mat<f64>) -> f64 {
    a.max_abs_diff(b)
}

/// Container invariants of a bundle: vertical frame, `ξ*`, the splitting,
/// equivariance under the right action and the algebra of `φ̂`.
pub fn check_bundle(b: &HopfBundleInstance, cfg: &ProbeConfig) -> VerificationReport {
    let mut report = VerificationReport::new("bundle", &b.name, env(cfg));
    let m = &b.total;
    let n = m.ambient_dim();
    let tally = run_points(m, cfg, |p, rng| {
        let mut t = Tally::default();
        let frame = b.frame(p);
        for i in 0..3 {
            t.add(ids::VERTICAL_TANGENT, m.normal_residual(p, &frame.xi[i]));
            for j in 0..3 {
                let d = if i == j { 1.0 } else { 0.0 };
                t.add(ids::VERTICAL_ORTHONORMAL, linalg::dot(&frame.xi[i], &frame.xi[j]) - d);
            }
            t.add(ids::REEB_ORTHOGONAL, linalg::dot(&frame.xi[i], &frame.xistar));
        }
        for (i, j, k) in EPS {
            let r = norm(lie_bracket(m, &*b.verticals[i], &*b.verticals[j], p).map(|mut br| {
                linalg::axpy(-2.0, &frame.xi[k], &mut br);
                br
            }));
            t.add_result(ids::BRACKET_CONVENTION, r);
        }
        t.add(ids::REEB_TANGENT, m.normal_residual(p, &frame.xistar));
        t.add(ids::REEB_UNIT, linalg::norm_f64(&frame.xistar) - 1.0);
        t.add_result(
            ids::HORIZONTAL_RANK,
            b.horizontal_projector(p).map(|h| h.trace() - b.horizontal_dim() as f64),
        );

        for _ in 0..cfg.pairs {
            let v = m.random_tangent(p, rng);
            let w = m.random_tangent(p, rng);
            for f in &b.verticals {
                t.add_result(ids::VERTICAL_KILLING, killing_residual(m, &**f, p, &v, &w));
            }
        }

        // Right action h ↦ hq.
        let q = random_unit_quaternion(rng);
        let rq = b.action.matrix(n, q);
        let pq = rq.matvec(p);
        t.add(ids::ACTION_PRESERVES, m.residual_norm(&pq));
        let equi = b.connection_projector(p).and_then(|h0| {
            let h1 = b.connection_projector(&pq)?;
            Ok(fail_matrix_diff(&h1.matmul(&rq), &rq.matmul(&h0)))
        });
        t.add_result(ids::HORIZONTAL_EQUIVARIANCE, equi);
        let xs_q = b.xistar.eval_f64(&pq);
        t.add(
            ids::REEB_EQUIVARIANCE,
            linalg::norm_f64(&linalg::sub(&xs_q, &rq.matvec(&frame.xistar))),
        );

        if let Some(h) = random_horizontal(b, p, rng) {
            let raw = b.phihat.apply_f64(p, &h);
            let ph = frame.project_horizontal(&raw);
            t.add(ids::PHI_PRESERVES, linalg::norm_f64(&linalg::sub(&raw, &ph)));
            let mut sq = b.phihat_at(p, &ph);
            linalg::axpy(1.0, &h, &mut sq);
            t.add(ids::PHI_SQUARE, linalg::norm_f64(&sq));
            let lhs = b.phihat_at(&pq, &rq.matvec(&h));
            let rhs = rq.matvec(&ph);
            t.add(ids::PHI_EQUIVARIANCE, linalg::norm_f64(&linalg::sub(&lhs, &rhs)));
        } else {
            t.touch(ids::PHI_PRESERVES);
            t.touch(ids::PHI_SQUARE);
            t.touch(ids::PHI_EQUIVARIANCE);
        }
        t
    });
    let rows = [
        Row {
            id: ids::VERTICAL_TANGENT,
            anchor: anchors::VERTICAL_TANGENT,
            gated: true,
        },
        Row {
            id: ids::VERTICAL_ORTHONORMAL,
            anchor: anchors::VERTICAL_ORTHONORMAL,
            gated: true,
        },
        Row {
            id: ids::VERTICAL_KILLING,
            anchor: anchors::VERTICAL_KILLING,
            gated: true,
        },
        Row {
            id: ids::BRACKET_CONVENTION,
            anchor: anchors::BRACKET_CONVENTION,
            gated: true,
        },
        Row {
            id: ids::REEB_TANGENT,
            anchor: anchors::REEB_TANGENT,
            gated: true,
        },
        Row {
            id: ids::REEB_UNIT,
            anchor: anchors::REEB_UNIT,
            gated: true,
        },
        Row {
            id: ids::REEB_ORTHOGONAL,
            anchor: anchors::REEB_ORTHOGONAL,
            gated: true,
        },
        Row {
            id: ids::HORIZONTAL_RANK,
            anchor: anchors::HORIZONTAL_RANK,
            gated: true,
        },
        Row {
            id: ids::ACTION_PRESERVES,
            anchor: anchors::ACTION_PRESERVES,
            gated: true,
        },
        Row {
            id: ids::HORIZONTAL_EQUIVARIANCE,
            anchor: anchors::HORIZONTAL_EQUIVARIANCE,
            gated: true,
        },
        Row {
            id: ids::REEB_EQUIVARIANCE,
            anchor: anchors::REEB_EQUIVARIANCE,
            gated: true,
        },
        Row {
            id: ids::PHI_PRESERVES,
            anchor: anchors::PHI_PRESERVES,
            gated: true,
        },
        Row {
            id: ids::PHI_SQUARE,
            anchor: anchors::PHI_SQUARE,
            gated: true,
        },
        Row {
            id: ids::PHI_EQUIVARIANCE,
            anchor: anchors::PHI_EQUIVARIANCE,
            gated: true,
        },
    ];
    finish(&mut report, tally, &rows, cfg.tol);
    mark_vacuous(&mut report, b);
    report
}

fn finish(report: &mut VerificationReport, tally: Result<Tally>, rows: &[Row<'_>], tol: f64) {
    match tally {
        Ok(t) => emit(report, &t, rows, tol),
        Err(e) => report.errors.push(e.to_string()),
    }
}

/// Adds the reason to records left empty because `H′ = 0`.
fn mark_vacuous(report: &mut VerificationReport, b: &HopfBundleInstance) {
    if b.horizontal_dim() != 0 {
        return;
    }
    for c in &mut report.checks {
        if c.status == CheckStatus::VacuousPass && c.detail.is_none() {
            c.detail = Some("H' = 0 at this dimension".into());
        }
    }
}

fn require_horizontal(b: &HopfBundleInstance, p: &[f64], v: &[f64]) -> Result<()> {
    b.total.check_tangent(p, v)?;
    let frame = b.frame(p);
    let vert = frame.xi.iter().map(|x| linalg::dot(x, v).abs()).fold(0.0, f64::max);
    if vert > b.total.tol.tangency * linalg::norm_f64(v).max(1.0) {
        return Err(Error::TangencyViolation { residual: vert });
    }
    Ok(())
}

/// Curvature component `dη̂ᵢ(X, Y)` for horizontal `X, Y` at `p`.
pub fn curvature(b: &HopfBundleInstance, i: usize, x: &[f64], y: &[f64], p: &[f64]) -> Result<f64> {
    require_horizontal(b, p, x)?;
    require_horizontal(b, p, y)?;
    let m = &b.total;
    exterior_d(
        m,
        &*b.verticals[i],
        &*extend(m, p, x, Extension::Projected),
        &*extend(m, p, y, Extension::Projected),
        p,
    )
}

/// The sufficient curvature conditions for integrability.
pub fn check_theorem_conditions(b: &HopfBundleInstance, cfg: &ProbeConfig) -> VerificationReport {
    let mut report = VerificationReport::new("curvature", &b.name, env(cfg));
    let m = &b.total;
    let tally = run_points(m, cfg, |p, rng| {
        let mut t = Tally::default();
        for k in 0..3 {
            for i in 0..3 {
                t.add_result(
                    ids::CURV_VERTICAL_REEB,
                    exterior_d(m, &*b.verticals[k], &*b.verticals[i], &*b.xistar, p),
                );
            }
        }
        t.touch(ids::CURV_PHI_INVARIANCE);
        t.touch(ids::CURV_REEB_ANNIHILATION);
        t.touch(ids::CURV_TENSORIALITY);
        for _ in 0..cfg.pairs {
            let (Some(x), Some(y)) = (random_horizontal(b, p, rng), random_horizontal(b, p, rng)) else {
                continue;
            };
            let px = b.phihat_at(p, &x);
            let py = b.phihat_at(p, &y);
            let xt = extend(m, p, &x, Extension::Tilted(rng.random()));
            let yt = extend(m, p, &y, Extension::Tilted(rng.random()));
            for i in 0..3 {
                let base = curvature(b, i, &x, &y, p);
                let rotated = curvature(b, i, &px, &py, p);
                t.add_result(ids::CURV_PHI_INVARIANCE, rotated.and_then(|r| Ok(r - base.clone()?)));
                let tilted = exterior_d(m, &*b.verticals[i], &*xt, &*yt, p);
                t.add_result(ids::CURV_TENSORIALITY, tilted.and_then(|r| Ok(r - base.clone()?)));
                let xe = extend(m, p, &x, Extension::Projected);
                t.add_result(
                    ids::CURV_REEB_ANNIHILATION,
                    exterior_d(m, &*b.verticals[i], &*xe, &*b.xistar, p),
                );
            }
        }
        t
    });
    let rows = [
        Row {
            id: ids::CURV_PHI_INVARIANCE,
            anchor: anchors::CURV_PHI_INVARIANCE,
            gated: true,
        },
        Row {
            id: ids::CURV_REEB_ANNIHILATION,
            anchor: anchors::CURV_REEB_ANNIHILATION,
            gated: true,
        },
        Row {
            id: ids::CURV_VERTICAL_REEB,
            anchor: anchors::CURV_VERTICAL_REEB,
            gated: true,
        },
        Row {
            id: ids::CURV_TENSORIALITY,
            anchor: anchors::CURV_TENSORIALITY,
            gated: true,
        },
    ];
    finish(&mut report, tally, &rows, cfg.tol);
    mark_vacuous(&mut report, b);
    report
}

/// `N(v, w)` at `p` for tangent vectors, extended by tangential projection.
pub fn nijenhuis(j: &JStructure, v: &[f64], w: &[f64], p: &[f64]) -> Result<Vec<f64>> {
    let m = &j.bundle.total;
    nijenhuis_tensor(
        m,
        &j.as_endo(),
        &extend(m, p, v, Extension::Projected),
        &extend(m, p, w, Extension::Projected),
        p,
    )
}

fn in_span(frame_vecs: &[&[f64]], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut out = vec![0.0; frame_vecs[0].len()];
    for v in frame_vecs {
        let c: f64 = crate::geometry::manifold::gaussian_vec(rng, 1)[0];
        linalg::axpy(c, v, &mut out);
    }
    out
}

/// `J² = −I`, tangency, Hermitian compatibility, the full Nijenhuis tensor,
/// its case-wise components and the curvature conditions.
pub fn verify_complex_structure(j: &JStructure, cfg: &ProbeConfig) -> VerificationReport {
    let b = &j.bundle;
    let m = &b.total;
    let jref = j.as_endo();
    let mut report = VerificationReport::new("complex-structure", &b.name, env(cfg));
    let tally = run_points(m, cfg, |p, rng| {
        let mut t = Tally::default();
        let frame = b.frame(p);
        let xi: Vec<&[f64]> = frame.xi.iter().map(|v| v.as_slice()).collect();
        for name in ids::NIJENHUIS_CASES {
            t.touch(name);
        }

        // Fiber cases use the global fields themselves.
        let vf: Vec<FieldRef> = b.verticals.to_vec();
        for f in &vf {
            t.add_result(ids::N_VERTICAL_REEB, norm(nijenhuis_tensor(m, &jref, f, &b.xistar, p)));
            t.add_result(ids::COMMUTING_ACTIONS, norm(lie_bracket(m, &**f, &*b.xistar, p)));
        }
        for (a, c) in [(0, 1), (0, 2), (1, 2)] {
            t.add_result(
                ids::N_VERTICAL_PAIR,
                norm(nijenhuis_tensor(m, &jref, &vf[a], &vf[c], p)),
            );
        }

        for _ in 0..cfg.pairs {
            let v = m.random_tangent(p, rng);
            let w = m.random_tangent(p, rng);
            let jv = j.apply_f64(p, &v);
            let jw = j.apply_f64(p, &w);
            t.add(ids::J_TANGENT, m.normal_residual(p, &jv));
            let mut sq = j.apply_f64(p, &jv);
            linalg::axpy(1.0, &v, &mut sq);
            t.add(ids::J_SQUARE, linalg::norm_f64(&sq));
            t.add(ids::J_HERMITIAN, linalg::dot(&jv, &jw) - linalg::dot(&v, &w));

            let f1 = in_span(&[&frame.xistar, xi[2]], rng);
            let f2 = in_span(&[&frame.xistar, xi[2]], rng);
            let (jf1, jf2) = (j.apply_f64(p, &f1), j.apply_f64(p, &f2));
            t.add(ids::J_HERMITIAN_FIBER, linalg::dot(&jf1, &jf2) - linalg::dot(&f1, &f2));
            let mut c1 = in_span(&[xi[0], xi[1]], rng);
            let mut c2 = in_span(&[xi[0], xi[1]], rng);
            if let Some(h) = random_horizontal(b, p, rng) {
                linalg::axpy(1.0, &h, &mut c1);
            }
            if let Some(h) = random_horizontal(b, p, rng) {
                linalg::axpy(1.0, &h, &mut c2);
            }
            let (jc1, jc2) = (j.apply_f64(p, &c1), j.apply_f64(p, &c2));
            t.add(
                ids::J_HERMITIAN_COMPLEMENT,
                linalg::dot(&jc1, &jc2) - linalg::dot(&c1, &c2),
            );

            let a = extend(m, p, &v, Extension::Projected);
            let bb = extend(m, p, &w, Extension::Projected);
            let n0 = nijenhuis_tensor(m, &jref, &a, &bb, p);
            t.add_result(ids::N_TOTAL, norm(n0.clone()));
            let at = extend(m, p, &v, Extension::Tilted(rng.random()));
            let bt = extend(m, p, &w, Extension::Tilted(rng.random()));
            let n1 = nijenhuis_tensor(m, &jref, &at, &bt, p);
            t.add_result(
                ids::N_TENSORIALITY,
                n1.and_then(|n1| Ok(linalg::norm_f64(&linalg::sub(&n1, &n0.clone()?)))),
            );

            if let (Some(x), Some(y)) = (random_horizontal(b, p, rng), random_horizontal(b, p, rng)) {
                let xe = extend(m, p, &x, Extension::Projected);
                let ye = extend(m, p, &y, Extension::Projected);
                t.add_result(ids::N_HORIZONTAL_PAIR, norm(nijenhuis_tensor(m, &jref, &xe, &ye, p)));
                t.add_result(
                    ids::N_HORIZONTAL_REEB,
                    norm(nijenhuis_tensor(m, &jref, &xe, &b.xistar, p)),
                );
                for f in &vf[..2] {
                    t.add_result(
                        ids::N_HORIZONTAL_VERTICAL12,
                        norm(nijenhuis_tensor(m, &jref, &xe, f, p)),
                    );
                }
                t.add_result(ids::N_HORIZONTAL_XI3, norm(nijenhuis_tensor(m, &jref, &xe, &vf[2], p)));
            }
        }
        t
    });
    let standard = j.fiber.is_standard();
    let rows = [
        Row {
            id: ids::J_TANGENT,
            anchor: anchors::J_TANGENT,
            gated: true,
        },
        Row {
            id: ids::J_SQUARE,
            anchor: anchors::J_SQUARE,
            gated: true,
        },
        Row {
            id: ids::J_HERMITIAN,
            anchor: anchors::J_HERMITIAN,
            gated: standard,
        },
        Row {
            id: ids::J_HERMITIAN_FIBER,
            anchor: anchors::J_HERMITIAN_FIBER,
            gated: standard,
        },
        Row {
            id: ids::J_HERMITIAN_COMPLEMENT,
            anchor: anchors::J_HERMITIAN_COMPLEMENT,
            gated: true,
        },
        Row {
            id: ids::N_TOTAL,
            anchor: anchors::N_TOTAL,
            gated: true,
        },
        Row {
            id: ids::N_TENSORIALITY,
            anchor: anchors::N_TENSORIALITY,
            gated: true,
        },
        Row {
            id: ids::N_HORIZONTAL_PAIR,
            anchor: anchors::N_HORIZONTAL_PAIR,
            gated: true,
        },
        Row {
            id: ids::N_HORIZONTAL_REEB,
            anchor: anchors::N_HORIZONTAL_REEB,
            gated: true,
        },
        Row {
            id: ids::N_HORIZONTAL_VERTICAL12,
            anchor: anchors::N_HORIZONTAL_VERTICAL12,
            gated: true,
        },
        Row {
            id: ids::N_HORIZONTAL_XI3,
            anchor: anchors::N_HORIZONTAL_XI3,
            gated: true,
        },
        Row {
            id: ids::N_VERTICAL_REEB,
            anchor: anchors::N_VERTICAL_REEB,
            gated: true,
        },
        Row {
            id: ids::N_VERTICAL_PAIR,
            anchor: anchors::N_VERTICAL_PAIR,
            gated: true,
        },
        Row {
            id: ids::COMMUTING_ACTIONS,
            anchor: anchors::COMMUTING_ACTIONS,
            gated: false,
        },
    ];
    finish(&mut report, tally, &rows, cfg.tol);
    if !standard {
        for id in [ids::J_HERMITIAN, ids::J_HERMITIAN_FIBER] {
            if let Some(c) = report.checks.iter_mut().find(|c| c.id == id) {
                c.detail = Some("metric compatibility is only claimed for the standard fiber matrix".into());
            }
        }
    }
    mark_vacuous(&mut report, b);
    report
}

/// Fraction of triples with `|dω| > DOMEGA_THRESHOLD` required for the
/// non-Kähler witness.
pub const DOMEGA_THRESHOLD: f64 = 1e-3;
pub const DOMEGA_FRACTION: f64 = 0.9;

/// `L_{ξ*}J`, `L_{ξ₃}J` and the non-closedness of the fundamental form.
pub fn automorphism_and_nonkaehler_checks(j: &JStructure, cfg: &ProbeConfig) -> VerificationReport {
    let b = &j.bundle;
    let m = &b.total;
    let jref = j.as_endo();
    let mut report = VerificationReport::new("automorphisms", &b.name, env(cfg));
    let tally = run_points(m, cfg, |p, rng| {
        let mut t = Tally::default();
        for _ in 0..cfg.pairs {
            let v = m.random_tangent(p, rng);
            let x = extend(m, p, &v, Extension::Projected);
            t.add_result(ids::AUTO_REEB, norm(lie_derivative_endo(m, &b.xistar, &jref, &x, p)));
            t.add_result(
                ids::AUTO_XI3,
                norm(lie_derivative_endo(m, &b.verticals[2], &jref, &x, p)),
            );
        }
        let fields: Vec<FieldRef> = (0..3)
            .map(|_| extend(m, p, &m.random_tangent(p, rng), Extension::Projected))
            .collect();
        t.add_result(
            ids::D_OMEGA,
            exterior_d_two_form(m, &*jref, &*fields[0], &*fields[1], &*fields[2], p),
        );
        t
    });
    let rows = [
        Row {
            id: ids::AUTO_REEB,
            anchor: anchors::AUTO_REEB,
            gated: true,
        },
        Row {
            id: ids::AUTO_XI3,
            anchor: anchors::AUTO_XI3,
            gated: true,
        },
    ];
    match tally {
        Ok(t) => {
            emit(&mut report, &t, &rows, cfg.tol);
            report.push(d_omega_record(t.values(ids::D_OMEGA)));
        }
        Err(e) => report.errors.push(e.to_string()),
    }
    report
}

fn d_omega_record(values: &[f64]) -> CheckRecord {
    let mut rec = CheckRecord::info(ids::D_OMEGA, anchors::D_OMEGA, values);
    let above = values.iter().filter(|v| v.abs() > DOMEGA_THRESHOLD).count();
    let frac = if values.is_empty() {
        0.0
    } else {
        above as f64 / values.len() as f64
    };
    rec.tol = Fixed(DOMEGA_THRESHOLD);
    rec.status = if !values.is_empty() && frac >= DOMEGA_FRACTION {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    rec.detail = Some(format!(
        "{above} of {} triples have |d omega| > {DOMEGA_THRESHOLD:e} (fraction {frac:.4}, required {DOMEGA_FRACTION})",
        values.len()
    ));
    rec
}

/// Every check for one `J`: bundle invariants, curvature conditions, complex
/// structure and automorphisms, in that order.
pub fn verify_j_structure(j: &JStructure, cfg: &ProbeConfig) -> VerificationReport {
    let mut report = VerificationReport::new("hopf", &j.bundle.name, env(cfg));
    report.extend(check_bundle(&j.bundle, cfg));
    report.extend(check_theorem_conditions(&j.bundle, cfg));
    report.extend(verify_complex_structure(j, cfg));
    report.extend(automorphism_and_nonkaehler_checks(j, cfg));
    report
}
