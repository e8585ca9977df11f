//! Sasakian and 3-Sasakian structures and their axiom verifier.
//!
//! The exterior derivative is Cartan's formula without a ½ factor
//! ([`exterior_d`]). With that convention the round unit sphere satisfies
//! `dη(X,Y) = 2g(X,φY)`, so the contact condition is checked in the form
//! `½dη(X,Y) = g(X,φY)` and normality as `[φ,φ](X,Y) + dη(X,Y)ξ = 0`. The
//! unnormalized contact identity is still reported, as an informational record.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::Quaternion;
use crate::error::{Error, Result};
use crate::geometry::linalg::{self, Mat};
use crate::geometry::{
    complex_structure_matrix, extend, exterior_d, killing_residual, lie_bracket, phi_torsion, quaternion_left_matrix,
    AffineField, EndoRef, Extension, FieldRef, LevelSetManifold, LinearEndo, OneForm, ProjectedEndo, ScaledField,
};
use crate::probe::{emit, run_points, ProbeConfig, Row, Tally};
use crate::report::{Environment, VerificationReport};

pub mod ids {
    pub const REEB_TANGENT: &str = "reeb.tangent";
    pub const REEB_UNIT: &str = "reeb.unit";
    pub const REEB_ETA: &str = "reeb.eta_normalization";
    pub const REEB_KILLING: &str = "reeb.killing";
    pub const PHI_SQUARE: &str = "phi.square";
    pub const PHI_TANGENT: &str = "phi.tangent";
    pub const CONTACT: &str = "contact.metric";
    pub const CONTACT_UNNORMALIZED: &str = "contact.unnormalized";
    pub const NORMALITY: &str = "normality.tensor";
    pub const NORMALITY_LITERAL_REEB: &str = "normality.literal_reeb_part";
    pub const NORMALITY_LITERAL_FULL: &str = "normality.literal_full";
    pub const TENSORIALITY: &str = "tensoriality.extension_change";
    pub const ORTHONORMAL: &str = "triple.orthonormal";
    pub const BRACKETS: &str = "triple.brackets";
    pub const BRACKET_13: &str = "triple.bracket_xi1_xi3";
    pub const TRIPLE_KILLING: &str = "triple.killing";
    pub const TRIPLE_TANGENT: &str = "triple.tangent";
}

pub mod anchors {
    pub const REEB_TANGENT: &str = "xi tangent to M";
    pub const REEB_UNIT: &str = "|xi| = 1";
    pub const REEB_ETA: &str = "eta(xi) = 1";
    pub const REEB_KILLING: &str = "g(nabla_X xi, Y) + g(nabla_Y xi, X) = 0";
    pub const PHI_SQUARE: &str = "phi^2 X = -X + eta(X) xi";
    pub const PHI_TANGENT: &str = "phi X tangent to M";
    pub const CONTACT: &str = "(1/2) d eta(X,Y) = g(X, phi Y), d eta by Cartan's formula";
    pub const CONTACT_UNNORMALIZED: &str = "d eta(X,Y) = g(X, phi Y), d eta by Cartan's formula";
    pub const NORMALITY: &str = "[phi,phi](X,Y) + d eta(X,Y) xi = 0";
    pub const NORMALITY_LITERAL_REEB: &str = "eta([phi X, phi Y]) + 2 (1/2) d eta(X,Y) = 0 for X, Y orthogonal to xi";
    pub const NORMALITY_LITERAL_FULL: &str = "[phi X, phi Y] + 2 (1/2) d eta(X,Y) xi = 0 for X, Y orthogonal to xi";
    pub const TENSORIALITY: &str = "d eta and [phi,phi] unchanged under a change of extension";
    pub const ORTHONORMAL: &str = "g(xi_i, xi_j) = delta_ij";
    pub const BRACKETS: &str = "[xi_i, xi_j] = 2 eps_ijk xi_k";
    pub const BRACKET_13: &str = "[xi_1, xi_3] = -2 xi_2";
    pub const TRIPLE_KILLING: &str = "each xi_i is Killing";
    pub const TRIPLE_TANGENT: &str = "each xi_i tangent to M";
}

/// `(φ, ξ, η, g)` on a level set; `η` is the metric dual of `ξ`.
#[derive(Clone)]
pub struct SasakianStructure {
    pub name: String,
    pub manifold: LevelSetManifold,
    pub xi: FieldRef,
    pub phi: EndoRef,
    pub eta: OneForm,
}

impl SasakianStructure {
    pub fn new(name: impl Into<String>, manifold: LevelSetManifold, xi: FieldRef, phi: EndoRef) -> Self {
        SasakianStructure {
            name: name.into(),
            manifold,
            eta: OneForm::dual_of(xi.clone()),
            xi,
            phi,
        }
    }

    /// Same structure with a different Reeb field (and its dual form).
    pub fn with_xi(&self, xi: FieldRef) -> Self {
        Self::new(self.name.clone(), self.manifold.clone(), xi, self.phi.clone())
    }

    pub fn with_phi(&self, phi: EndoRef) -> Self {
        Self::new(self.name.clone(), self.manifold.clone(), self.xi.clone(), phi)
    }

    /// Runs the axiom suite; see [`verify_sasakian`].
    pub fn verify(&self, cfg: &ProbeConfig) -> VerificationReport {
        verify_sasakian(self, cfg)
    }
}

fn sphere_with_reeb(m: usize, reeb_sign: f64) -> Result<SasakianStructure> {
    if m.is_multiple_of(2) {
        return Err(Error::BadDimension(format!(
            "Sasakian sphere needs odd dimension, got {m}"
        )));
    }
    let ambient = m + 1;
    let manifold = LevelSetManifold::unit_sphere(ambient);
    let i = complex_structure_matrix(ambient);
    let xi: FieldRef = Arc::new(AffineField::linear(i.scale(-reeb_sign)));
    let phi: EndoRef = if m == 1 {
        Arc::new(LinearEndo { a: Mat::zeros(2, 2) })
    } else {
        Arc::new(ProjectedEndo {
            manifold: manifold.clone(),
            inner: Arc::new(LinearEndo { a: i }),
        })
    };
    Ok(SasakianStructure::new(format!("sphere S^{m}"), manifold, xi, phi))
}

/// Round `S^m ⊂ ℂ^{(m+1)/2}` with `ξ(x) = −ix` and `φ = P∘(i·)`.
pub fn standard_sphere_sasaki(m: usize) -> Result<SasakianStructure> {
    sphere_with_reeb(m, 1.0)
}

/// `S¹ ⊂ ℂ` with `ξ(x) = −ix` and `φ = 0`.
pub fn trivial_circle_sasaki() -> SasakianStructure {
    let mut s = sphere_with_reeb(1, 1.0).expect("odd dimension");
    s.name = "circle S^1".into();
    s
}

/// The two Reeb sign choices `ξ = ∓ix` with `φ = P∘(i·)` fixed, each with its
/// contact-condition record. The passing sign is the one the catalog uses.
pub fn reeb_sign_audit(m: usize, cfg: &ProbeConfig) -> Result<Vec<(&'static str, VerificationReport)>> {
    let mut out = Vec::new();
    for (label, sign) in [("xi = -ix", 1.0), ("xi = +ix", -1.0)] {
        out.push((label, sphere_with_reeb(m, sign)?.verify(cfg)));
    }
    Ok(out)
}

fn norm_of(v: Result<Vec<f64>>) -> Result<f64> {
    v.map(|v| linalg::norm_f64(&v))
}

/// Checks unit Killing Reeb field, `φ² = −I + η⊗ξ`, the contact condition and
/// normality at `cfg.samples` points with `cfg.pairs` random tangent pairs each.
pub fn verify_sasakian(s: &SasakianStructure, cfg: &ProbeConfig) -> VerificationReport {
    let mut report = VerificationReport::new(
        "sasakian",
        &s.name,
        Environment::new(cfg.seed, cfg.samples, cfg.pairs, cfg.tol),
    );
    let m = &s.manifold;
    let tally = run_points(m, cfg, |p, rng| {
        let mut t = Tally::default();
        let xi_p = s.xi.eval_f64(p);
        t.add(ids::REEB_TANGENT, m.normal_residual(p, &xi_p));
        t.add(ids::REEB_UNIT, linalg::norm_f64(&xi_p) - 1.0);
        t.add(ids::REEB_ETA, s.eta.eval(p, &xi_p) - 1.0);
        for _ in 0..cfg.pairs {
            let v = m.random_tangent(p, rng);
            let w = m.random_tangent(p, rng);
            t.add_result(ids::REEB_KILLING, killing_residual(m, &*s.xi, p, &v, &w));

            let phi_v = s.phi.apply_f64(p, &v);
            t.add(ids::PHI_TANGENT, m.normal_residual(p, &phi_v));
            let mut sq = s.phi.apply_f64(p, &phi_v);
            linalg::axpy(1.0, &v, &mut sq);
            linalg::axpy(-s.eta.eval(p, &v), &xi_p, &mut sq);
            t.add(ids::PHI_SQUARE, linalg::norm_f64(&sq));

            let x = extend(m, p, &v, Extension::Projected);
            let y = extend(m, p, &w, Extension::Projected);
            let g_x_phiy = linalg::dot(&v, &s.phi.apply_f64(p, &w));
            let d_eta = exterior_d(m, &*s.xi, &*x, &*y, p);
            t.add_result(ids::CONTACT, d_eta.clone().map(|d| 0.5 * d - g_x_phiy));
            t.add_result(ids::CONTACT_UNNORMALIZED, d_eta.clone().map(|d| d - g_x_phiy));
            let normal = phi_torsion(m, &s.phi, &x, &y, p).and_then(|mut n| {
                linalg::axpy(d_eta.clone()?, &xi_p, &mut n);
                Ok(n)
            });
            t.add_result(ids::NORMALITY, norm_of(normal.clone()));

            let xt = extend(m, p, &v, Extension::Tilted(rng.random()));
            let yt = extend(m, p, &w, Extension::Tilted(rng.random()));
            let change = exterior_d(m, &*s.xi, &*xt, &*yt, p).and_then(|dt| {
                let nt = phi_torsion(m, &s.phi, &xt, &yt, p)?;
                let mut nt_full = nt;
                linalg::axpy(dt, &xi_p, &mut nt_full);
                let n0 = normal.clone()?;
                Ok((dt - d_eta.clone()?)
                    .abs()
                    .max(linalg::max_abs(&linalg::sub(&nt_full, &n0))))
            });
            t.add_result(ids::TENSORIALITY, change);

            // The literal form of normality, restricted to ξ-orthogonal arguments.
            let xi2 = linalg::dot(&xi_p, &xi_p);
            let mut vh = v.clone();
            linalg::axpy(-linalg::dot(&v, &xi_p) / xi2, &xi_p, &mut vh);
            let mut wh = w.clone();
            linalg::axpy(-linalg::dot(&w, &xi_p) / xi2, &xi_p, &mut wh);
            let xh = extend(m, p, &vh, Extension::Projected);
            let yh = extend(m, p, &wh, Extension::Projected);
            let phix = crate::geometry::EndoApplied {
                endo: s.phi.clone(),
                field: xh.clone(),
            };
            let phiy = crate::geometry::EndoApplied {
                endo: s.phi.clone(),
                field: yh.clone(),
            };
            let literal = exterior_d(m, &*s.xi, &*xh, &*yh, p).and_then(|d| {
                let mut br = lie_bracket(m, &phix, &phiy, p)?;
                let reeb_part = s.eta.eval(p, &br) + d;
                linalg::axpy(d, &xi_p, &mut br);
                Ok((reeb_part, linalg::norm_f64(&br)))
            });
            t.add_result(ids::NORMALITY_LITERAL_REEB, literal.clone().map(|l| l.0));
            t.add_result(ids::NORMALITY_LITERAL_FULL, literal.map(|l| l.1));
        }
        t
    });
    let rows = [
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
            id: ids::REEB_ETA,
            anchor: anchors::REEB_ETA,
            gated: true,
        },
        Row {
            id: ids::REEB_KILLING,
            anchor: anchors::REEB_KILLING,
            gated: true,
        },
        Row {
            id: ids::PHI_TANGENT,
            anchor: anchors::PHI_TANGENT,
            gated: true,
        },
        Row {
            id: ids::PHI_SQUARE,
            anchor: anchors::PHI_SQUARE,
            gated: true,
        },
        Row {
            id: ids::CONTACT,
            anchor: anchors::CONTACT,
            gated: true,
        },
        Row {
            id: ids::NORMALITY,
            anchor: anchors::NORMALITY,
            gated: true,
        },
        Row {
            id: ids::NORMALITY_LITERAL_REEB,
            anchor: anchors::NORMALITY_LITERAL_REEB,
            gated: true,
        },
        Row {
            id: ids::TENSORIALITY,
            anchor: anchors::TENSORIALITY,
            gated: true,
        },
        Row {
            id: ids::CONTACT_UNNORMALIZED,
            anchor: anchors::CONTACT_UNNORMALIZED,
            gated: false,
        },
        Row {
            id: ids::NORMALITY_LITERAL_FULL,
            anchor: anchors::NORMALITY_LITERAL_FULL,
            gated: false,
        },
    ];
    match tally {
        Ok(t) => emit(&mut report, &t, &rows, cfg.tol),
        Err(e) => report.errors.push(e.to_string()),
    }
    report
}

/// Three Reeb fields with their associated `φᵢ`.
#[derive(Clone)]
pub struct ThreeSasakianTriple {
    pub name: String,
    pub manifold: LevelSetManifold,
    pub xi: [FieldRef; 3],
    pub phi: [EndoRef; 3],
}

/// `S^{4n+3} ⊂ ℍⁿ⁺¹` with `ξ₁ = −ix, ξ₂ = −jx, ξ₃ = −kx` (entrywise left
/// multiplication) and `φᵢ = P∘(qᵢ·)`.
pub fn sphere_three_sasaki(n: usize) -> ThreeSasakianTriple {
    let entries = n + 1;
    let manifold = LevelSetManifold::unit_sphere(4 * entries);
    let units = Quaternion::units();
    let xi = units.map(|q| Arc::new(AffineField::linear(quaternion_left_matrix(-q, entries))) as FieldRef);
    let phi = units.map(|q| {
        Arc::new(ProjectedEndo {
            manifold: manifold.clone(),
            inner: Arc::new(LinearEndo {
                a: quaternion_left_matrix(q, entries),
            }),
        }) as EndoRef
    });
    ThreeSasakianTriple {
        name: format!("sphere S^{}", 4 * n + 3),
        manifold,
        xi,
        phi,
    }
}

impl ThreeSasakianTriple {
    /// The Sasakian structure `(φᵢ, ξᵢ, ηᵢ)`, `i ∈ {0,1,2}`.
    pub fn structure(&self, i: usize) -> SasakianStructure {
        SasakianStructure::new(
            format!("{} (structure {})", self.name, i + 1),
            self.manifold.clone(),
            self.xi[i].clone(),
            self.phi[i].clone(),
        )
    }

    /// Orthonormality, bracket relations and the Killing property.
    pub fn verify(&self, cfg: &ProbeConfig) -> VerificationReport {
        let mut report = VerificationReport::new(
            "three-sasakian",
            &self.name,
            Environment::new(cfg.seed, cfg.samples, cfg.pairs, cfg.tol),
        );
        let m = &self.manifold;
        let tally = run_points(m, cfg, |p, rng| {
            let mut t = Tally::default();
            let vals: Vec<Vec<f64>> = self.xi.iter().map(|x| x.eval_f64(p)).collect();
            for i in 0..3 {
                t.add(ids::TRIPLE_TANGENT, m.normal_residual(p, &vals[i]));
                for j in 0..3 {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    t.add(ids::ORTHONORMAL, linalg::dot(&vals[i], &vals[j]) - delta);
                }
            }
            for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let r = lie_bracket(m, &*self.xi[i], &*self.xi[j], p).map(|mut b| {
                    linalg::axpy(-2.0, &vals[k], &mut b);
                    linalg::norm_f64(&b)
                });
                t.add_result(ids::BRACKETS, r);
            }
            let r13 = lie_bracket(m, &*self.xi[0], &*self.xi[2], p).map(|mut b| {
                linalg::axpy(2.0, &vals[1], &mut b);
                linalg::norm_f64(&b)
            });
            t.add_result(ids::BRACKET_13, r13);
            for _ in 0..cfg.pairs {
                let v = m.random_tangent(p, rng);
                let w = m.random_tangent(p, rng);
                for x in &self.xi {
                    t.add_result(ids::TRIPLE_KILLING, killing_residual(m, &**x, p, &v, &w));
                }
            }
            t
        });
        let rows = [
            Row {
                id: ids::TRIPLE_TANGENT,
                anchor: anchors::TRIPLE_TANGENT,
                gated: true,
            },
            Row {
                id: ids::ORTHONORMAL,
                anchor: anchors::ORTHONORMAL,
                gated: true,
            },
            Row {
                id: ids::BRACKETS,
                anchor: anchors::BRACKETS,
                gated: true,
            },
            Row {
                id: ids::BRACKET_13,
                anchor: anchors::BRACKET_13,
                gated: true,
            },
            Row {
                id: ids::TRIPLE_KILLING,
                anchor: anchors::TRIPLE_KILLING,
                gated: true,
            },
        ];
        match tally {
            Ok(t) => emit(&mut report, &t, &rows, cfg.tol),
            Err(e) => report.errors.push(e.to_string()),
        }
        report
    }
}

/// `ξ` scaled by a constant, used for falsification runs.
pub fn scaled_field(field: FieldRef, factor: f64) -> FieldRef {
    Arc::new(ScaledField { factor, field })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ScaledEndo;

    fn cfg() -> ProbeConfig {
        ProbeConfig::new(20, 4, 7, 1e-9)
    }

    #[test]
    fn s3_passes_and_unnormalized_is_off_by_factor_two() {
        let s = standard_sphere_sasaki(3).unwrap();
        let r = s.verify(&cfg());
        assert!(r.passed(), "{}", r.to_json());
        let un = r.get(ids::CONTACT_UNNORMALIZED).unwrap();
        assert!(un.max() > 0.1);
    }

    #[test]
    fn circle_is_trivially_sasakian() {
        let r = trivial_circle_sasaki().verify(&cfg());
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn even_dimension_is_rejected() {
        assert!(matches!(standard_sphere_sasaki(4), Err(Error::BadDimension(_))));
    }

    #[test]
    fn negated_phi_fails_only_contact() {
        let s = standard_sphere_sasaki(3).unwrap();
        let neg = s.with_phi(Arc::new(ScaledEndo {
            factor: -1.0,
            endo: s.phi.clone(),
        }));
        let r = neg.verify(&cfg());
        let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
        assert_eq!(failed, vec![ids::CONTACT]);
    }

    #[test]
    fn exactly_one_reeb_sign_passes_contact() {
        let audit = reeb_sign_audit(5, &cfg()).unwrap();
        let passing: Vec<&str> = audit
            .iter()
            .filter(|(_, r)| r.get(ids::CONTACT).unwrap().passed())
            .map(|(l, _)| *l)
            .collect();
        assert_eq!(passing, vec!["xi = -ix"]);
    }

    #[test]
    fn three_sasaki_s7() {
        let t = sphere_three_sasaki(1);
        let r = t.verify(&cfg());
        assert!(r.passed(), "{}", r.to_json());
        for i in 0..3 {
            let r = t.structure(i).verify(&ProbeConfig::new(5, 2, 1, 1e-9));
            assert!(r.passed(), "{}", r.to_json());
        }
    }
}
