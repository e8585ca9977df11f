use std::sync::Arc;

use hopfcx::geometry::{point_rng, EndoRef, FieldRef, IdentityEndo, Scalar, SmoothField};
use hopfcx::hopf::{check_theorem_conditions, curvature, ids, verify_j_structure};
use hopfcx::instances::{convention_audit, product_instance, stiefel_complex};
use hopfcx::{ConventionPoint, Error, FiberMatrix, HopfBundleInstance, InstanceKind, JStructure, ProbeConfig};

fn cfg(samples: usize, pairs: usize) -> ProbeConfig {
    ProbeConfig::new(samples, pairs, 42, 1e-9)
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn stiefel(n: usize) -> HopfBundleInstance {
    stiefel_complex(n, &ConventionPoint::default()).unwrap().1
}

fn product(n: usize) -> HopfBundleInstance {
    product_instance(n, &ConventionPoint::default()).unwrap().1
}

#[test]
fn fiber_matrix_admissibility() {
    let m = FiberMatrix::new(1.0, -2.0, 1.0, -1.0).unwrap();
    assert_eq!(m.trace(), 0.0);
    assert_eq!(m.det(), 1.0);
    assert!(matches!(
        FiberMatrix::new(1.0, 0.0, 0.0, 1.0),
        Err(Error::BadFiberMatrix { .. })
    ));
    let mut rng = point_rng(1, 0);
    for _ in 0..20 {
        assert!(FiberMatrix::random(&mut rng).validate().is_ok());
    }
}

/// `Jξ₃ = ξ*` and `Jξ* = −ξ₃` for the standard fiber matrix; `J² = −I` for
/// any admissible one.
#[test]
fn j_on_the_fiber() {
    let b = stiefel(2);
    let j = JStructure::new(b.clone(), FiberMatrix::standard()).unwrap().as_endo();
    let other = JStructure::new(b.clone(), FiberMatrix::new(1.0, -2.0, 1.0, -1.0).unwrap())
        .unwrap()
        .as_endo();
    let pts = b.total.sample(20, 3).unwrap();
    for (k, p) in pts.points.iter().enumerate() {
        let xi3 = b.verticals[2].eval_f64(p);
        let xs = b.xistar.eval_f64(p);
        assert!(dist(&j.apply_f64(p, &xi3), &xs) < 1e-14);
        let neg: Vec<f64> = xi3.iter().map(|v| -v).collect();
        assert!(dist(&j.apply_f64(p, &xs), &neg) < 1e-14);

        let mut rng = point_rng(3, k as u64);
        let v = b.total.random_tangent(p, &mut rng);
        let jjv = other.apply_f64(p, &other.apply_f64(p, &v));
        let sum: Vec<f64> = jjv.iter().zip(&v).map(|(a, b)| a + b).collect();
        assert!(max_abs(&sum) < 1e-12);
    }
}

#[test]
fn horizontal_projector_ranks() {
    let flat = product(1);
    let p = flat.total.sample(1, 0).unwrap().points.remove(0);
    let proj = flat.horizontal_projector(&p).unwrap();
    assert!(proj.data.iter().all(|v| v.abs() < 1e-14), "H' = 0 on S^1 x S^3");

    let b = stiefel(2);
    for p in &b.total.sample(10, 1).unwrap().points {
        let proj = b.horizontal_projector(p).unwrap();
        assert!((proj.trace() - 4.0).abs() < 1e-12);
        assert!(max_abs(&proj.matvec(&b.verticals[1].eval_f64(p))) < 1e-14);
        assert!(max_abs(&proj.matvec(&b.xistar.eval_f64(p))) < 1e-14);
    }
}

fn random_horizontal(b: &HopfBundleInstance, p: &[f64], seed: u64) -> Vec<f64> {
    let mut rng = point_rng(seed, 0);
    let g = b.total.random_tangent(p, &mut rng);
    b.horizontal_projector(p).unwrap().matvec(&g)
}

#[test]
fn curvature_is_antisymmetric_and_flat_on_products() {
    let b = stiefel(2);
    for (k, p) in b.total.sample(10, 2).unwrap().points.iter().enumerate() {
        let x = random_horizontal(&b, p, 2 * k as u64);
        let y = random_horizontal(&b, p, 2 * k as u64 + 1);
        for i in 0..3 {
            let xy = curvature(&b, i, &x, &y, p).unwrap();
            let yx = curvature(&b, i, &y, &x, p).unwrap();
            assert!((xy + yx).abs() < 1e-13);
            assert!(xy.is_finite());
        }
    }
    let flat = product(5);
    let report = check_theorem_conditions(&flat, &cfg(20, 5));
    assert!(report.errors.is_empty());
    for c in &report.checks {
        if c.count > 0 {
            assert!(c.max() < 1e-10, "{} = {}", c.id, c.max());
        }
    }
}

#[test]
fn curvature_is_tensorial_on_v2_c3() {
    let report = check_theorem_conditions(&stiefel(2), &cfg(10, 4));
    let c = report.get(ids::CURV_TENSORIALITY).unwrap();
    assert!(c.count > 0 && c.max() < 1e-8, "{}", c.max());
}

/// Where `H′ = 0` the only curvature condition is `dηᵢ(ξⱼ, ξ*) = 0`, which
/// holds because left and right multiplications commute.
#[test]
fn stiefel_n1_conditions() {
    let report = check_theorem_conditions(&stiefel(1), &cfg(20, 4));
    assert_eq!(
        report.get(ids::CURV_PHI_INVARIANCE).unwrap().status,
        hopfcx::CheckStatus::VacuousPass
    );
    assert_eq!(
        report.get(ids::CURV_REEB_ANNIHILATION).unwrap().status,
        hopfcx::CheckStatus::VacuousPass
    );
    assert!(report.get(ids::CURV_VERTICAL_REEB).unwrap().max() < 1e-10);
}

/// `(ξ* + ξ₁)/√2` is unit but not orthogonal to the verticals.
struct Tilted {
    xistar: FieldRef,
    xi1: FieldRef,
}

impl SmoothField for Tilted {
    fn dim(&self) -> usize {
        self.xistar.ambient_dim()
    }
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        let a = T::field(&*self.xistar, x);
        let b = T::field(&*self.xi1, x);
        let s = T::cst(std::f64::consts::FRAC_1_SQRT_2);
        a.into_iter().zip(b).map(|(u, v)| (u + v) * s).collect()
    }
}

#[test]
fn non_orthogonal_reeb_is_rejected() {
    let b = stiefel(2);
    let tilted: FieldRef = Arc::new(Tilted {
        xistar: b.xistar.clone(),
        xi1: b.verticals[0].clone(),
    });
    let err = HopfBundleInstance::build(
        "tilted",
        b.total.clone(),
        b.verticals.clone(),
        tilted,
        b.phihat.clone(),
        b.action,
    )
    .unwrap_err();
    match err {
        Error::StructureViolation(msgs) => {
            assert!(msgs.iter().any(|m| m.contains(ids::REEB_ORTHOGONAL)), "{msgs:?}");
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(HopfBundleInstance::build(
        "default",
        b.total.clone(),
        b.verticals.clone(),
        b.xistar.clone(),
        b.phihat.clone(),
        b.action,
    )
    .is_ok());
}

#[test]
fn flipped_vertical_breaks_bracket_convention() {
    let conv = ConventionPoint {
        negate_xi3: true,
        ..ConventionPoint::default()
    };
    let b = stiefel_complex(2, &conv).unwrap().1;
    let j = JStructure::new(b, FiberMatrix::standard()).unwrap();
    let report = verify_j_structure(&j, &cfg(5, 2));
    assert_eq!(
        report.first_failure().map(|c| c.id.as_str()),
        Some(ids::BRACKET_CONVENTION)
    );
}

/// `φ̂ = id` on `H′` is not a complex structure; the failure shows up in
/// `φ̂² = −id` and in the horizontal Nijenhuis case, while the guaranteed
/// bundle invariants still hold.
#[test]
fn broken_phihat_is_localized() {
    let mut b = stiefel(2);
    b.phihat = Arc::new(IdentityEndo {
        dim: b.total.ambient_dim(),
    }) as EndoRef;
    let j = JStructure::new(b, FiberMatrix::standard()).unwrap();
    let report = verify_j_structure(&j, &cfg(8, 3));
    for id in [ids::PHI_SQUARE, ids::J_SQUARE, ids::N_TOTAL, ids::N_HORIZONTAL_PAIR] {
        assert!(report.get(id).unwrap().status.is_failure(), "{id} should fail");
    }
    for id in [
        ids::VERTICAL_ORTHONORMAL,
        ids::VERTICAL_KILLING,
        ids::BRACKET_CONVENTION,
        ids::CURV_VERTICAL_REEB,
    ] {
        assert!(report.get(id).unwrap().passed(), "{id} should pass");
    }
}

#[test]
fn hopf_surface_is_integrable_with_automorphisms() {
    let j = JStructure::new(product(1), FiberMatrix::standard()).unwrap();
    let report = verify_j_structure(&j, &cfg(30, 10));
    assert!(report.passed(), "{:?}", report.first_failure());
    assert!(report.get(ids::N_TOTAL).unwrap().max() < 1e-7);
    assert!(report.get(ids::AUTO_REEB).unwrap().max() < 1e-8);
    assert!(report.get(ids::AUTO_XI3).unwrap().max() < 1e-8);
    assert!(report.get(ids::D_OMEGA).unwrap().passed());
}

#[test]
fn random_fiber_matrices_stay_integrable_on_s5_x_s3() {
    let mut rng = point_rng(77, 0);
    for _ in 0..2 {
        let m = FiberMatrix::random(&mut rng);
        let j = JStructure::new(product(5), m).unwrap();
        let report = verify_j_structure(&j, &ProbeConfig::new(10, 4, 1, 1e-7));
        assert!(report.get(ids::N_TOTAL).unwrap().max() < 1e-7);
        assert!(report.get(ids::J_SQUARE).unwrap().max() < 1e-10);
    }
}

#[test]
fn audit_on_stiefel_n1_and_product() {
    let audit = convention_audit(InstanceKind::StiefelComplex, 1, &cfg(5, 2)).unwrap();
    assert_eq!(audit.rows.len(), ConventionPoint::COUNT);
    for row in &audit.rows {
        // Bundle invariants imply integrability when H' = 0.
        if row.guaranteed_pass {
            assert!(row.full_pass, "convention {} fails {:?}", row.index, row.first_failure);
        }
    }
    let audit = convention_audit(InstanceKind::Product, 1, &cfg(5, 2)).unwrap();
    let first = &audit.rows[0];
    assert_eq!(first.index, 0);
    assert!(first.full_pass && first.worst_failing_residual.0 < 1e-9);
}
