//! Per-instance verification suites.

use rand_chacha::ChaCha8Rng;

use super::frames::{
    associative_residual, cayley_complete, complex_pair_to_quaternion, frame_deviation, g2_complete, g2_forget,
    quaternion_to_real_frame, real_frame_to_quaternion, Complex,
};
use super::{InstanceDescriptor, InstanceKind};
use crate::algebra::{moment_mu, Quaternion, QuaternionVector};
use crate::geometry::linalg;
use crate::geometry::manifold::gaussian_vec;
use crate::geometry::LevelSetManifold;
use crate::hopf::{verify_j_structure, FiberMatrix, JStructure};
use crate::probe::{emit, run_points, ProbeConfig, Row, Tally};
use crate::report::{Environment, VerificationReport};

pub mod ids {
    pub const FEASIBILITY: &str = "manifold.feasibility";
    pub const REGULARITY: &str = "manifold.regularity";
    pub const PROJECTOR_TRACE: &str = "manifold.projector_trace";
    pub const PROJECTOR_IDEMPOTENT: &str = "manifold.projector_idempotent";
    pub const PROJECTOR_SYMMETRIC: &str = "manifold.projector_symmetric";

    pub const EMBEDDING: &str = "frames.embedding_feasible";
    pub const EMBEDDING_ROUND_TRIP: &str = "frames.embedding_round_trip";
    pub const HORIZONTALITY_IDENTITY: &str = "frames.horizontality_identity";
    pub const G2_COMPLETION: &str = "g2.completion_orthonormal";
    pub const G2_ASSOCIATIVE: &str = "g2.associative_plane";
    pub const G2_ROUND_TRIP: &str = "g2.round_trip";
    pub const CAYLEY_FRAME: &str = "spin7.frame_orthonormal";
    pub const CAYLEY_COMPLETION: &str = "spin7.completion";
    pub const FIBRATION: &str = "fibration.right_action_preserves_predicate";
}

mod anchors {
    pub const FEASIBILITY: &str = "|F(p)| = 0 at sampled points";
    pub const REGULARITY: &str = "corank of JF(p) = declared dimension";
    pub const PROJECTOR_TRACE: &str = "trace of the tangent projector = declared dimension";
    pub const PROJECTOR_IDEMPOTENT: &str = "P^2 = P";
    pub const PROJECTOR_SYMMETRIC: &str = "P^T = P";
    pub const EMBEDDING: &str = "embedded orthonormal frames satisfy F = 0";
    pub const EMBEDDING_ROUND_TRIP: &str = "real frame -> h -> real frame is the identity";
    pub const HORIZONTALITY_IDENTITY: &str = "g(ih, h q) = -Re(mu(h) q) for all h";
    pub const G2_COMPLETION: &str = "(e1, e2, e1 e2, e4) is orthonormal";
    pub const G2_ASSOCIATIVE: &str = "span(e1, e2, e1 e2) is closed under the octonion product";
    pub const G2_ROUND_TRIP: &str = "forgetting e1 e2 after completion returns (e1, e2, e4)";
    pub const CAYLEY_FRAME: &str = "(e1, e2, e3, e4) is orthonormal";
    pub const CAYLEY_COMPLETION: &str = "e4 = s X(e1, e2, e3) recomputed from the completion map";
    pub const FIBRATION: &str = "h q stays on the frame predicate for the embedded 4-frame h";
}

fn env(cfg: &ProbeConfig) -> Environment {
    Environment::new(cfg.seed, cfg.samples, cfg.pairs, cfg.tol)
}

/// Feasibility, regularity and tangent-projector properties at sampled points.
pub fn manifold_checks(m: &LevelSetManifold, name: &str, cfg: &ProbeConfig) -> VerificationReport {
    let mut report = VerificationReport::new("manifold", name, env(cfg));
    let d = m.expected_dim() as f64;
    let tally = run_points(m, cfg, |p, _| {
        let mut t = Tally::default();
        t.add(ids::FEASIBILITY, m.residual_norm(p));
        t.add(ids::REGULARITY, m.corank(p) as f64 - d);
        match m.tangent_projector(p) {
            Ok(proj) => {
                t.add(ids::PROJECTOR_TRACE, proj.trace() - d);
                t.add(ids::PROJECTOR_IDEMPOTENT, proj.matmul(&proj).max_abs_diff(&proj));
                t.add(ids::PROJECTOR_SYMMETRIC, proj.transpose().max_abs_diff(&proj));
            }
            Err(e) => {
                for id in [
                    ids::PROJECTOR_TRACE,
                    ids::PROJECTOR_IDEMPOTENT,
                    ids::PROJECTOR_SYMMETRIC,
                ] {
                    t.add_result(id, Err(e.clone()));
                }
            }
        }
        t
    });
    let rows = [
        Row {
            id: ids::FEASIBILITY,
            anchor: anchors::FEASIBILITY,
            gated: true,
        },
        Row {
            id: ids::REGULARITY,
            anchor: anchors::REGULARITY,
            gated: true,
        },
        Row {
            id: ids::PROJECTOR_TRACE,
            anchor: anchors::PROJECTOR_TRACE,
            gated: true,
        },
        Row {
            id: ids::PROJECTOR_IDEMPOTENT,
            anchor: anchors::PROJECTOR_IDEMPOTENT,
            gated: true,
        },
        Row {
            id: ids::PROJECTOR_SYMMETRIC,
            anchor: anchors::PROJECTOR_SYMMETRIC,
            gated: true,
        },
    ];
    match tally {
        Ok(t) => emit(&mut report, &t, &rows, cfg.tol),
        Err(e) => report.errors.push(e.to_string()),
    }
    report
}

fn random_real_frame(rng: &mut ChaCha8Rng, count: usize, dim: usize) -> Vec<Vec<f64>> {
    loop {
        let raw: Vec<Vec<f64>> = (0..count).map(|_| gaussian_vec(rng, dim)).collect();
        if let Some(f) = linalg::gram_schmidt(&raw, 1e-6) {
            return f;
        }
    }
}

/// An orthonormal pair in `ℂᵈ`: Gram–Schmidt of two Gaussian vectors under
/// the Hermitian product.
fn random_complex_pair(rng: &mut ChaCha8Rng, dim: usize) -> (Vec<Complex>, Vec<Complex>) {
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Complex> {
        let g = gaussian_vec(rng, 2 * dim);
        g.chunks_exact(2).map(|c| (c[0], c[1])).collect()
    };
    let normalize = |u: Vec<Complex>| -> Vec<Complex> {
        let n = u.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        u.into_iter().map(|(a, b)| (a / n, b / n)).collect()
    };
    let u1 = normalize(draw(rng));
    let mut u2 = draw(rng);
    // u2 -= ⟨u1, u2⟩ u1, with ⟨u, v⟩ = Σ ū v
    let (cr, ci) = u1.iter().zip(&u2).fold((0.0, 0.0), |(re, im), (&(a, b), &(c, d))| {
        (re + a * c + b * d, im + a * d - b * c)
    });
    for (w, &(a, b)) in u2.iter_mut().zip(&u1) {
        w.0 -= cr * a - ci * b;
        w.1 -= cr * b + ci * a;
    }
    (u1, normalize(u2))
}

fn frame_refs(f: &[Vec<f64>]) -> Vec<&[f64]> {
    f.iter().map(|v| v.as_slice()).collect()
}

/// Decodes `h` as a real 4-frame (see [`quaternion_to_real_frame`]).
fn rotate_frame(frame: [&[f64]; 4], q: Quaternion<f64>) -> Option<[Vec<f64>; 4]> {
    let h = real_frame_to_quaternion(frame, false).ok()?;
    Some(quaternion_to_real_frame(&h.right_mul(q)))
}

fn frame_checks(d: &InstanceDescriptor, cfg: &ProbeConfig) -> VerificationReport {
    let mut report = VerificationReport::new("frames", &d.name, env(cfg));
    let m = &d.manifold;
    let conj_skip = d.convention.skip_conjugation;
    let entries = d.n + 1;
    let kind = d.kind;
    let sign = d.cayley_sign;
    let tally = run_points(m, cfg, |p, rng| {
        let mut t = Tally::default();
        match kind {
            InstanceKind::StiefelComplex => {
                let (u1, u2) = random_complex_pair(rng, entries);
                let r = complex_pair_to_quaternion(&u1, &u2, conj_skip).map(|h| m.residual_norm(&h.to_flat()));
                t.add_result(ids::EMBEDDING, r);
                let h = QuaternionVector::from_flat(&gaussian_vec(rng, 4 * entries));
                let mu = moment_mu(&h);
                for q in Quaternion::units() {
                    let ih = h.left_mul(Quaternion::i());
                    let lhs = ih.inner(&h.right_mul(q));
                    t.add(ids::HORIZONTALITY_IDENTITY, lhs + (mu * q).w);
                }
            }
            InstanceKind::StiefelReal => {
                let f = random_real_frame(rng, 4, entries);
                let refs = frame_refs(&f);
                let h = real_frame_to_quaternion([refs[0], refs[1], refs[2], refs[3]], conj_skip);
                t.add_result(ids::EMBEDDING, h.clone().map(|h| m.residual_norm(&h.to_flat())));
                let back = h.map(|h| {
                    let b = quaternion_to_real_frame(&h);
                    (0..4)
                        .map(|i| linalg::max_abs(&linalg::sub(&b[i], &f[i])))
                        .fold(0.0, f64::max)
                });
                t.add_result(ids::EMBEDDING_ROUND_TRIP, back);
            }
            InstanceKind::G2 => {
                let e: Vec<&[f64]> = p.chunks_exact(7).collect();
                match g2_complete([e[0], e[1], e[2]]) {
                    Ok(full) => {
                        t.add(ids::G2_COMPLETION, frame_deviation(&frame_refs(&full)));
                        t.add(ids::G2_ASSOCIATIVE, associative_residual(e[0], e[1]));
                        let back = g2_forget(&full);
                        let diff = (0..3)
                            .map(|i| linalg::max_abs(&linalg::sub(&back[i], e[i])))
                            .fold(0.0, f64::max);
                        t.add(ids::G2_ROUND_TRIP, diff);
                        let q = Quaternion::from_slice(&linalg::normalized(&gaussian_vec(rng, 4)));
                        let r = rotate_frame([&full[0], &full[1], &full[2], &full[3]], q)
                            .map(|g| {
                                let flat: Vec<f64> = [g[0].as_slice(), g[1].as_slice(), g[3].as_slice()].concat();
                                let mut r = m.residual_norm(&flat);
                                let c = super::frames::imaginary_product(&g[0], &g[1]);
                                r = r.max(linalg::max_abs(&linalg::sub(&g[2], &c)));
                                r
                            })
                            .unwrap_or(f64::NAN);
                        t.add(ids::FIBRATION, r);
                    }
                    Err(e) => t.add_result(ids::G2_COMPLETION, Err(e)),
                }
            }
            InstanceKind::Spin7 => {
                let e: Vec<&[f64]> = p.chunks_exact(8).collect();
                t.add(ids::CAYLEY_FRAME, frame_deviation(&e));
                match cayley_complete([e[0], e[1], e[2]], sign) {
                    Ok(full) => {
                        t.add(ids::CAYLEY_COMPLETION, linalg::max_abs(&linalg::sub(&full[3], e[3])));
                        let q = Quaternion::from_slice(&linalg::normalized(&gaussian_vec(rng, 4)));
                        let r = rotate_frame([e[0], e[1], e[2], e[3]], q)
                            .map(|g| m.residual_norm(&g.concat()))
                            .unwrap_or(f64::NAN);
                        t.add(ids::FIBRATION, r);
                    }
                    Err(err) => t.add_result(ids::CAYLEY_COMPLETION, Err(err)),
                }
            }
            _ => {}
        }
        t
    });
    let rows: Vec<Row<'_>> = match kind {
        InstanceKind::StiefelComplex => vec![
            Row {
                id: ids::EMBEDDING,
                anchor: anchors::EMBEDDING,
                gated: true,
            },
            Row {
                id: ids::HORIZONTALITY_IDENTITY,
                anchor: anchors::HORIZONTALITY_IDENTITY,
                gated: true,
            },
        ],
        InstanceKind::StiefelReal => vec![
            Row {
                id: ids::EMBEDDING,
                anchor: anchors::EMBEDDING,
                gated: true,
            },
            Row {
                id: ids::EMBEDDING_ROUND_TRIP,
                anchor: anchors::EMBEDDING_ROUND_TRIP,
                gated: true,
            },
        ],
        InstanceKind::G2 => vec![
            Row {
                id: ids::G2_COMPLETION,
                anchor: anchors::G2_COMPLETION,
                gated: true,
            },
            Row {
                id: ids::G2_ASSOCIATIVE,
                anchor: anchors::G2_ASSOCIATIVE,
                gated: true,
            },
            Row {
                id: ids::G2_ROUND_TRIP,
                anchor: anchors::G2_ROUND_TRIP,
                gated: true,
            },
            Row {
                id: ids::FIBRATION,
                anchor: anchors::FIBRATION,
                gated: false,
            },
        ],
        InstanceKind::Spin7 => vec![
            Row {
                id: ids::CAYLEY_FRAME,
                anchor: anchors::CAYLEY_FRAME,
                gated: true,
            },
            Row {
                id: ids::CAYLEY_COMPLETION,
                anchor: anchors::CAYLEY_COMPLETION,
                gated: true,
            },
            Row {
                id: ids::FIBRATION,
                anchor: anchors::FIBRATION,
                gated: false,
            },
        ],
        _ => Vec::new(),
    };
    match tally {
        Ok(t) => emit(&mut report, &t, &rows, cfg.tol),
        Err(e) => report.errors.push(e.to_string()),
    }
    report
}

/// Full suite for one instance: manifold checks, then the structure checks
/// the instance carries (Sasakian axioms, 3-Sasakian relations, or the Hopf
/// bundle with `J` for `fiber`), then frame checks where applicable.
pub fn verify_instance(d: &InstanceDescriptor, fiber: FiberMatrix, cfg: &ProbeConfig) -> VerificationReport {
    let mut report = VerificationReport::new("instance", &d.name, env(cfg));
    report.extend(manifold_checks(&d.manifold, &d.name, cfg));
    if let Some(s) = &d.sasakian {
        report.extend(s.verify(cfg));
    }
    if let Some(t) = &d.triple {
        report.extend(t.verify(cfg));
    }
    if let Some(b) = &d.bundle {
        match JStructure::new(b.clone(), fiber) {
            Ok(j) => report.extend(verify_j_structure(&j, cfg)),
            Err(e) => report.errors.push(e.to_string()),
        }
    }
    if matches!(
        d.kind,
        InstanceKind::StiefelComplex | InstanceKind::StiefelReal | InstanceKind::G2 | InstanceKind::Spin7
    ) {
        report.extend(frame_checks(d, cfg));
    }
    report
}
