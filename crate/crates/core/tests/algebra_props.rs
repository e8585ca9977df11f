use hopfcx::algebra::{
    associator, moment_mu, moment_nu, omul, qmul, triple_cross, Octonion, Quaternion, QuaternionVector,
};
use proptest::prelude::*;

/// Row-by-column basis products `eₐ·e_b = sign·e_idx`, transcribed from the
/// documented multiplication table.
const TABLE: [[(i8, usize); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(1, 4), (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 5), (1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 6), (1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(1, 7), (-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

fn table_product(x: &[f64; 8], y: &[f64; 8]) -> [f64; 8] {
    let mut out = [0.0; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (s, idx) = TABLE[a][b];
            out[idx] += f64::from(s) * x[a] * y[b];
        }
    }
    out
}

/// Hamilton product expanded by hand.
fn hamilton(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

fn coord() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(coord()).prop_map(|a| Quaternion::new(a[0], a[1], a[2], a[3]))
}

fn unit_quat() -> impl Strategy<Value = Quaternion> {
    quat()
        .prop_filter("nonzero", |q| q.norm() > 0.1)
        .prop_map(|q| q.scale(1.0 / q.norm()))
}

fn oct() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(coord()).prop_map(|a| Octonion::from_slice(&a))
}

fn hvec(entries: usize) -> impl Strategy<Value = QuaternionVector> {
    prop::collection::vec(coord(), 4 * entries)
        .prop_filter("nonzero", |x| x.iter().map(|v| v * v).sum::<f64>() > 0.1)
        .prop_map(|mut x| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= r);
            QuaternionVector::from_flat(&x)
        })
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn qmul_matches_hamilton(a in quat(), b in quat()) {
        let got = qmul(a, b).to_array();
        prop_assert!(max_diff(&got, &hamilton(a.to_array(), b.to_array())) < 1e-14);
    }

    #[test]
    fn quaternions_associate_and_compose(a in quat(), b in quat(), c in quat()) {
        prop_assert!(((a * b) * c - a * (b * c)).max_abs() < 1e-13);
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-13);
        prop_assert!(((a * b).conj() - b.conj() * a.conj()).max_abs() < 1e-14);
    }

    #[test]
    fn omul_matches_table(x in oct(), y in oct()) {
        let got = omul(x, y).to_array();
        prop_assert!(max_diff(&got, &table_product(&x.to_array(), &y.to_array())) < 1e-13);
    }

    #[test]
    fn octonions_are_alternative(x in oct(), y in oct()) {
        prop_assert!(associator(x, x, y).max_abs() < 1e-12);
        prop_assert!(associator(y, x, x).max_abs() < 1e-12);
        prop_assert!(associator(x, y, x).max_abs() < 1e-12);
    }

    #[test]
    fn octonion_norm_is_multiplicative(x in oct(), y in oct()) {
        prop_assert!((omul(x, y).norm() - x.norm() * y.norm()).abs() < 1e-12);
    }

    #[test]
    fn triple_cross_of_orthonormal_triple(x in oct(), y in oct(), z in oct()) {
        let mut frame: Vec<Octonion> = Vec::new();
        for v in [x, y, z] {
            let mut v = v;
            for f in &frame {
                v = v - f.scale(v.dot(*f));
            }
            prop_assume!(v.norm() > 1e-3);
            frame.push(v.scale(1.0 / v.norm()));
        }
        let c = triple_cross(frame[0], frame[1], frame[2]);
        prop_assert!((c.norm() - 1.0).abs() < 1e-12);
        for f in &frame {
            prop_assert!(c.dot(*f).abs() < 1e-12);
        }
        let swapped = triple_cross(frame[2], frame[1], frame[0]);
        prop_assert!((c + swapped).max_abs() < 1e-14);
    }

    #[test]
    fn mu_is_sp1_equivariant(h in hvec(3), q in unit_quat()) {
        let lhs = moment_mu(&h.right_mul(q));
        prop_assert!((lhs - q.conj() * moment_mu(&h) * q).max_abs() < 1e-12);
    }

    #[test]
    fn mu_is_u1_invariant(h in hvec(3), theta in 0.0..std::f64::consts::TAU) {
        let rot = Quaternion::new(theta.cos(), theta.sin(), 0.0, 0.0);
        prop_assert!((moment_mu(&h.left_mul(rot)) - moment_mu(&h)).max_abs() < 1e-12);
    }

    #[test]
    fn nu_rotates_under_right_action(h in hvec(4), q in unit_quat()) {
        let before = moment_nu(&h);
        let after = moment_nu(&h.right_mul(q));
        for (a, b) in after.iter().zip(before) {
            prop_assert!((*a - q.conj() * b * q).max_abs() < 1e-12);
        }
    }

    #[test]
    fn moment_maps_are_imaginary(h in hvec(3)) {
        prop_assert!(moment_mu(&h).w.abs() < 1e-14);
        let nu = moment_nu(&h);
        prop_assert_eq!(nu[0], moment_mu(&h));
        for c in nu {
            prop_assert!(c.w.abs() < 1e-14);
        }
    }

    /// `⟨ih, h·q⟩ = −Re(μ(h) q)`, so `ih` is orthogonal to the right `Sp(1)`
    /// orbit exactly where `μ(h) = 0`.
    #[test]
    fn horizontality_identity(h in hvec(3), q in quat()) {
        let ih = h.left_mul(Quaternion::i());
        let hq = h.right_mul(q);
        let rhs = -(moment_mu(&h) * q).w;
        prop_assert!((ih.inner(&hq) - rhs).abs() < 1e-13);
    }
}

#[test]
fn basis_products_anticommute() {
    for a in 1..8 {
        for b in 1..8 {
            if a == b {
                continue;
            }
            let ab = omul(Octonion::<f64>::basis(a), Octonion::<f64>::basis(b));
            let ba = omul(Octonion::<f64>::basis(b), Octonion::<f64>::basis(a));
            assert_eq!(ab, -ba, "e{a} e{b}");
        }
    }
}

#[test]
fn e1_e2_e4_do_not_associate() {
    let e = Octonion::<f64>::basis;
    assert!(associator(e(1), e(2), e(4)).norm() > 0.5);
}
