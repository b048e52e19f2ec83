mod common;

use proptest::prelude::*;
use xdiscord::discord::{f_derivative, global_max, FContext};
use xdiscord::entanglement::{
    concurrence, koashi_winter, rank_two_classify, reduce_to_ab, spin_flip,
};
use xdiscord::linalg::{c, hermitian_eigenvalues, psd_sqrt, C64};
use xdiscord::oracle::{
    conditional_ensemble, conditional_entropy, conjugate_paulis, g_function, theta_max_check,
    MeasurementPoint,
};
use xdiscord::xstate::{eigenvalues_unsorted, mutual_information};
use xdiscord::{bloch_to_matrix, discord, matrix_to_bloch, BlochX, XDensityMatrix};

/// Largest `t ≤ 1` with `t·p` physical.
fn physical_scale(p: [f64; 5]) -> f64 {
    let [r, s, c1, c2, c3] = p;
    let h1 = (r - s).hypot(c1 + c2);
    let h2 = (r + s).hypot(c1 - c2);
    let mut t: f64 = 1.0;
    for den in [c3 + h1, -c3 + h2] {
        if den > 0.0 {
            t = t.min(1.0 / den);
        }
    }
    t
}

/// Physical Bloch vectors, including points on the boundary.
fn state() -> impl Strategy<Value = BlochX> {
    (prop::array::uniform5(-1.0f64..=1.0), 0.0f64..=1.0).prop_map(|(p, u)| {
        let t = physical_scale(p) * (1.0 - 1e-12) * u.sqrt();
        BlochX::from_array(p.map(|x| x * t)).unwrap()
    })
}

fn direction() -> impl Strategy<Value = MeasurementPoint> {
    (-1.0f64..=1.0, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(z3, phi)| MeasurementPoint::from_angles(z3, phi))
}

fn quaternion() -> impl Strategy<Value = (f64, [f64; 3])> {
    prop::array::uniform4(-1.0f64..=1.0)
        .prop_filter("nonzero", |q| q.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|q| {
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            (q[0] / n, [q[1] / n, q[2] / n, q[3] / n])
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn bloch_matrix_round_trip(p in state()) {
        let (back, phases) = matrix_to_bloch(&bloch_to_matrix(&p)).unwrap();
        prop_assert!(phases.is_trivial());
        for (a, b) in back.to_array().iter().zip(p.to_array()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn physicality_matches_spectrum(p in prop::array::uniform5(-1.0f64..=1.0)) {
        let min = eigenvalues_unsorted_raw(p);
        prop_assume!(min.abs() > 1e-9);
        prop_assert_eq!(BlochX::is_physical(p), min > 0.0);
    }

    #[test]
    fn correlations_are_ordered(p in state()) {
        let r = discord(&p);
        let mi = mutual_information(&p);
        prop_assert!(mi >= -1e-12);
        prop_assert!(r.discord >= -1e-9);
        prop_assert!(r.classical_correlation >= -1e-9);
        prop_assert!(r.discord <= mi + 1e-9);
        prop_assert!((r.discord + r.classical_correlation - mi).abs() < 1e-12);
    }

    #[test]
    fn local_sign_flips_preserve_discord(p in state()) {
        let [r, s, c1, c2, c3] = p.to_array();
        let q = discord(&p).discord;
        // σz on one party flips c1 and c2; σx on both flips r and s
        for flipped in [[r, s, -c1, -c2, c3], [-r, -s, c1, c2, c3]] {
            let f = discord(&BlochX::from_array(flipped).unwrap()).discord;
            prop_assert!((f - q).abs() < 1e-12, "{} vs {}", f, q);
        }
    }

    #[test]
    fn conjugated_paulis_are_rotations((t, y) in quaternion()) {
        let m = conjugate_paulis(t, y).unwrap();
        let gram = m * m.transpose();
        prop_assert!((gram - nalgebra::Matrix3::identity()).abs().max() < 1e-12);
        prop_assert!((m.determinant() - 1.0).abs() < 1e-12);
        let z = MeasurementPoint::from_quaternion(t, y).unwrap().z();
        prop_assert!((z[0] * z[0] + z[1] * z[1] + z[2] * z[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_ensemble_is_normalized(p in state(), m in direction()) {
        let e = conditional_ensemble(&p, &m);
        prop_assert!((e.p0 + e.p1 - 1.0).abs() < 1e-15);
        for (pk, (a, b)) in [(e.p0, e.eig0), (e.p1, e.eig1)] {
            prop_assert!((0.0..=1.0).contains(&pk));
            prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
            prop_assert!((a + b - 1.0).abs() < 1e-12);
        }
        let h = conditional_entropy(&p, &m);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&h));
    }

    #[test]
    fn g_is_increasing_in_theta(p in state(), z3 in 0.0f64..=1.0, u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
        let top = theta_max_check(&p, z3);
        let lo = (p.c3() * z3).powi(2) + p.c1().abs().min(p.c2().abs()).powi(2) * (1.0 - z3 * z3);
        let (a, b) = (u.min(v), u.max(v));
        let (ta, tb) = (lo + a * (top - lo), lo + b * (top - lo));
        prop_assert!(g_function(&p, ta, z3) <= g_function(&p, tb, z3) + 1e-12);
    }

    #[test]
    fn g_matches_conditional_entropy(p in state(), m in direction()) {
        let [z1, z2, z3] = m.z();
        let theta = (p.c1() * z1).powi(2) + (p.c2() * z2).powi(2) + (p.c3() * z3).powi(2);
        prop_assert!(theta <= theta_max_check(&p, z3) + 1e-12);
        let g = g_function(&p, theta, z3);
        prop_assert!((g - (1.0 - conditional_entropy(&p, &m))).abs() < 1e-12);
    }

    #[test]
    fn entropy_has_quarter_disk_symmetry(p in state(), m in direction()) {
        let [z1, z2, z3] = m.z();
        let h = conditional_entropy(&p, &m);
        for z in [[-z1, z2, z3], [z1, -z2, z3], [-z1, -z2, -z3]] {
            let other = conditional_entropy(&p, &MeasurementPoint::new(z[0], z[1], z[2]).unwrap());
            prop_assert!((other - h).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_vanishes_at_zero(p in state()) {
        let ctx = FContext::new(p);
        prop_assert_eq!(f_derivative(&ctx, 0.0), 0.0);
        prop_assert!(f_derivative(&ctx, 1e-7).abs() < 1e-4);
    }

    #[test]
    fn concurrence_matches_wootters(p in state(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let base = bloch_to_matrix(&p);
        let d = base.diag();
        let anti = [
            base.outer_corner() * C64::from_polar(1.0, a),
            base.inner_corner() * C64::from_polar(1.0, b),
        ];
        let m = XDensityMatrix::from_parts(d, anti).unwrap();
        let rho = m.to_dense();
        let root = psd_sqrt(&rho);
        let r = root * spin_flip(&rho) * root;
        let mut mu = hermitian_eigenvalues(&((r + r.adjoint()) * c(0.5, 0.0))).map(|l| l.max(0.0).sqrt());
        mu.sort_by(|x, y| y.total_cmp(x));
        let wootters = (mu[0] - mu[1] - mu[2] - mu[3]).max(0.0);
        let closed = concurrence(&m).concurrence;
        prop_assert!((closed - wootters).abs() < 1e-6, "{} vs {}", closed, wootters);
        prop_assert!((closed - concurrence(&base).concurrence).abs() < 1e-14);
    }
}

fn eigenvalues_unsorted_raw(p: [f64; 5]) -> f64 {
    // physicality is checked without constructing a BlochX
    let [r, s, c1, c2, c3] = p;
    let inner = (r - s).hypot(c1 + c2);
    let outer = (r + s).hypot(c1 - c2);
    (0.25 * (1.0 - c3 - inner)).min(0.25 * (1.0 + c3 - outer))
}

#[test]
fn closed_form_spectrum_agrees_with_raw_formula() {
    let mut g = common::rng(70);
    for _ in 0..1000 {
        let p = common::random_physical(&mut g);
        let vals = eigenvalues_unsorted(&common::bloch(p));
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((min - eigenvalues_unsorted_raw(p)).abs() < 1e-15);
    }
}

#[test]
fn rank_two_purification_reproduces_state() {
    use common::RankTwoKind::*;
    let mut g = common::rng(71);
    for i in 0..300 {
        let kind = [Outer, Inner, Mixed][i % 3];
        let m = common::sample_rank_two(&mut g, kind, i % 2 == 0);
        let d = rank_two_classify(&m).unwrap();
        let norm: f64 = d.purification.iter().map(|x| x.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!((reduce_to_ab(&d) - m.to_dense()).norm() < 1e-12);
        let bc_trace = d.rho_bc.trace();
        assert!((bc_trace.re - 1.0).abs() < 1e-12 && bc_trace.im.abs() < 1e-12);
    }
}

#[test]
fn complementary_entanglement_equals_one_minus_swapped_maximum() {
    use common::RankTwoKind::*;
    let mut g = common::rng(72);
    for i in 0..300 {
        let kind = [Outer, Inner, Mixed][i % 3];
        let m = common::sample_rank_two(&mut g, kind, i % 2 == 1);
        let rep = koashi_winter(&m).unwrap();
        let (p, _) = matrix_to_bloch(&m).unwrap();
        let f_max = global_max(&FContext::new(p.swap_parties())).f_max;
        assert!((rep.complementary.eof - (1.0 - f_max)).abs() < 1e-8);
        assert!(rep.residual < 1e-8);
    }
}
