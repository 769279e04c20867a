//! Property tests over random pulses, rotations and baths.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use decoupling_pulses::corrections::{eta_closed_form, eta_quadrature, eta_specific, general_residuals};
use decoupling_pulses::linalg::{expm_hermitian, pauli, unitarity_defect, CMatrix};
use decoupling_pulses::pulse::{Family, HarmonicAnsatz, PulseShape, Segment};
use decoupling_pulses::qsim::{distance, propagate, random_bath, RandomBathConfig, Scheme};
use decoupling_pulses::rotation::{axis_angle_from_v, propagator, rotation_matrix, AxisAngle, Trajectory};
use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use proptest::prelude::*;

fn axis() -> impl Strategy<Value = Vector3<f64>> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("away from zero", |(x, y, z)| x * x + y * y + z * z > 1e-2)
        .prop_map(|(x, y, z)| Vector3::new(x, y, z).normalize())
}

/// Segments with ordered switching instants and amplitudes in `[-15, 15]`.
fn segments(max: usize) -> impl Strategy<Value = Vec<Segment>> {
    prop::collection::vec((0.02..1.0f64, -15.0..15.0f64), 1..=max).prop_map(|raw| {
        let total: f64 = raw.iter().map(|(w, _)| w).sum();
        let mut end = 0.0;
        let n = raw.len();
        raw.into_iter()
            .enumerate()
            .map(|(k, (w, a))| {
                end = if k + 1 == n { 1.0 } else { end + w / total };
                Segment::new(end, a)
            })
            .collect()
    })
}

fn piecewise() -> impl Strategy<Value = PulseShape> {
    (segments(6), prop::sample::select(vec![PI, FRAC_PI_2, 1.0]))
        .prop_map(|(s, theta)| PulseShape::piecewise(theta, s).unwrap())
}

fn symmetric_harmonic() -> impl Strategy<Value = (f64, PulseShape)> {
    let theta = prop::sample::select(vec![PI, FRAC_PI_2]);
    let first = (-8.0..8.0f64).prop_map(|a| (HarmonicAnsatz::SymmetricFirstOrder, vec![a]));
    let second = prop::collection::vec(-10.0..10.0f64, 3).prop_map(|v| (HarmonicAnsatz::SymmetricSecondOrder, v));
    (theta, prop_oneof![first, second])
        .prop_map(|(theta, (ansatz, values))| (theta, PulseShape::harmonic(theta, ansatz, values).unwrap()))
}

fn hermitian(dim: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(-1.0..1.0f64, 2 * dim * dim).prop_map(move |v| {
        let m = CMatrix::from_fn(dim, dim, |i, j| {
            Complex64::new(v[i * dim + j], v[dim * dim + i * dim + j])
        });
        (&m + m.adjoint()) * Complex64::from(0.5)
    })
}

fn unitary(dim: usize) -> impl Strategy<Value = CMatrix> {
    hermitian(dim).prop_map(|h| expm_hermitian(&h, 3.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_matrix_is_orthogonal_and_conjugates(a in axis(), angle in -20.0..20.0f64) {
        let aa = AxisAngle::new(a, angle).unwrap();
        let d = rotation_matrix(&aa);
        prop_assert!((d.transpose() * d - Matrix3::identity()).amax() < 1e-12);
        prop_assert!((d.determinant() - 1.0).abs() < 1e-12);
        let p = propagator(&aa).0;
        let s = pauli();
        for j in 0..3 {
            let lhs = p.adjoint() * s[j] * p;
            let rhs = (0..3).fold(Matrix2::zeros(), |acc, i| acc + s[i] * Complex64::from(d[(i, j)]));
            prop_assert!((lhs - rhs).camax() < 1e-10);
        }
    }

    #[test]
    fn symmetric_parametrisations_are_symmetric(
        a in 1.0..20.0f64,
        b in 1.0..20.0f64,
        t in prop::collection::vec(0.01..0.49f64, 2),
    ) {
        let (t1, t2) = (t[0].min(t[1]), t[0].max(t[1]) + 1e-3);
        let p3 = Family::from_name("composite3-sym").unwrap().build(PI, &[a, t1]).unwrap();
        prop_assert!(p3.is_symmetric(1001, 1e-12));
        let p5 = Family::from_name("composite5-sym").unwrap().build(PI, &[a, b, t1, t2.min(0.499)]).unwrap();
        prop_assert!(p5.is_symmetric(1001, 1e-12));
    }

    #[test]
    fn symmetric_pulses_obey_the_reduced_identities((theta, p) in symmetric_harmonic()) {
        prop_assert!(p.angle_mismatch() < 1e-12);
        let eta = eta_specific(&p).unwrap();
        if theta == PI {
            prop_assert!(eta.eta12.abs() < 1e-10, "{eta:?}");
            prop_assert!((eta.eta21 - eta.eta11 / 2.0).abs() < 1e-10, "{eta:?}");
        } else {
            prop_assert!((eta.eta12 - eta.eta11).abs() < 1e-10, "{eta:?}");
            prop_assert!((eta.eta22 - eta.eta11 + eta.eta21).abs() < 1e-10, "{eta:?}");
        }
    }

    #[test]
    fn closed_form_matches_quadrature(p in piecewise()) {
        let exact = eta_closed_form(&p).unwrap();
        let quad = eta_quadrature(&p, 64);
        prop_assert!(exact.max_gap(&quad) < 1e-10, "{exact:?} vs {quad:?}");
    }

    #[test]
    fn general_system_reduces_to_the_specific_one(p in piecewise()) {
        let eta = eta_specific(&p).unwrap();
        let g = general_residuals(&p);
        prop_assert!((g.first_order[(0, 2)] + eta.eta11).abs() < 1e-9);
        prop_assert!((g.first_order[(2, 2)] - eta.eta12).abs() < 1e-9);
        prop_assert!((g.second_order_a[(0, 2)] + eta.eta21).abs() < 1e-9);
        prop_assert!((g.second_order_a[(2, 2)] - eta.eta22).abs() < 1e-9);
        prop_assert!((g.second_order_b[1][5] - eta.eta23).abs() < 1e-9);
        // a ŷ rotation never mixes y with x or z
        prop_assert!(g.first_order[(1, 2)].abs() < 1e-12 && g.first_order[(2, 1)].abs() < 1e-12);
    }

    #[test]
    fn trajectory_round_trip(p in piecewise()) {
        let sampled = axis_angle_from_v(&p, 32).unwrap();
        for (t, got) in sampled.times.iter().zip(&sampled.samples) {
            let gap = (rotation_matrix(got) - rotation_matrix(&p.at(*t))).amax();
            prop_assert!(gap < 1e-8, "t = {t}: {gap:e}");
        }
    }

    #[test]
    fn distance_is_a_phase_invariant_metric(
        u in unitary(4),
        v in unitary(4),
        w in unitary(4),
        phase in -PI..PI,
    ) {
        let d = distance(&u, &v).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
        prop_assert!((d - distance(&v, &u).unwrap()).abs() < 1e-12);
        let shifted = &v * Complex64::from_polar(1.0, phase);
        prop_assert!((d - distance(&u, &shifted).unwrap()).abs() < 1e-12);
        prop_assert!(distance(&u, &u).unwrap() < 1e-7);
        prop_assert!(d <= distance(&u, &w).unwrap() + distance(&w, &v).unwrap() + 1e-12);
    }

    #[test]
    fn propagators_are_unitary(
        p in piecewise(),
        seed in 0u64..1000,
        tau in 1e-3..0.3f64,
        magnus in any::<bool>(),
    ) {
        let bath = random_bath(&RandomBathConfig::z_dynamic(seed)).unwrap();
        let scheme = if magnus { Scheme::Magnus4 } else { Scheme::Midpoint };
        let u = propagate(&p, &bath, tau, scheme, 32).unwrap();
        prop_assert!(unitarity_defect(&u) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cumulative_eta23_matches_a_double_integral(p in piecewise()) {
        let fast = eta_specific(&p).unwrap().eta23;
        let slow = common::sgn_double_integral(&p, 6, 12, |a, b| {
            (p.accumulated_angle(a).unwrap() - p.accumulated_angle(b).unwrap()).sin()
        });
        prop_assert!((fast - slow).abs() < 1e-8, "{fast} vs {slow}");
    }
}
