//! The simulator against brute-force propagators.

mod common;

use decoupling_pulses::designer::refine;
use decoupling_pulses::linalg::CMatrix;
use decoupling_pulses::pulse::{catalog, lookup, PulseKind};
use decoupling_pulses::qsim::{
    default_grid, distance, evolve, random_bath, scaling_exponent, target, EvolveOptions, RandomBathConfig,
};
use num_complex::Complex64;

#[test]
fn piecewise_pulses_match_segment_exponentials() {
    let bath = random_bath(&RandomBathConfig::z_dynamic(7)).unwrap();
    for e in catalog()
        .into_iter()
        .filter(|e| e.shape.kind() == PulseKind::PiecewiseConstant)
    {
        for tau in [0.01, 0.1] {
            let ev = evolve(&e.shape, &bath, tau, &EvolveOptions::default()).unwrap();
            let oracle = common::segment_product(&e.shape, &bath, tau);
            let gap = distance(&ev.unitary, &oracle).unwrap();
            assert!(gap < 1e-12, "{} at {tau}: {gap:e}", e.name);
            let d = distance(&oracle, &target(&e.shape, &bath, tau).unwrap()).unwrap();
            assert!(
                (d - ev.pulse_error).abs() <= 0.01 * d,
                "{}: {d:e} vs {:e}",
                e.name,
                ev.pulse_error
            );
        }
    }
}

#[test]
fn corpse_matches_a_dense_step_reference() {
    let bath = random_bath(&RandomBathConfig::z_dynamic(7)).unwrap();
    let e = lookup("CORPSE-Pi").unwrap();
    // τ_p λ = 0.01
    let tau = 0.01;
    let ev = evolve(&e.shape, &bath, tau, &EvolveOptions::default()).unwrap();
    let dense = common::aligned_midpoint(&e.shape, &bath, tau, 16 * ev.steps);
    let d = distance(&dense, &target(&e.shape, &bath, tau).unwrap()).unwrap();
    assert!((d - ev.pulse_error).abs() <= 0.01 * d, "{d:e} vs {:e}", ev.pulse_error);
}

/// Richardson extrapolation of two uniform midpoint runs.
fn extrapolated_midpoint(
    e: &decoupling_pulses::pulse::CatalogEntry,
    bath: &decoupling_pulses::qsim::BathSpec,
    tau: f64,
) -> CMatrix {
    let coarse = common::naive_midpoint(&e.shape, bath, tau, 4096);
    let fine = common::naive_midpoint(&e.shape, bath, tau, 8192);
    (fine * Complex64::from(4.0) - coarse) / Complex64::from(3.0)
}

#[test]
fn continuous_pulses_match_a_brute_force_midpoint() {
    let bath = random_bath(&RandomBathConfig::z_dynamic(7)).unwrap();
    for name in ["CONT-SYM-Pi", "CONT-ASYM-Pi2", "CONT-SYM2ND-Pi"] {
        let e = lookup(name).unwrap();
        let tau = 0.05;
        let ev = evolve(&e.shape, &bath, tau, &EvolveOptions::default()).unwrap();
        let oracle = extrapolated_midpoint(&e, &bath, tau);
        let d = distance(&oracle, &target(&e.shape, &bath, tau).unwrap()).unwrap();
        assert!(
            (d - ev.pulse_error).abs() <= 0.01 * d,
            "{name}: {d:e} vs {:e}",
            ev.pulse_error
        );
    }
}

#[test]
fn slopes_are_stable_across_bath_seeds() {
    let grid = default_grid();
    let options = EvolveOptions::default();
    for name in ["CORPSE-Pi", "SYM-Pi2", "SYM2ND-Pi", "CONT-SYM2ND-Pi2"] {
        let pulse = refine(&lookup(name).unwrap()).unwrap().pulse;
        let slopes: Vec<f64> = (1..=4)
            .map(|seed| {
                let bath = random_bath(&RandomBathConfig::z_dynamic(seed)).unwrap();
                scaling_exponent(&pulse, &bath, &grid, &options).unwrap().slope
            })
            .collect();
        let lo = slopes.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!(hi - lo <= 0.15, "{name}: {slopes:?}");
    }
}
