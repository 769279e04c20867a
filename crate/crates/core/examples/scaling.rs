//! Error scaling of every catalog pulse against a seeded two-spin bath.
//!
//! Catalog parameters are polished with the designer first; the fitted
//! exponent is `1` for the rectangular pulse, `2` for first-order and `3`
//! for second-order pulses.

use decoupling_pulses::designer::refine;
use decoupling_pulses::pulse::{catalog, reference_pulse};
use decoupling_pulses::qsim::{default_grid, random_bath, scaling_exponent, EvolveOptions, RandomBathConfig};

fn main() -> decoupling_pulses::Result<()> {
    let grid = default_grid();
    let options = EvolveOptions::default();
    for (label, config) in [
        ("dynamic", RandomBathConfig::z_dynamic(7)),
        ("static", RandomBathConfig::z_static(7)),
    ] {
        let bath = random_bath(&config)?;
        println!("{label} bath");
        let constant = reference_pulse("CONST-Pi").expect("reference pulse");
        let report = scaling_exponent(&constant, &bath, &grid, &options)?;
        println!("  {:<16} slope {:.3}", "CONST-Pi", report.slope);
        for entry in catalog() {
            let pulse = refine(&entry)?.pulse;
            let report = scaling_exponent(&pulse, &bath, &grid, &options)?;
            println!(
                "  {:<16} slope {:.3}  fit residual {:.1e}  steps {}",
                entry.name,
                report.slope,
                report.fit_residual,
                report.points.iter().map(|p| p.steps).max().unwrap_or(0)
            );
        }
    }
    Ok(())
}
