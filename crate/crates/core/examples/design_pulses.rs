//! Solves for pulse parameters from scratch and from the catalog.

use std::f64::consts::{FRAC_PI_2, PI};

use decoupling_pulses::designer::{refine, solve, DesignProblem};
use decoupling_pulses::pulse::{catalog, Family};

fn main() -> decoupling_pulses::Result<()> {
    // CORPSE-type π/2 pulse from a rough guess
    let family = Family::from_name("composite3-asym").expect("family");
    let s = solve(&DesignProblem::new(family, FRAC_PI_2, vec![6.0, 0.05, 0.45]))?;
    println!(
        "composite3-asym pi/2  {:.6?}  ({} iterations)",
        s.parameters, s.iterations
    );

    // second-order symmetric harmonic π pulse
    let family = Family::from_name("harmonic40").expect("family");
    let s = solve(&DesignProblem::new(family, PI, vec![10.0, 7.0, 2.0]))?;
    println!(
        "harmonic40 pi         {:.6?}  residual {:.1e}",
        s.parameters, s.residual_norm
    );

    println!();
    println!("{:<16} {:>12} {:>12}", "pulse", "max shift", "residual");
    for entry in catalog() {
        let s = refine(&entry)?;
        let shift = s
            .parameters
            .iter()
            .zip(&entry.parameters)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        println!("{:<16} {shift:>12.2e} {:>12.2e}", entry.name, s.residual_norm);
    }
    Ok(())
}
