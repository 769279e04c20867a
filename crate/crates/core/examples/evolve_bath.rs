//! Exact spin-plus-bath evolution under a CORPSE π pulse.
//!
//! The pulse error against the ideal rotation times free bath evolution
//! drops by about a factor hundred per decade of pulse duration.

use decoupling_pulses::pulse::{lookup, reference_pulse};
use decoupling_pulses::qsim::{evolve, random_bath, EvolveOptions, RandomBathConfig};

fn main() -> decoupling_pulses::Result<()> {
    let bath = random_bath(&RandomBathConfig::z_dynamic(7))?;
    println!(
        "bath: {} spins, omega_b {:.3}, lambda {:?}",
        bath.spins(),
        bath.omega_b(),
        bath.lambda()
    );
    let pulses = [
        ("CONST-Pi", reference_pulse("CONST-Pi").expect("reference pulse")),
        ("CORPSE-Pi", lookup("CORPSE-Pi").expect("catalog entry").shape),
    ];
    let options = EvolveOptions::default();
    for (name, pulse) in &pulses {
        for tau in [0.1, 0.01, 0.001] {
            let ev = evolve(pulse, &bath, tau, &options)?;
            println!(
                "{name:<10} tau_p {tau:<6} error {:.3e}  ({} {} steps)",
                ev.pulse_error,
                ev.scheme.name(),
                ev.steps
            );
        }
    }
    Ok(())
}
