//! Correction integrals of every catalog pulse with its quoted parameters.

use decoupling_pulses::corrections::eta_specific;
use decoupling_pulses::pulse::catalog;

fn main() -> decoupling_pulses::Result<()> {
    println!(
        "{:<16} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "pulse", "order", "eta11", "eta12", "eta21", "eta22", "eta23"
    );
    for entry in catalog() {
        let eta = eta_specific(&entry.shape)?;
        let [a, b, c, d, e] = eta.to_array();
        println!(
            "{:<16} {:>6} {a:>10.2e} {b:>10.2e} {c:>10.2e} {d:>10.2e} {e:>10.2e}",
            entry.name,
            entry.order.name()
        );
    }
    Ok(())
}
