//! Peak control amplitude of the continuous catalog pulses.

use decoupling_pulses::designer::max_amplitude;
use decoupling_pulses::pulse::{catalog, PulseKind};

fn main() {
    for entry in catalog()
        .into_iter()
        .filter(|e| e.shape.kind() == PulseKind::HarmonicSeries)
    {
        let m = max_amplitude(&entry.shape);
        println!("{:<16} |v| max {:>10.6} at t = {:.4}", entry.name, m.value, m.location);
    }
}
