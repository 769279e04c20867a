//! Writes a catalog pulse to the JSON pulse format and reads it back.

use decoupling_pulses::cli::PulseFile;
use decoupling_pulses::corrections::eta_specific;
use decoupling_pulses::pulse::lookup;

fn main() -> decoupling_pulses::Result<()> {
    let entry = lookup("SYM2ND-Pi2").expect("catalog entry");
    let mut file = PulseFile::from_pulse(&entry.shape);
    file.name = Some(entry.name.to_string());
    let path = std::env::temp_dir().join("sym2nd-pi2.json");
    file.write(&path)?;
    println!("{}", std::fs::read_to_string(&path)?);

    let back = PulseFile::read(&path)?.to_pulse()?;
    let gap = eta_specific(&back)?.max_gap(&eta_specific(&entry.shape)?);
    println!("residual gap after the round trip {gap:.1e}");
    Ok(())
}
