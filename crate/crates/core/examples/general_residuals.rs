//! The 39 general first- and second-order integrals for a catalog pulse and
//! for a pulse whose axis tilts out of the x-y plane.

use decoupling_pulses::corrections::{general_residuals, GeneralResiduals};
use decoupling_pulses::pulse::lookup;
use decoupling_pulses::rotation::{AxisAngle, FnTrajectory};
use nalgebra::Vector3;

fn summary(label: &str, r: &GeneralResiduals) {
    println!("{label}");
    println!("  first order  max {:.2e}", r.first_order.amax());
    println!("  second a     max {:.2e}", r.second_order_a.amax());
    let b = r.second_order_b.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    println!("  second b     max {b:.2e}");
    println!(
        "  second c     {:.2e}  {:.2e}  {:.2e}",
        r.second_order_c[0], r.second_order_c[1], r.second_order_c[2]
    );
}

fn main() {
    let corpse = lookup("CORPSE-Pi").expect("catalog entry").shape;
    let r = general_residuals(&corpse);
    summary("CORPSE-Pi (z coupling cancelled, x and y not)", &r);
    let z = r.first_order.column(2);
    println!("  first order z column {:.2e}  {:.2e}  {:.2e}", z[0], z[1], z[2]);

    let tilted = FnTrajectory(|t: f64| {
        let axis = Vector3::new(0.0, (0.4 * t).cos(), (0.4 * t).sin());
        AxisAngle::new(axis, std::f64::consts::PI * t).expect("unit axis")
    });
    summary("tilting axis", &general_residuals(&tilted));
}
