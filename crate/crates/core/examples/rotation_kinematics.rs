//! Round trip between a control field and its axis-angle rotation path.
//!
//! A slowly precessing axis with a growing angle is turned into `v(t)`,
//! integrated back, and compared with the original path.

use decoupling_pulses::rotation::{
    axis_angle_from_v, propagator, rotation_matrix, v_along, AxisAngle, FnField, FnTrajectory, Trajectory,
};
use nalgebra::Vector3;

fn main() -> decoupling_pulses::Result<()> {
    let path = FnTrajectory(|t: f64| {
        let axis = Vector3::new(0.3 * (2.0 * t).sin(), 1.0, 0.2 * t).normalize();
        AxisAngle::new(axis, std::f64::consts::PI * t * t).expect("unit axis")
    });
    let field = FnField(|t: f64| v_along(&path, t, 1e-5));
    let sampled = axis_angle_from_v(&field, 64)?;

    let mut worst = 0.0_f64;
    for (t, got) in sampled.times.iter().zip(&sampled.samples) {
        let want = path.at(*t);
        let gap = (rotation_matrix(got) - rotation_matrix(&want)).amax();
        worst = worst.max(gap);
    }
    let last = sampled.final_axis_angle();
    println!("final angle {:.6} about {:.4?}", last.angle(), last.axis().as_slice());
    println!("largest rotation-matrix gap along the path {worst:.1e}");
    println!("unitarity defect of P(1) {:.1e}", propagator(&last).unitarity_defect());
    Ok(())
}
