//! Axis-angle kinematics of a spin-1/2 pulse.
//!
//! The pulse propagator is `P = exp(−i ψ/2 σ·â) = cos(ψ/2) − i sin(ψ/2) σ·â`.
//! Conjugating the Pauli vector with it rotates the coupling:
//! `P† σ_j P = Σ_i n_{ij} σ_i` where `n = D_â(−ψ)` is
//! [`rotation_matrix`].

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::pauli;
use crate::pulse::PulseShape;

const AXIS_TOLERANCE: f64 = 1e-12;

/// Unit rotation axis and rotation angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    pub(crate) axis: Vector3<f64>,
    pub(crate) angle: f64,
}

impl AxisAngle {
    pub fn new(axis: Vector3<f64>, angle: f64) -> Result<Self> {
        let norm = axis.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > AXIS_TOLERANCE {
            return Err(Error::NonUnitAxis(norm));
        }
        Ok(Self { axis, angle })
    }

    /// Normalises `axis` first. Fails only for a zero or non-finite axis.
    pub fn normalized(axis: Vector3<f64>, angle: f64) -> Result<Self> {
        let norm = axis.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NonUnitAxis(norm));
        }
        Ok(Self {
            axis: axis / norm,
            angle,
        })
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

/// 2×2 SU(2) propagator of the spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinPropagator(pub Matrix2<Complex64>);

impl SpinPropagator {
    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn compose(&self, later: &SpinPropagator) -> SpinPropagator {
        SpinPropagator(later.0 * self.0)
    }

    pub fn adjoint(&self) -> SpinPropagator {
        SpinPropagator(self.0.adjoint())
    }

    /// Largest entry of `|U†U − 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.0.adjoint() * self.0 - Matrix2::identity()).camax()
    }

    /// Recovers `(â, ψ)` from `P = cos(ψ/2) − i sin(ψ/2) σ·â`.
    ///
    /// The decomposition is ambiguous up to `(â, ψ) ↔ (−â, −ψ)` and
    /// `ψ → ψ + 4πk`. With `previous` given, the branch closest to it is
    /// taken; where `sin(ψ/2)` vanishes the previous axis is kept.
    pub fn to_axis_angle(&self, previous: Option<&AxisAngle>) -> AxisAngle {
        let p = &self.0;
        let alpha = 0.5 * (p[(0, 0)].re + p[(1, 1)].re);
        let beta = Vector3::new(
            -0.5 * (p[(0, 1)].im + p[(1, 0)].im),
            0.5 * (p[(1, 0)].re - p[(0, 1)].re),
            0.5 * (p[(1, 1)].im - p[(0, 0)].im),
        );
        let sin_half = beta.norm();
        let fallback_axis = previous.map(|a| a.axis).unwrap_or_else(Vector3::z);

        let (axis, half) = if sin_half < 1e-12 {
            (fallback_axis, if alpha >= 0.0 { 0.0 } else { std::f64::consts::PI })
        } else {
            let axis = beta / sin_half;
            let half = sin_half.atan2(alpha);
            if axis.dot(&fallback_axis) < 0.0 && previous.is_some() {
                (-axis, -half)
            } else {
                (axis, half)
            }
        };
        let mut angle = 2.0 * half;
        if let Some(prev) = previous {
            let period = 4.0 * std::f64::consts::PI;
            angle += period * ((prev.angle - angle) / period).round();
        }
        AxisAngle { axis, angle }
    }
}

/// `P = cos(ψ/2) 1 − i sin(ψ/2) σ·â`.
pub fn propagator(aa: &AxisAngle) -> SpinPropagator {
    let [sx, sy, sz] = pauli();
    let (s, c) = (0.5 * aa.angle).sin_cos();
    let a = aa.axis;
    let sigma_a = sx * Complex64::from(a.x) + sy * Complex64::from(a.y) + sz * Complex64::from(a.z);
    SpinPropagator(Matrix2::identity() * Complex64::from(c) - sigma_a * Complex64::new(0.0, s))
}

/// The toggling-frame rotation matrix `D_â(−ψ)`; entry `(i, j)` is
/// `n_{i,j}`, the `σ_i` component of `P† σ_j P`.
pub fn rotation_matrix(aa: &AxisAngle) -> Matrix3<f64> {
    let a = aa.axis;
    let (s, c) = aa.angle.sin_cos();
    let k = 1.0 - c;
    Matrix3::new(
        c + k * a.x * a.x,
        a.z * s + k * a.x * a.y,
        -a.y * s + k * a.x * a.z,
        -a.z * s + k * a.x * a.y,
        c + k * a.y * a.y,
        a.x * s + k * a.y * a.z,
        a.y * s + k * a.x * a.z,
        -a.x * s + k * a.y * a.z,
        c + k * a.z * a.z,
    )
}

/// Pointwise control field of a rotation path:
/// `2v = ψ′ â + â′ sin ψ − (1 − cos ψ)(â′ × â)`.
pub fn v_from_axis_angle(aa: &AxisAngle, axis_rate: &Vector3<f64>, angle_rate: f64) -> Vector3<f64> {
    let (s, c) = aa.angle.sin_cos();
    0.5 * (aa.axis * angle_rate + axis_rate * s - axis_rate.cross(&aa.axis) * (1.0 - c))
}

/// A rotation path `t ↦ (â(t), ψ(t))` on `[0, 1]`.
pub trait Trajectory: Sync {
    fn at(&self, t: f64) -> AxisAngle;

    /// Interior points where the path is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl Trajectory for PulseShape {
    fn at(&self, t: f64) -> AxisAngle {
        AxisAngle {
            axis: self.axis(),
            angle: self.angle_at(t),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        PulseShape::breakpoints(self)
    }
}

/// Adapts a closure into a [`Trajectory`].
pub struct FnTrajectory<F>(pub F);

impl<F> Trajectory for FnTrajectory<F>
where
    F: Fn(f64) -> AxisAngle + Sync,
{
    fn at(&self, t: f64) -> AxisAngle {
        (self.0)(t)
    }
}

/// `v(t)` of a trajectory by central differences of `â` and `ψ` (step `h`).
/// Axes on either side are sign-aligned before differencing.
pub fn v_along<T: Trajectory + ?Sized>(traj: &T, t: f64, h: f64) -> Vector3<f64> {
    let (lo, hi) = ((t - h).max(0.0), (t + h).min(1.0));
    let (a, b, mid) = (traj.at(lo), traj.at(hi), traj.at(t));
    let dt = hi - lo;
    let axis_rate = (b.axis - a.axis) / dt;
    let angle_rate = (b.angle - a.angle) / dt;
    v_from_axis_angle(&mid, &axis_rate, angle_rate)
}

/// A time-dependent control vector `v(t)` on `[0, 1]`.
pub trait ControlField {
    fn field(&self, t: f64) -> Vector3<f64>;

    /// Interior discontinuities; the integrator never steps across them.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl ControlField for PulseShape {
    fn field(&self, t: f64) -> Vector3<f64> {
        self.axis() * self.amplitude_at(t)
    }

    fn breakpoints(&self) -> Vec<f64> {
        PulseShape::breakpoints(self)
    }
}

/// Adapts a closure into a [`ControlField`].
pub struct FnField<F>(pub F);

impl<F: Fn(f64) -> Vector3<f64>> ControlField for FnField<F> {
    fn field(&self, t: f64) -> Vector3<f64> {
        (self.0)(t)
    }
}

/// Samples of the rotation produced by a control field, on a uniform grid
/// (uniform inside each breakpoint interval).
#[derive(Debug, Clone)]
pub struct SampledTrajectory {
    pub times: Vec<f64>,
    pub propagators: Vec<SpinPropagator>,
    pub samples: Vec<AxisAngle>,
    /// Fine steps per requested step used for the converged result.
    pub refinement: usize,
}

impl SampledTrajectory {
    pub fn final_axis_angle(&self) -> AxisAngle {
        *self.samples.last().expect("non-empty trajectory")
    }
}

/// Grid on `[0, 1]` containing every breakpoint, about `steps` cells per unit.
pub(crate) fn step_grid(breaks: &[f64], steps: usize) -> Vec<f64> {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|b| *b > 0.0 && *b < 1.0).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut bounds = vec![0.0];
    bounds.extend(cuts);
    bounds.push(1.0);
    let mut grid = vec![0.0];
    for w in bounds.windows(2) {
        let n = ((w[1] - w[0]) * steps as f64).ceil().max(1.0) as usize;
        for k in 1..=n {
            grid.push(if k == n {
                w[1]
            } else {
                w[0] + (w[1] - w[0]) * k as f64 / n as f64
            });
        }
    }
    grid
}

/// Exact exponential of `−i dt σ·v` for a constant `v`.
fn field_step(v: &Vector3<f64>, dt: f64) -> SpinPropagator {
    let norm = v.norm();
    if norm == 0.0 {
        return SpinPropagator::identity();
    }
    let aa = AxisAngle {
        axis: v / norm,
        angle: 2.0 * norm * dt,
    };
    propagator(&aa)
}

/// Propagators on `grid`, each coarse interval split into `sub` midpoint
/// exponentials.
fn integrate_field<F: ControlField + ?Sized>(field: &F, grid: &[f64], sub: usize) -> Vec<SpinPropagator> {
    let mut out = Vec::with_capacity(grid.len());
    let mut p = SpinPropagator::identity();
    out.push(p);
    for w in grid.windows(2) {
        let h = (w[1] - w[0]) / sub as f64;
        for k in 0..sub {
            let mid = w[0] + (k as f64 + 0.5) * h;
            p = p.compose(&field_step(&field.field(mid), h));
        }
        out.push(p);
    }
    out
}

/// Integrates `i ∂P = (σ·v) P` by midpoint exponentials and extracts the
/// axis-angle path on a grid of about `steps` intervals. Each interval is
/// halved until two successive results differ by less than `1e-10` at
/// every grid point.
pub fn axis_angle_from_v<F: ControlField + ?Sized>(field: &F, steps: usize) -> Result<SampledTrajectory> {
    const TOL: f64 = 1e-10;
    const MAX_REFINEMENT: usize = 1 << 14;
    if steps == 0 {
        return Err(Error::InvalidGrid("at least one step is required".into()));
    }
    let times = step_grid(&field.breakpoints(), steps);
    let mut sub = 1;
    let mut current = integrate_field(field, &times, sub);
    loop {
        sub *= 2;
        let finer = integrate_field(field, &times, sub);
        let gap = current
            .iter()
            .zip(&finer)
            .map(|(a, b)| (a.0 - b.0).camax())
            .fold(0.0, f64::max);
        current = finer;
        if gap < TOL {
            break;
        }
        if sub >= MAX_REFINEMENT {
            return Err(Error::Unsupported(format!(
                "rotation path did not converge to {TOL:e} (gap {gap:e}) with {sub} sub-steps"
            )));
        }
    }

    // initial axis: direction of the first nonzero field sample
    let first_axis = times
        .windows(2)
        .map(|w| field.field(0.5 * (w[0] + w[1])))
        .find(|v| v.norm() > 0.0)
        .map(|v| v.normalize())
        .unwrap_or_else(Vector3::z);
    let mut previous = AxisAngle {
        axis: first_axis,
        angle: 0.0,
    };
    let mut samples = Vec::with_capacity(current.len());
    for p in &current {
        let aa = p.to_axis_angle(Some(&previous));
        samples.push(aa);
        previous = aa;
    }
    Ok(SampledTrajectory {
        times,
        propagators: current,
        samples,
        refinement: sub,
    })
}
