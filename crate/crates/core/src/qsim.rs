//! Exact propagation of a spin-1/2 coupled to a small spin bath.
//!
//! The total Hamiltonian on `spin ⊗ bath` is
//! `H(t) = 1⊗H_b + Σ_j σ_j⊗λ_j Ā_j + v(t/τ_p)/τ_p σ·â ⊗ 1`.
//! In normalised time `s = t/τ_p` the generator is
//! `G(s) = τ_p (1⊗H_b + Σ_j σ_j⊗λ_j Ā_j) + v(s) σ·â ⊗ 1`.
//!
//! Two integrators are provided:
//!
//! * [`Scheme::Midpoint`]: one Hermitian exponential of `G` per step at the
//!   step midpoint. Steps never straddle a switching instant, so
//!   piecewise-constant pulses are propagated exactly.
//! * [`Scheme::Magnus4`]: fourth-order Magnus steps in the toggling frame of
//!   the pulse, where the generator is `τ_p`-small and smooth. Suited to
//!   continuous pulses with large amplitudes.
//!
//! [`evolve`] doubles the step count until successive results agree to a
//! fraction of the measured pulse error.

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    commutator, expm_hermitian, hermiticity_defect, identity, kron, pauli_dyn, spectral_norm_hermitian, to_dyn, trace,
    CMatrix,
};
use crate::pulse::{PulseShape, Waveform};
use crate::rotation::{propagator, rotation_matrix, step_grid, AxisAngle};

pub const MAX_BATH_SPINS: usize = 4;
const HERMITIAN_TOLERANCE: f64 = 1e-12;
const NORM_TOLERANCE: f64 = 1e-10;
/// Largest `τ_p (Σ|λ_j| + ω_b)` accepted by [`scaling_exponent`].
pub const PERTURBATIVE_WINDOW: f64 = 0.3;
/// Points whose distance is below this multiple of the integrator
/// tolerance are left out of the slope fit.
pub const FLOOR_FACTOR: f64 = 100.0;
pub const MIN_FIT_POINTS: usize = 4;

/// Bath Hamiltonian and coupling operators. `A_j = λ_j Ā_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BathSpec {
    h_b: CMatrix,
    lambda: [f64; 3],
    operators: [CMatrix; 3],
}

impl BathSpec {
    /// Checks dimensions `2^N_b` with `1 ≤ N_b ≤ 4`, Hermiticity and unit
    /// operator norm of every `Ā_j` with `λ_j ≠ 0`. Uncoupled directions may
    /// carry a zero operator.
    pub fn new(h_b: CMatrix, lambda: [f64; 3], operators: [CMatrix; 3]) -> Result<Self> {
        let dim = h_b.nrows();
        if spins_for_dimension(dim).is_none() {
            return Err(Error::InvalidBath(format!(
                "dimension {dim} is not 2^N_b with 1 <= N_b <= {MAX_BATH_SPINS}"
            )));
        }
        if !h_b.is_square() {
            return Err(Error::InvalidBath("H_b is not square".into()));
        }
        if hermiticity_defect(&h_b) > HERMITIAN_TOLERANCE {
            return Err(Error::InvalidBath("H_b is not Hermitian".into()));
        }
        for (j, op) in operators.iter().enumerate() {
            if op.nrows() != dim || op.ncols() != dim {
                return Err(Error::DimensionMismatch(op.nrows(), dim));
            }
            if hermiticity_defect(op) > HERMITIAN_TOLERANCE {
                return Err(Error::InvalidBath(format!("coupling operator {j} is not Hermitian")));
            }
            if !lambda[j].is_finite() {
                return Err(Error::InvalidBath(format!("coupling {j} is not finite")));
            }
            let norm = spectral_norm_hermitian(op);
            let zero_ok = norm == 0.0 && lambda[j] == 0.0;
            if !zero_ok && (norm - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::InvalidBath(format!(
                    "coupling operator {j} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self { h_b, lambda, operators })
    }

    pub fn spins(&self) -> usize {
        spins_for_dimension(self.dimension()).unwrap_or(0)
    }

    pub fn dimension(&self) -> usize {
        self.h_b.nrows()
    }

    pub fn h_b(&self) -> &CMatrix {
        &self.h_b
    }

    pub fn lambda(&self) -> [f64; 3] {
        self.lambda
    }

    /// Normalised operator `Ā_j`.
    pub fn operator(&self, j: usize) -> &CMatrix {
        &self.operators[j]
    }

    /// `ω_b = ‖H_b‖`.
    pub fn omega_b(&self) -> f64 {
        spectral_norm_hermitian(&self.h_b)
    }

    /// `Σ_j |λ_j|`, an upper bound on `‖σ·A‖`.
    pub fn coupling_scale(&self) -> f64 {
        self.lambda.iter().map(|l| l.abs()).sum()
    }

    /// Same bath with every `λ_j` replaced.
    pub fn with_lambda(&self, lambda: [f64; 3]) -> Result<Self> {
        Self::new(self.h_b.clone(), lambda, self.operators.clone())
    }

    /// Same bath with `H_b = 0`.
    pub fn static_limit(&self) -> Self {
        let dim = self.dimension();
        Self {
            h_b: CMatrix::zeros(dim, dim),
            ..self.clone()
        }
    }

    /// `1⊗H_b + Σ_j σ_j⊗λ_j Ā_j` on the joint space.
    pub fn system_hamiltonian(&self) -> CMatrix {
        let s = pauli_dyn();
        let mut h = kron(&identity(2), &self.h_b);
        for j in 0..3 {
            if self.lambda[j] != 0.0 {
                h += kron(&s[j], &(&self.operators[j] * Complex64::from(self.lambda[j])));
            }
        }
        h
    }
}

fn spins_for_dimension(dim: usize) -> Option<usize> {
    (1..=MAX_BATH_SPINS).find(|n| 1usize << n == dim)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingStructure {
    /// Only `λ_z` and `Ā_z` are non-zero.
    ZOnly,
    /// Three independent coupling operators.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomBathConfig {
    pub seed: u64,
    pub spins: usize,
    pub omega_b: f64,
    pub lambda: [f64; 3],
    pub structure: CouplingStructure,
}

impl RandomBathConfig {
    /// Two bath spins, `ω_b = λ_z = 1`, z coupling only.
    pub fn z_dynamic(seed: u64) -> Self {
        Self {
            seed,
            spins: 2,
            omega_b: 1.0,
            lambda: [0.0, 0.0, 1.0],
            structure: CouplingStructure::ZOnly,
        }
    }

    /// As [`RandomBathConfig::z_dynamic`] with `H_b = 0`.
    pub fn z_static(seed: u64) -> Self {
        Self {
            omega_b: 0.0,
            ..Self::z_dynamic(seed)
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// `σ_a` acting on bath spin `k` of `n`.
fn local_pauli(a: usize, k: usize, n: usize) -> CMatrix {
    let s = pauli_dyn();
    (0..n).fold(identity(1), |acc, q| {
        kron(&acc, &if q == k { s[a].clone() } else { identity(2) })
    })
}

/// Hermitian matrix from the Gaussian unitary ensemble, scaled to unit
/// operator norm.
fn gue_unit(dim: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let x = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let h = (&x + x.adjoint()) * Complex64::from(0.5);
    let norm = spectral_norm_hermitian(&h);
    h / Complex64::from(norm)
}

/// Reproducible random bath: `H_b` is a sum of random local fields and
/// random two-spin couplings scaled to `‖H_b‖ = ω_b`; coupling operators
/// are unit-norm GUE samples.
pub fn random_bath(config: &RandomBathConfig) -> Result<BathSpec> {
    let n = config.spins;
    if !(1..=MAX_BATH_SPINS).contains(&n) {
        return Err(Error::Unsupported(format!(
            "{n} bath spins, supported 1..={MAX_BATH_SPINS}"
        )));
    }
    if !(config.omega_b >= 0.0 && config.omega_b.is_finite()) {
        return Err(Error::InvalidBath(format!("omega_b = {}", config.omega_b)));
    }
    if config.structure == CouplingStructure::ZOnly && (config.lambda[0] != 0.0 || config.lambda[1] != 0.0) {
        return Err(Error::InvalidBath(
            "z-only coupling needs lambda_x = lambda_y = 0".into(),
        ));
    }
    let dim = 1 << n;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut h_b = CMatrix::zeros(dim, dim);
    for k in 0..n {
        for a in 0..3 {
            h_b += local_pauli(a, k, n) * Complex64::from(gaussian(&mut rng));
        }
    }
    for k in 0..n {
        for l in k + 1..n {
            for a in 0..3 {
                for b in 0..3 {
                    let term = local_pauli(a, k, n) * local_pauli(b, l, n);
                    h_b += term * Complex64::from(gaussian(&mut rng));
                }
            }
        }
    }
    let norm = spectral_norm_hermitian(&h_b);
    h_b *= Complex64::from(config.omega_b / norm);

    let operators = match config.structure {
        CouplingStructure::ZOnly => [
            CMatrix::zeros(dim, dim),
            CMatrix::zeros(dim, dim),
            gue_unit(dim, &mut rng),
        ],
        CouplingStructure::General => [
            gue_unit(dim, &mut rng),
            gue_unit(dim, &mut rng),
            gue_unit(dim, &mut rng),
        ],
    };
    BathSpec::new(h_b, config.lambda, operators)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Midpoint,
    Magnus4,
}

impl Scheme {
    /// Midpoint for piecewise-constant pulses, Magnus4 otherwise.
    pub fn for_pulse(pulse: &PulseShape) -> Self {
        match pulse.waveform() {
            Waveform::PiecewiseConstant(_) => Self::Midpoint,
            Waveform::HarmonicSeries(_) => Self::Magnus4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Midpoint => "midpoint",
            Self::Magnus4 => "magnus4",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// `None` picks [`Scheme::for_pulse`].
    pub scheme: Option<Scheme>,
    /// Steps per unit of normalised time in the first run.
    pub initial_steps: usize,
    pub max_steps: usize,
    /// Successive results must agree to this fraction of the pulse error…
    pub relative_tolerance: f64,
    /// …or to this absolute distance.
    pub absolute_tolerance: f64,
    /// Differences below this that stop shrinking are treated as rounding.
    pub noise_floor: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            scheme: None,
            initial_steps: 64,
            max_steps: 1 << 18,
            relative_tolerance: 0.01,
            absolute_tolerance: 1e-13,
            noise_floor: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub unitary: CMatrix,
    pub scheme: Scheme,
    pub steps: usize,
    /// Distance between the last two refinements.
    pub difference: f64,
    /// Distance from [`target`].
    pub pulse_error: f64,
    /// Integrator tolerance reached: the largest of `difference`, the
    /// absolute tolerance and [`rounding_floor`].
    pub tolerance: f64,
}

fn check_duration(tau_p: f64) -> Result<()> {
    if tau_p.is_finite() && tau_p >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidGrid(format!(
            "pulse duration {tau_p} must be finite and non-negative"
        )))
    }
}

/// Joint propagator from a single run with about `steps` steps per unit of
/// normalised time.
pub fn propagate(pulse: &PulseShape, bath: &BathSpec, tau_p: f64, scheme: Scheme, steps: usize) -> Result<CMatrix> {
    check_duration(tau_p)?;
    if steps == 0 {
        return Err(Error::InvalidGrid("steps must be at least 1".into()));
    }
    let grid = step_grid(&pulse.breakpoints(), steps);
    Ok(match scheme {
        Scheme::Midpoint => midpoint(pulse, bath, tau_p, &grid),
        Scheme::Magnus4 => magnus4(pulse, bath, tau_p, &grid),
    })
}

fn spin_axis_operator(axis: &Vector3<f64>) -> CMatrix {
    let s = pauli_dyn();
    (0..3).fold(CMatrix::zeros(2, 2), |acc, i| acc + &s[i] * Complex64::from(axis[i]))
}

fn midpoint(pulse: &PulseShape, bath: &BathSpec, tau_p: f64, grid: &[f64]) -> CMatrix {
    let dim = 2 * bath.dimension();
    let system = bath.system_hamiltonian() * Complex64::from(tau_p);
    let drive = kron(&spin_axis_operator(&pulse.axis()), &identity(bath.dimension()));
    let mut u = identity(dim);
    for w in grid.windows(2) {
        let dt = w[1] - w[0];
        let v = pulse.amplitude_at(0.5 * (w[0] + w[1]));
        let g = &system + &drive * Complex64::from(v);
        u = expm_hermitian(&g, dt) * u;
    }
    u
}

fn magnus4(pulse: &PulseShape, bath: &BathSpec, tau_p: f64, grid: &[f64]) -> CMatrix {
    let dim = 2 * bath.dimension();
    let s = pauli_dyn();
    let scale = Complex64::from(tau_p);
    let bath_part = kron(&identity(2), bath.h_b()) * scale;
    let lambda = bath.lambda();
    let couplings: Vec<(usize, CMatrix)> = (0..3)
        .filter(|&j| lambda[j] != 0.0)
        .map(|j| (j, bath.operator(j) * Complex64::from(tau_p * lambda[j])))
        .collect();
    let spin_ops: Vec<Vec<CMatrix>> = (0..3)
        .map(|i| couplings.iter().map(|(_, b)| kron(&s[i], b)).collect())
        .collect();
    let axis = pulse.axis();
    let generator = |t: f64| -> CMatrix {
        let n = rotation_matrix(&AxisAngle {
            axis,
            angle: pulse.angle_at(t),
        });
        let mut k = bath_part.clone();
        for (i, row) in spin_ops.iter().enumerate() {
            for ((j, _), op) in couplings.iter().zip(row) {
                let c = n[(i, *j)];
                if c != 0.0 {
                    k += op * Complex64::from(c);
                }
            }
        }
        k
    };
    let c = 3.0_f64.sqrt() / 6.0;
    let comm = Complex64::new(0.0, -(3.0_f64.sqrt()) / 12.0);
    let mut w = identity(dim);
    for seg in grid.windows(2) {
        let h = seg[1] - seg[0];
        let k1 = generator(seg[0] + (0.5 - c) * h);
        let k2 = generator(seg[0] + (0.5 + c) * h);
        let m = (&k1 + &k2) * Complex64::from(0.5 * h) + commutator(&k2, &k1) * (comm * h * h);
        w = expm_hermitian(&m, 1.0) * w;
    }
    kron(&end_rotation(pulse), &identity(bath.dimension())) * w
}

/// Spin propagator of the pulse alone, `exp(−i ψ(1)/2 σ·â)`.
fn end_rotation(pulse: &PulseShape) -> CMatrix {
    let p = propagator(&AxisAngle {
        axis: pulse.axis(),
        angle: pulse.final_angle(),
    });
    to_dyn(p.matrix())
}

/// Ideal result `(P ⊗ 1)(1 ⊗ e^{−iτ_p H_b})`, with `P` the rotation the pulse
/// actually performs (`ψ(1)` about its axis).
pub fn target(pulse: &PulseShape, bath: &BathSpec, tau_p: f64) -> Result<CMatrix> {
    check_duration(tau_p)?;
    Ok(kron(&end_rotation(pulse), &expm_hermitian(bath.h_b(), tau_p)))
}

/// Phase-invariant distance `sqrt(1 − |tr(U†V)|/n)`, evaluated as
/// `‖V − e^{iφ}U‖_F / sqrt(2n)` with the optimal phase to avoid cancellation.
pub fn distance(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    if u.shape() != v.shape() {
        return Err(Error::DimensionMismatch(u.nrows(), v.nrows()));
    }
    let n = u.nrows() as f64;
    let overlap = trace(&(u.adjoint() * v));
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::from(1.0)
    };
    let diff = v - u * phase;
    Ok((diff.norm() / (2.0 * n).sqrt()).min(1.0))
}

/// Propagates with step doubling until successive results agree to
/// `max(relative_tolerance × pulse error, absolute_tolerance)`. Refinement
/// also stops once the difference stops shrinking below `noise_floor`, where
/// rounding dominates; the reported tolerance is then the smallest
/// difference reached.
pub fn evolve(pulse: &PulseShape, bath: &BathSpec, tau_p: f64, options: &EvolveOptions) -> Result<Evolution> {
    let scheme = options.scheme.unwrap_or_else(|| Scheme::for_pulse(pulse));
    let ideal = target(pulse, bath, tau_p)?;
    let mut steps = options.initial_steps.max(1);
    let mut previous = propagate(pulse, bath, tau_p, scheme, steps)?;
    let mut last: Option<Evolution> = None;
    loop {
        if 2 * steps > options.max_steps {
            let before = propagate(pulse, bath, tau_p, scheme, steps / 2)?;
            let difference = last.map_or(f64::NAN, |e| e.difference);
            return Err(Error::StepBudget {
                max_steps: options.max_steps,
                difference,
                iterates: Box::new((before, previous)),
            });
        }
        steps *= 2;
        let current = propagate(pulse, bath, tau_p, scheme, steps)?;
        let difference = distance(&previous, &current)?;
        let pulse_error = distance(&current, &ideal)?;
        let floor = options.absolute_tolerance.max(rounding_floor(steps, current.nrows()));
        let bound = (options.relative_tolerance * pulse_error).max(floor);
        if difference <= bound {
            return Ok(Evolution {
                unitary: current,
                scheme,
                steps,
                difference,
                pulse_error,
                tolerance: difference.max(floor),
            });
        }
        if let Some(prev) = last.take() {
            if difference >= prev.difference && prev.difference <= options.noise_floor {
                let floor = options
                    .absolute_tolerance
                    .max(rounding_floor(prev.steps, current.nrows()));
                return Ok(Evolution {
                    tolerance: prev.difference.max(floor),
                    ..prev
                });
            }
        }
        last = Some(Evolution {
            unitary: current.clone(),
            scheme,
            steps,
            difference,
            pulse_error,
            tolerance: difference,
        });
        previous = current;
    }
}

/// Rounding accumulated by a product of `steps` unitary factors of
/// dimension `dim`.
pub fn rounding_floor(steps: usize, dim: usize) -> f64 {
    steps as f64 * dim as f64 * f64::EPSILON
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || n < 2 {
        return Err(Error::InvalidGrid(format!(
            "need 0 < lo < hi and n >= 2, got [{lo}, {hi}] with {n}"
        )));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|k| match k {
            0 => lo,
            k if k == n - 1 => hi,
            k => (a + (b - a) * k as f64 / (n - 1) as f64).exp(),
        })
        .collect())
}

/// Eight points from `10⁻³` to `10⁻¹`.
pub fn default_grid() -> Vec<f64> {
    log_grid(1e-3, 1e-1, 8).expect("static grid")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub tau_p: f64,
    pub distance: f64,
    pub tolerance: f64,
    pub steps: usize,
    pub included: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub points: Vec<ScalingPoint>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation of `log d` from the fitted line.
    pub fit_residual: f64,
    pub warnings: Vec<String>,
}

impl ScalingReport {
    pub fn tau_grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.tau_p).collect()
    }

    pub fn distances(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.distance).collect()
    }
}

fn check_grid(bath: &BathSpec, grid: &[f64]) -> Result<()> {
    if grid.len() < MIN_FIT_POINTS {
        return Err(Error::InvalidGrid(format!(
            "{} points, need at least {MIN_FIT_POINTS}",
            grid.len()
        )));
    }
    if grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(
            "durations must be positive and strictly increasing".into(),
        ));
    }
    let reach = grid[grid.len() - 1] * (bath.coupling_scale() + bath.omega_b());
    if reach > PERTURBATIVE_WINDOW {
        return Err(Error::OutsideWindow(reach));
    }
    Ok(())
}

/// Least-squares slope of `log d` against `log τ_p`.
pub fn scaling_exponent(
    pulse: &PulseShape,
    bath: &BathSpec,
    grid: &[f64],
    options: &EvolveOptions,
) -> Result<ScalingReport> {
    check_grid(bath, grid)?;
    let runs: Vec<Result<Evolution>> = grid.par_iter().map(|&tau| evolve(pulse, bath, tau, options)).collect();
    let mut points = Vec::with_capacity(grid.len());
    let mut warnings = Vec::new();
    for (&tau_p, run) in grid.iter().zip(runs) {
        let e = run?;
        let included = e.pulse_error >= FLOOR_FACTOR * e.tolerance;
        if !included {
            warnings.push(format!(
                "tau_p = {tau_p:e}: distance {:e} is within {FLOOR_FACTOR}x of the integrator tolerance {:e}; excluded from the fit",
                e.pulse_error, e.tolerance
            ));
        }
        points.push(ScalingPoint {
            tau_p,
            distance: e.pulse_error,
            tolerance: e.tolerance,
            steps: e.steps,
            included,
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = points
        .iter()
        .filter(|p| p.included)
        .map(|p| (p.tau_p.ln(), p.distance.ln()))
        .unzip();
    if xs.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewPoints { usable: xs.len() });
    }
    let (slope, intercept, fit_residual) = linear_fit(&xs, &ys);
    Ok(ScalingReport {
        points,
        slope,
        intercept,
        fit_residual,
        warnings,
    })
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    (slope, intercept, (rss / n).sqrt())
}

/// Ideal δ-pulse rotation by `θ` about `ŷ`, `exp(−iθσ_y/2)`.
pub fn ideal_y_rotation(theta: f64) -> CMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::from(c),
            Complex64::from(-s),
            Complex64::from(s),
            Complex64::from(c),
        ],
    )
}
