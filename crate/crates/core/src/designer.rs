//! Root finding for pulse parameters.
//!
//! A [`DesignProblem`] fixes a [`Family`], the rotation angle and the
//! residuals to cancel. [`solve`] runs a damped Newton iteration with a
//! central-difference Jacobian. Steps are capped in length, and infeasible or
//! non-improving steps are halved.
//! The result is re-checked with [`crate::corrections::eta_specific`].

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corrections::{eta_quadrature, eta_specific, CorrectionVector, Residual};
use crate::error::{Error, Result};
use crate::pulse::{CatalogEntry, Family, PulseShape};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Iteration stops once every residual row is below this.
    pub tolerance: f64,
    /// A stalled iteration is still accepted below this.
    pub acceptance: f64,
    pub max_iterations: usize,
    /// Relative finite-difference step.
    pub fd_step: f64,
    pub max_halvings: usize,
    /// Cap on a single step, relative to `max(|x|, 1)` per component.
    pub max_step: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-13,
            acceptance: 1e-10,
            max_iterations: 200,
            fd_step: 1e-7,
            max_halvings: 40,
            max_step: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignProblem {
    pub family: Family,
    pub theta: f64,
    pub targets: Vec<Residual>,
    pub guess: Vec<f64>,
    pub options: SolverOptions,
}

impl DesignProblem {
    /// Problem with [`default_targets`] and default options.
    pub fn new(family: Family, theta: f64, guess: Vec<f64>) -> Self {
        let targets = default_targets(&family, theta);
        Self {
            family,
            theta,
            targets,
            guess,
            options: SolverOptions::default(),
        }
    }

    pub fn with_targets(mut self, targets: Vec<Residual>) -> Self {
        self.targets = targets;
        self
    }

    pub fn with_options(mut self, options: SolverOptions) -> Self {
        self.options = options;
        self
    }

    pub fn equation_count(&self) -> usize {
        self.targets.len() + usize::from(self.family.needs_angle_condition())
    }

    fn validate(&self) -> Result<()> {
        let n = self.family.parameter_count();
        if n == 0 {
            return Err(Error::InvalidProblem(format!(
                "{} has no fixed parameter count",
                self.family
            )));
        }
        if self.guess.len() != n {
            return Err(Error::InvalidProblem(format!(
                "{} takes {n} parameters, guess has {}",
                self.family,
                self.guess.len()
            )));
        }
        if self.equation_count() != n {
            return Err(Error::InvalidProblem(format!(
                "{} equations for {n} unknowns",
                self.equation_count()
            )));
        }
        let mut t = self.targets.clone();
        t.sort();
        t.dedup();
        if t.len() != self.targets.len() {
            return Err(Error::InvalidProblem("duplicate target residual".into()));
        }
        if !self.theta.is_finite() || self.guess.iter().any(|g| !g.is_finite()) {
            return Err(Error::InvalidProblem("non-finite angle or guess".into()));
        }
        if !self.family.is_feasible(&self.guess) {
            return Err(Error::InvalidProblem("guess violates the ordering constraints".into()));
        }
        Ok(())
    }
}

/// Residual set matching the family's parameter count. Symmetric families
/// drop the rows that symmetry makes redundant: at `θ = π` `η12 = 0` and
/// `η21 = η11/2` hold identically, at `θ = π/2` `η12 = η11` and
/// `η22 = η11 − η21`.
pub fn default_targets(family: &Family, theta: f64) -> Vec<Residual> {
    use Residual::*;
    let n = family
        .parameter_count()
        .saturating_sub(usize::from(family.needs_angle_condition()));
    let at_pi = (theta - PI).abs() < 1e-9;
    match (family.is_symmetric(), n) {
        (true, 1) => vec![Eta11],
        (true, 3) if at_pi => vec![Eta11, Eta22, Eta23],
        (true, 3) => vec![Eta11, Eta21, Eta23],
        (_, 2) => vec![Eta11, Eta12],
        (_, 5) => vec![Eta11, Eta12, Eta21, Eta22, Eta23],
        _ => Residual::ALL.into_iter().take(n).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub parameters: Vec<f64>,
    pub pulse: PulseShape,
    pub residuals: CorrectionVector,
    /// `ψ(1) − θ`.
    pub angle_error: f64,
    pub iterations: usize,
    /// Largest selected residual (and angle error) after post-hoc evaluation.
    pub residual_norm: f64,
}

struct System<'a> {
    problem: &'a DesignProblem,
    panels: usize,
}

impl System<'_> {
    fn eval(&self, params: &[f64]) -> Result<Vec<f64>> {
        let p = self.problem;
        let pulse = p.family.build(p.theta, params)?;
        // fixed rule keeps the map smooth for finite differences
        let eta = match pulse.segments() {
            Some(_) => eta_specific(&pulse)?,
            None => eta_quadrature(&pulse, self.panels * pulse.highest_harmonic() as usize),
        };
        let mut out: Vec<f64> = p.targets.iter().map(|&r| eta.get(r)).collect();
        if p.family.needs_angle_condition() {
            out.push(pulse.final_angle() - p.theta);
        }
        Ok(out)
    }

    /// Central differences, one-sided where a probe would leave the
    /// feasible region.
    fn jacobian(&self, x: &[f64]) -> Result<Option<Vec<Vec<f64>>>> {
        let n = x.len();
        let family = &self.problem.family;
        let f0 = self.eval(x)?;
        let mut jac = vec![vec![0.0; n]; n];
        for k in 0..n {
            let h = self.problem.options.fd_step * x[k].abs().max(1e-3);
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[k] += h;
            minus[k] -= h;
            let (fp, fm, width) = match (family.is_feasible(&plus), family.is_feasible(&minus)) {
                (true, true) => (self.eval(&plus)?, self.eval(&minus)?, 2.0 * h),
                (true, false) => (self.eval(&plus)?, f0.clone(), h),
                (false, true) => (f0.clone(), self.eval(&minus)?, h),
                (false, false) => return Ok(None),
            };
            for (row, (a, b)) in jac.iter_mut().zip(fp.iter().zip(&fm)) {
                row[k] = (a - b) / width;
            }
        }
        Ok(Some(jac))
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

// smooth merit for the line search; the max norm is not descent-compatible
fn merit(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Least-norm solve of a square system, `None` when the matrix is
/// numerically singular.
fn linear_solve(a: Vec<Vec<f64>>, b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let svd = m.svd(true, true);
    let sv = &svd.singular_values;
    if sv.max() == 0.0 || sv.min() <= 1e-13 * sv.max() {
        return None;
    }
    let x = svd.solve(&DVector::from_vec(b), 0.0).ok()?;
    x.iter().all(|v| v.is_finite()).then(|| x.iter().copied().collect())
}

pub fn solve(problem: &DesignProblem) -> Result<Solution> {
    problem.validate()?;
    let sys = System { problem, panels: 32 };
    let (x, iterations) = newton(&sys, problem.guess.clone())?;
    finish(problem, x, iterations)
}

fn newton(sys: &System, mut x: Vec<f64>) -> Result<(Vec<f64>, usize)> {
    let problem = sys.problem;
    let opts = problem.options;
    let mut f = sys.eval(&x)?;
    let mut fnorm = norm(&f);
    let mut fmerit = merit(&f);
    let mut iterations = 0;
    while fnorm > opts.tolerance {
        if iterations == opts.max_iterations {
            return Err(Error::NotConverged {
                iterations,
                residual_norm: fnorm,
                best: x,
            });
        }
        iterations += 1;
        let step = sys
            .jacobian(&x)?
            .and_then(|jac| linear_solve(jac, f.iter().map(|v| -v).collect()))
            .ok_or_else(|| Error::SingularJacobian {
                iteration: iterations,
                point: x.clone(),
            })?;
        let reach = step
            .iter()
            .zip(&x)
            .fold(0.0_f64, |m, (d, p)| m.max(d.abs() / p.abs().max(1.0)));
        let mut lambda = (opts.max_step / reach).min(1.0);
        let mut accepted = None;
        for _ in 0..opts.max_halvings {
            let trial: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a + lambda * s).collect();
            if problem.family.is_feasible(&trial) {
                let ft = sys.eval(&trial)?;
                let mt = merit(&ft);
                if mt < fmerit {
                    accepted = Some((trial, ft, mt));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((xt, ft, mt)) => {
                x = xt;
                fnorm = norm(&ft);
                f = ft;
                fmerit = mt;
            }
            // stalled at the noise floor of the residual map
            None if fnorm <= opts.acceptance => break,
            None => {
                return Err(Error::NotConverged {
                    iterations,
                    residual_norm: fnorm,
                    best: x,
                })
            }
        }
    }
    Ok((x, iterations))
}

fn finish(problem: &DesignProblem, parameters: Vec<f64>, iterations: usize) -> Result<Solution> {
    let pulse = problem.family.build(problem.theta, &parameters)?;
    let residuals = eta_specific(&pulse)?;
    let angle_error = pulse.final_angle() - problem.theta;
    let residual_norm = problem
        .targets
        .iter()
        .map(|&r| residuals.get(r).abs())
        .fold(angle_error.abs(), f64::max);
    if residual_norm > problem.options.acceptance {
        return Err(Error::NotConverged {
            iterations,
            residual_norm,
            best: parameters,
        });
    }
    Ok(Solution {
        parameters,
        pulse,
        residuals,
        angle_error,
        iterations,
        residual_norm,
    })
}

/// Polishes a catalog entry's quoted parameters to a root of its default
/// target set.
pub fn refine(entry: &CatalogEntry) -> Result<Solution> {
    solve(&DesignProblem::new(
        entry.family.clone(),
        entry.theta(),
        entry.parameters.clone(),
    ))
}

/// Guess vector with every component scaled by an independent factor in
/// `[1 − spread, 1 + spread]`. Infeasible draws are redrawn.
pub fn perturbed_guess(family: &Family, base: &[f64], spread: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g: Vec<f64> = base
            .iter()
            .map(|b| b * (1.0 + rng.random_range(-spread..=spread)))
            .collect();
        if family.is_feasible(&g) {
            return g;
        }
    }
}

/// Largest `|v(t)|` on `[0, 1]`, in units of `1/τ_p`, with its location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxAmplitude {
    pub value: f64,
    pub location: f64,
}

pub fn max_amplitude(pulse: &PulseShape) -> MaxAmplitude {
    if let Some(segments) = pulse.segments() {
        let mut start = 0.0;
        let mut best = MaxAmplitude {
            value: -1.0,
            location: 0.0,
        };
        for s in segments {
            if s.amplitude.abs() > best.value {
                best = MaxAmplitude {
                    value: s.amplitude.abs(),
                    location: start,
                };
            }
            start = s.end;
        }
        return best;
    }
    const SAMPLES: usize = 4096;
    let f = |t: f64| pulse.amplitude_at(t).abs();
    let (mut k_best, mut v_best) = (0, f(0.0));
    for k in 1..=SAMPLES {
        let v = f(k as f64 / SAMPLES as f64);
        if v > v_best {
            k_best = k;
            v_best = v;
        }
    }
    let h = 1.0 / SAMPLES as f64;
    let lo = (k_best as f64 * h - h).max(0.0);
    let hi = (k_best as f64 * h + h).min(1.0);
    let t = golden_max(f, lo, hi, 1e-12);
    let (value, location) = if f(t) >= v_best {
        (f(t), t)
    } else {
        (v_best, k_best as f64 * h)
    };
    MaxAmplitude { value, location }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
