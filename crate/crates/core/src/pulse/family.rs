//! Low-dimensional pulse parametrisations used by the catalog and the
//! designer.

use std::fmt;

use super::{HarmonicAnsatz, PulseShape, Segment};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Segments of one common magnitude with a fixed sign pattern.
    /// Parameters `[A, τ₁, …, τ_{n−1}]`.
    CompositeAsymmetric { signs: Vec<i8> },
    /// Three segments mirrored about `t = 1/2`. Parameters `[A, τ₁]`, the
    /// second switch sits at `1 − τ₁`.
    CompositeSymmetric3 { signs: [i8; 3] },
    /// Five mirrored segments with magnitudes `A, A, B, A, A`.
    /// Parameters `[A, B, τ₁, τ₂]`, switches at `τ₁, τ₂, 1 − τ₂, 1 − τ₁`.
    CompositeSymmetric5 { signs: [i8; 5] },
    /// Harmonic series, parameters are the ansatz values.
    Harmonic(HarmonicAnsatz),
}

impl Family {
    pub fn composite_asymmetric(segments: usize) -> Self {
        let signs = (0..segments).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        Self::CompositeAsymmetric { signs }
    }

    /// Parses the family names accepted on the command line:
    /// `composite<N>-asym`, `composite3-sym`, `composite5-sym`,
    /// `harmonic-sym1`, `harmonic-asym1`, `harmonic-sym2` and the aliases
    /// `harmonic38`, `harmonic39`, `harmonic40`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "composite3-sym" => Some(Self::CompositeSymmetric3 { signs: [1, -1, 1] }),
            "composite5-sym" => Some(Self::CompositeSymmetric5 {
                signs: [-1, 1, -1, 1, -1],
            }),
            "harmonic-sym1" | "harmonic38" => Some(Self::Harmonic(HarmonicAnsatz::SymmetricFirstOrder)),
            "harmonic-asym1" | "harmonic39" => Some(Self::Harmonic(HarmonicAnsatz::AsymmetricFirstOrder)),
            "harmonic-sym2" | "harmonic40" => Some(Self::Harmonic(HarmonicAnsatz::SymmetricSecondOrder)),
            _ => {
                let n: usize = name.strip_prefix("composite")?.strip_suffix("-asym")?.parse().ok()?;
                (n >= 1).then(|| Self::composite_asymmetric(n))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::CompositeAsymmetric { signs } => format!("composite{}-asym", signs.len()),
            Self::CompositeSymmetric3 { .. } => "composite3-sym".into(),
            Self::CompositeSymmetric5 { .. } => "composite5-sym".into(),
            Self::Harmonic(HarmonicAnsatz::SymmetricFirstOrder) => "harmonic-sym1".into(),
            Self::Harmonic(HarmonicAnsatz::AsymmetricFirstOrder) => "harmonic-asym1".into(),
            Self::Harmonic(HarmonicAnsatz::SymmetricSecondOrder) => "harmonic-sym2".into(),
            Self::Harmonic(HarmonicAnsatz::Fourier) => "harmonic-fourier".into(),
        }
    }

    /// Replaces the sign pattern of a composite family.
    pub fn with_signs(self, signs: &[i8]) -> Result<Self> {
        let bad = || {
            Error::InvalidProblem(format!(
                "sign pattern of length {} does not fit {}",
                signs.len(),
                self.name()
            ))
        };
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidProblem("signs must be +1 or -1".into()));
        }
        Ok(match self {
            Self::CompositeAsymmetric { .. } => Self::CompositeAsymmetric { signs: signs.to_vec() },
            Self::CompositeSymmetric3 { .. } => Self::CompositeSymmetric3 {
                signs: signs.try_into().map_err(|_| bad())?,
            },
            Self::CompositeSymmetric5 { .. } => Self::CompositeSymmetric5 {
                signs: signs.try_into().map_err(|_| bad())?,
            },
            Self::Harmonic(_) => return Err(bad()),
        })
    }

    pub fn parameter_count(&self) -> usize {
        match self {
            Self::CompositeAsymmetric { signs } => signs.len(),
            Self::CompositeSymmetric3 { .. } => 2,
            Self::CompositeSymmetric5 { .. } => 4,
            Self::Harmonic(a) => a.parameter_count().unwrap_or(0),
        }
    }

    pub fn parameter_names(&self) -> Vec<String> {
        match self {
            Self::CompositeAsymmetric { signs } => std::iter::once("A".to_string())
                .chain((1..signs.len()).map(|k| format!("tau{k}")))
                .collect(),
            Self::CompositeSymmetric3 { .. } => vec!["A".into(), "tau1".into()],
            Self::CompositeSymmetric5 { .. } => vec!["A".into(), "B".into(), "tau1".into(), "tau2".into()],
            Self::Harmonic(a) => ["a", "b", "c"]
                .iter()
                .take(a.parameter_count().unwrap_or(0))
                .map(|s| s.to_string())
                .collect(),
        }
    }

    pub fn is_composite(&self) -> bool {
        !matches!(self, Self::Harmonic(_))
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            Self::CompositeAsymmetric { .. } => false,
            Self::CompositeSymmetric3 { .. } | Self::CompositeSymmetric5 { .. } => true,
            Self::Harmonic(a) => a.is_symmetric(),
        }
    }

    /// Composite parametrisations leave `ψ(1) = θ` as an equation to solve;
    /// harmonic ones satisfy it identically.
    pub fn needs_angle_condition(&self) -> bool {
        self.is_composite()
    }

    /// Ordering constraints: positive magnitudes and strictly increasing
    /// switching instants inside `(0, 1)`.
    pub fn is_feasible(&self, params: &[f64]) -> bool {
        if params.len() != self.parameter_count() || params.iter().any(|p| !p.is_finite()) {
            return false;
        }
        let increasing = |ts: &[f64], upper: f64| {
            ts.iter()
                .try_fold(0.0, |prev, &t| (t > prev).then_some(t))
                .is_some_and(|last| last < upper)
        };
        match self {
            Self::CompositeAsymmetric { .. } => params[0] > 0.0 && increasing(&params[1..], 1.0),
            Self::CompositeSymmetric3 { .. } => params[0] > 0.0 && increasing(&params[1..], 0.5),
            Self::CompositeSymmetric5 { .. } => params[0] > 0.0 && params[1] > 0.0 && increasing(&params[2..], 0.5),
            Self::Harmonic(_) => true,
        }
    }

    pub fn build(&self, theta: f64, params: &[f64]) -> Result<PulseShape> {
        if params.len() != self.parameter_count() {
            return Err(Error::InvalidProblem(format!(
                "{} takes {} parameters, got {}",
                self.name(),
                self.parameter_count(),
                params.len()
            )));
        }
        let segments = |ends: &[f64], amps: &[f64]| -> Vec<Segment> {
            ends.iter().zip(amps).map(|(&e, &a)| Segment::new(e, a)).collect()
        };
        match self {
            Self::CompositeAsymmetric { signs } => {
                let a = params[0];
                let mut ends: Vec<f64> = params[1..].to_vec();
                ends.push(1.0);
                let amps: Vec<f64> = signs.iter().map(|&s| s as f64 * a).collect();
                PulseShape::piecewise(theta, segments(&ends, &amps))
            }
            Self::CompositeSymmetric3 { signs } => {
                let (a, t1) = (params[0], params[1]);
                let amps: Vec<f64> = signs.iter().map(|&s| s as f64 * a).collect();
                PulseShape::piecewise(theta, segments(&[t1, 1.0 - t1, 1.0], &amps))
            }
            Self::CompositeSymmetric5 { signs } => {
                let (a, b, t1, t2) = (params[0], params[1], params[2], params[3]);
                let mags = [a, a, b, a, a];
                let amps: Vec<f64> = signs.iter().zip(mags).map(|(&s, m)| s as f64 * m).collect();
                PulseShape::piecewise(theta, segments(&[t1, t2, 1.0 - t2, 1.0 - t1, 1.0], &amps))
            }
            Self::Harmonic(ansatz) => PulseShape::harmonic(theta, *ansatz, params.to_vec()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
