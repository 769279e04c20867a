//! Control waveforms on the normalised pulse window.
//!
//! Time is measured in units of the pulse duration `τ_p` and amplitudes in
//! units of `1/τ_p`. The pulse Hamiltonian is `v(t) σ·â` with a fixed unit
//! axis `â`, so the accumulated rotation angle is `ψ(t) = 2 ∫₀ᵗ v`.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};

pub mod catalog;
pub mod family;

pub use catalog::{catalog, lookup, reference_pulse, CatalogEntry, Order, Symmetry};
pub use family::Family;

/// Tolerance on `|ψ(1) − θ|` accepted for printed (rounded) parameters.
pub const ANGLE_TOLERANCE: f64 = 1e-4;

/// One constant-amplitude piece, running from the previous end time to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub end: f64,
    pub amplitude: f64,
}

impl Segment {
    pub fn new(end: f64, amplitude: f64) -> Self {
        Self { end, amplitude }
    }
}

/// Basis conventions of the truncated harmonic series.
///
/// The stored values are exactly the free amplitudes of the ansatz, so
/// `SymmetricFirstOrder` holds `[a]`, `AsymmetricFirstOrder` holds `[a, b]`,
/// and `SymmetricSecondOrder` holds `[a, b, c]`:
///
/// * symmetric first order: `θ/2 + (a − θ/2) cos 2πt − a cos 4πt`
/// * asymmetric first order: the above `+ b sin 2πt − (b/2) sin 4πt`
/// * symmetric second order:
///   `θ/2 + (a − θ/2) cos 2πt + (b − a) cos 4πt + (c − b) cos 6πt − c cos 8πt`
/// * `Fourier` is a free series `θ/2 + Σₙ cₙ cos 2πnt + sₙ sin 2πnt` with
///   values `[c₁, s₁, c₂, s₂, …]`.
///
/// Every form has a vanishing oscillatory mean, hence `ψ(1) = θ` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HarmonicAnsatz {
    SymmetricFirstOrder,
    AsymmetricFirstOrder,
    SymmetricSecondOrder,
    Fourier,
}

impl HarmonicAnsatz {
    /// Number of free values, `None` for the open-ended Fourier form.
    pub fn parameter_count(self) -> Option<usize> {
        match self {
            Self::SymmetricFirstOrder => Some(1),
            Self::AsymmetricFirstOrder => Some(2),
            Self::SymmetricSecondOrder => Some(3),
            Self::Fourier => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SymmetricFirstOrder => "symmetric-first-order",
            Self::AsymmetricFirstOrder => "asymmetric-first-order",
            Self::SymmetricSecondOrder => "symmetric-second-order",
            Self::Fourier => "fourier",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Self::SymmetricFirstOrder,
            Self::AsymmetricFirstOrder,
            Self::SymmetricSecondOrder,
            Self::Fourier,
        ]
        .into_iter()
        .find(|a| a.name() == name)
    }

    pub fn is_symmetric(self) -> bool {
        !matches!(self, Self::AsymmetricFirstOrder | Self::Fourier)
    }
}

/// A single harmonic `c cos 2πnt + s sin 2πnt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub n: u32,
    pub cos: f64,
    pub sin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSeries {
    pub ansatz: HarmonicAnsatz,
    pub values: Vec<f64>,
}

impl HarmonicSeries {
    pub fn new(ansatz: HarmonicAnsatz, values: Vec<f64>) -> Result<Self> {
        match ansatz.parameter_count() {
            Some(n) if n != values.len() => {
                return Err(Error::InvalidPulse(format!(
                    "{} ansatz takes {n} values, got {}",
                    ansatz.name(),
                    values.len()
                )))
            }
            None if !values.len().is_multiple_of(2) => {
                return Err(Error::InvalidPulse("fourier values come in (cos, sin) pairs".into()))
            }
            _ => {}
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPulse("non-finite harmonic coefficient".into()));
        }
        Ok(Self { ansatz, values })
    }

    /// Expands the ansatz into plain harmonics for rotation angle `theta`.
    pub fn harmonics(&self, theta: f64) -> Vec<Harmonic> {
        let h = |n, cos, sin| Harmonic { n, cos, sin };
        let v = &self.values;
        match self.ansatz {
            HarmonicAnsatz::SymmetricFirstOrder => {
                vec![h(1, v[0] - theta / 2.0, 0.0), h(2, -v[0], 0.0)]
            }
            HarmonicAnsatz::AsymmetricFirstOrder => vec![h(1, v[0] - theta / 2.0, v[1]), h(2, -v[0], -v[1] / 2.0)],
            HarmonicAnsatz::SymmetricSecondOrder => vec![
                h(1, v[0] - theta / 2.0, 0.0),
                h(2, v[1] - v[0], 0.0),
                h(3, v[2] - v[1], 0.0),
                h(4, -v[2], 0.0),
            ],
            HarmonicAnsatz::Fourier => v
                .chunks(2)
                .enumerate()
                .map(|(k, c)| h(k as u32 + 1, c[0], c[1]))
                .collect(),
        }
    }

    pub fn highest_harmonic(&self) -> u32 {
        match self.ansatz {
            HarmonicAnsatz::SymmetricFirstOrder | HarmonicAnsatz::AsymmetricFirstOrder => 2,
            HarmonicAnsatz::SymmetricSecondOrder => 4,
            HarmonicAnsatz::Fourier => (self.values.len() / 2).max(1) as u32,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Waveform {
    PiecewiseConstant(Vec<Segment>),
    HarmonicSeries(HarmonicSeries),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseKind {
    PiecewiseConstant,
    HarmonicSeries,
}

impl PulseKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::PiecewiseConstant => "piecewise-constant",
            Self::HarmonicSeries => "harmonic-series",
        }
    }
}

/// A control waveform `v(t)` about a fixed axis, together with the rotation
/// angle it is meant to realise.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseShape {
    theta: f64,
    axis: Vector3<f64>,
    waveform: Waveform,
    // cached for harmonic series
    harmonics: Vec<Harmonic>,
}

impl PulseShape {
    /// Validates the waveform structure. The angle condition `ψ(1) = θ` is
    /// not enforced here (solver iterates violate it); see
    /// [`PulseShape::check_angle`].
    pub fn new(theta: f64, axis: Vector3<f64>, waveform: Waveform) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidPulse("theta must be finite".into()));
        }
        let norm = axis.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NonUnitAxis(norm));
        }
        let axis = axis / norm;
        let (waveform, harmonics) = match waveform {
            Waveform::PiecewiseConstant(mut segments) => {
                validate_segments(&mut segments, theta)?;
                (Waveform::PiecewiseConstant(segments), Vec::new())
            }
            Waveform::HarmonicSeries(series) => {
                let series = HarmonicSeries::new(series.ansatz, series.values)?;
                // the constant term θ/2 keeps a nonzero-angle series nonzero
                let harmonics = series.harmonics(theta);
                (Waveform::HarmonicSeries(series), harmonics)
            }
        };
        Ok(Self {
            theta,
            axis,
            waveform,
            harmonics,
        })
    }

    /// Piecewise-constant pulse about `ŷ`.
    pub fn piecewise(theta: f64, segments: Vec<Segment>) -> Result<Self> {
        Self::new(theta, Vector3::y(), Waveform::PiecewiseConstant(segments))
    }

    /// Harmonic-series pulse about `ŷ`.
    pub fn harmonic(theta: f64, ansatz: HarmonicAnsatz, values: Vec<f64>) -> Result<Self> {
        let series = HarmonicSeries::new(ansatz, values)?;
        Self::new(theta, Vector3::y(), Waveform::HarmonicSeries(series))
    }

    /// Uncorrected rectangular pulse of amplitude `θ/2` about `ŷ`.
    pub fn constant(theta: f64) -> Self {
        Self::piecewise(theta, vec![Segment::new(1.0, theta / 2.0)]).expect("constant pulse is always valid")
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn waveform(&self) -> &Waveform {
        &self.waveform
    }

    pub fn kind(&self) -> PulseKind {
        match self.waveform {
            Waveform::PiecewiseConstant(_) => PulseKind::PiecewiseConstant,
            Waveform::HarmonicSeries(_) => PulseKind::HarmonicSeries,
        }
    }

    pub fn segments(&self) -> Option<&[Segment]> {
        match &self.waveform {
            Waveform::PiecewiseConstant(s) => Some(s),
            Waveform::HarmonicSeries(_) => None,
        }
    }

    pub fn harmonic_series(&self) -> Option<&HarmonicSeries> {
        match &self.waveform {
            Waveform::HarmonicSeries(s) => Some(s),
            Waveform::PiecewiseConstant(_) => None,
        }
    }

    /// `true` when the axis is `ŷ`.
    pub fn is_y_axis(&self) -> bool {
        (self.axis - Vector3::y()).amax() < 1e-12
    }

    /// Amplitude `v(t)`. Segments are half-open `[t_{i−1}, t_i)`, the last
    /// one closed.
    pub fn amplitude(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.amplitude_at(t))
    }

    /// Accumulated angle `ψ(t) = 2 ∫₀ᵗ v`.
    pub fn accumulated_angle(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.angle_at(t))
    }

    pub(crate) fn amplitude_at(&self, t: f64) -> f64 {
        match &self.waveform {
            Waveform::PiecewiseConstant(segments) => {
                let i = segments.partition_point(|s| s.end <= t).min(segments.len() - 1);
                segments[i].amplitude
            }
            Waveform::HarmonicSeries(_) => {
                self.theta / 2.0
                    + self
                        .harmonics
                        .iter()
                        .map(|h| {
                            let w = 2.0 * PI * h.n as f64 * t;
                            h.cos * w.cos() + h.sin * w.sin()
                        })
                        .sum::<f64>()
            }
        }
    }

    pub(crate) fn angle_at(&self, t: f64) -> f64 {
        match &self.waveform {
            Waveform::PiecewiseConstant(segments) => {
                let mut start = 0.0;
                let mut psi = 0.0;
                for s in segments {
                    if t <= s.end {
                        return psi + 2.0 * s.amplitude * (t - start);
                    }
                    psi += 2.0 * s.amplitude * (s.end - start);
                    start = s.end;
                }
                psi
            }
            Waveform::HarmonicSeries(_) => {
                self.theta * t
                    + 2.0
                        * self
                            .harmonics
                            .iter()
                            .map(|h| {
                                let w = 2.0 * PI * h.n as f64;
                                h.cos * (w * t).sin() / w + h.sin * (1.0 - (w * t).cos()) / w
                            })
                            .sum::<f64>()
            }
        }
    }

    /// Final angle `ψ(1)`.
    pub fn final_angle(&self) -> f64 {
        self.angle_at(1.0)
    }

    /// `ψ(1) − θ`.
    pub fn angle_mismatch(&self) -> f64 {
        self.final_angle() - self.theta
    }

    pub fn check_angle(&self, tolerance: f64) -> Result<()> {
        let gap = self.angle_mismatch();
        if gap.abs() > tolerance {
            return Err(Error::InvalidPulse(format!(
                "accumulated angle {} misses theta {} by {gap:e}",
                self.final_angle(),
                self.theta
            )));
        }
        Ok(())
    }

    /// Interior switching instants (empty for smooth waveforms).
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.waveform {
            Waveform::PiecewiseConstant(segments) => segments[..segments.len() - 1].iter().map(|s| s.end).collect(),
            Waveform::HarmonicSeries(_) => Vec::new(),
        }
    }

    /// Number of oscillations of the fastest harmonic, used to size
    /// quadrature grids.
    pub fn highest_harmonic(&self) -> u32 {
        match &self.waveform {
            Waveform::PiecewiseConstant(_) => 1,
            Waveform::HarmonicSeries(s) => s.highest_harmonic(),
        }
    }

    /// Checks `v(t) = v(1 − t)` on `samples` interior points away from the
    /// switching instants.
    pub fn is_symmetric(&self, samples: usize, tol: f64) -> bool {
        let breaks = self.breakpoints();
        (1..samples).all(|k| {
            let t = k as f64 / samples as f64;
            let near_break = breaks
                .iter()
                .any(|b| (b - t).abs() < 1e-9 || (b - (1.0 - t)).abs() < 1e-9);
            near_break || (self.amplitude_at(t) - self.amplitude_at(1.0 - t)).abs() <= tol
        })
    }
}

fn check_time(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain { what: "time", value: t })
    }
}

fn validate_segments(segments: &mut [Segment], theta: f64) -> Result<()> {
    let Some(last) = segments.last_mut() else {
        return Err(Error::InvalidPulse("no segments".into()));
    };
    if (last.end - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidPulse(format!(
            "final segment must end at 1, got {}",
            last.end
        )));
    }
    last.end = 1.0;
    let mut start = 0.0;
    for s in segments.iter() {
        if !s.end.is_finite() || !s.amplitude.is_finite() {
            return Err(Error::InvalidPulse("non-finite segment value".into()));
        }
        if s.end <= start {
            return Err(Error::InvalidPulse(format!(
                "segment end times must increase strictly within (0, 1]: {} after {start}",
                s.end
            )));
        }
        start = s.end;
    }
    if theta != 0.0 && segments.iter().all(|s| s.amplitude == 0.0) {
        return Err(Error::InvalidPulse("all amplitudes vanish but theta is nonzero".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn constant_pulse_amplitude_and_angle() {
        let p = PulseShape::constant(PI);
        assert_eq!(p.amplitude(0.3).unwrap(), FRAC_PI_2);
        assert!((p.accumulated_angle(0.5).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((p.final_angle() - PI).abs() < 1e-15);
        assert_eq!(p.accumulated_angle(0.0).unwrap(), 0.0);
    }

    #[test]
    fn time_outside_window_is_a_domain_error() {
        let p = PulseShape::constant(PI);
        assert!(matches!(p.amplitude(1.2), Err(Error::Domain { .. })));
        assert!(matches!(p.amplitude(-1e-9), Err(Error::Domain { .. })));
        assert!(matches!(p.accumulated_angle(f64::NAN), Err(Error::Domain { .. })));
    }

    #[test]
    fn segments_are_right_continuous() {
        let p = PulseShape::piecewise(0.0, vec![Segment::new(0.5, 1.0), Segment::new(1.0, -1.0)]).unwrap();
        assert_eq!(p.amplitude(0.5).unwrap(), -1.0);
        assert_eq!(p.amplitude(1.0).unwrap(), -1.0);
        assert_eq!(p.amplitude(0.4999).unwrap(), 1.0);
        assert!(p.final_angle().abs() < 1e-15);
    }

    #[test]
    fn rejects_malformed_segments() {
        let bad_order = vec![Segment::new(0.6, 1.0), Segment::new(0.4, 1.0), Segment::new(1.0, 1.0)];
        assert!(PulseShape::piecewise(PI, bad_order).is_err());
        let short = vec![Segment::new(0.9, 1.0)];
        assert!(PulseShape::piecewise(PI, short).is_err());
        let zero = vec![Segment::new(1.0, 0.0)];
        assert!(PulseShape::piecewise(PI, zero).is_err());
        assert!(PulseShape::piecewise(0.0, vec![Segment::new(1.0, 0.0)]).is_ok());
        let nan = vec![Segment::new(1.0, f64::NAN)];
        assert!(PulseShape::piecewise(PI, nan).is_err());
    }

    #[test]
    fn rejects_non_unit_axis() {
        let w = Waveform::PiecewiseConstant(vec![Segment::new(1.0, 1.0)]);
        assert!(matches!(
            PulseShape::new(2.0, Vector3::new(0.0, 2.0, 0.0), w),
            Err(Error::NonUnitAxis(_))
        ));
    }

    #[test]
    fn symmetric_first_order_ansatz_vanishes_at_edges() {
        let p = PulseShape::harmonic(PI, HarmonicAnsatz::SymmetricFirstOrder, vec![-2.159224]).unwrap();
        assert!(p.amplitude(0.0).unwrap().abs() < 1e-14);
        assert!(p.amplitude(1.0).unwrap().abs() < 1e-13);
        assert!((p.final_angle() - PI).abs() < 1e-14);
        assert!(p.is_symmetric(101, 1e-12));
    }

    #[test]
    fn harmonic_ansatz_parameter_counts() {
        assert!(PulseShape::harmonic(PI, HarmonicAnsatz::SymmetricSecondOrder, vec![1.0, 2.0]).is_err());
        assert!(PulseShape::harmonic(PI, HarmonicAnsatz::Fourier, vec![1.0]).is_err());
        let p = PulseShape::harmonic(PI, HarmonicAnsatz::Fourier, vec![1.0, 0.5, 0.0, 2.0]).unwrap();
        assert_eq!(p.highest_harmonic(), 2);
        assert!((p.final_angle() - PI).abs() < 1e-14);
        assert!(!p.is_symmetric(50, 1e-9));
    }

    #[test]
    fn angle_check_reports_mismatch() {
        let p = PulseShape::piecewise(PI, vec![Segment::new(1.0, 1.0)]).unwrap();
        assert!(p.check_angle(1e-3).is_err());
        assert!(PulseShape::constant(FRAC_PI_2).check_angle(1e-12).is_ok());
    }
}
