//! First- and second-order correction integrals.
//!
//! Couplings, bath operators and `[H_b, Ā_j]` prefactors are stripped: only
//! the scalar integrals are computed, and a pulse decouples to a given order
//! for every bath exactly when the corresponding integrals vanish. All
//! integrals are on the normalised window (`τ_p = 1`); first-order ones scale
//! with `τ_p`, second-order ones with `τ_p²`.
//!
//! For a pulse about `ŷ` and a coupling along `ẑ` only five integrals
//! survive:
//!
//! | name  | integrand                                        |
//! |-------|--------------------------------------------------|
//! | η11   | `sin ψ(t)`                                       |
//! | η12   | `cos ψ(t)`                                       |
//! | η21   | `t sin ψ(t)`                                     |
//! | η22   | `t cos ψ(t)`                                     |
//! | η23   | `sin(ψ(t₁) − ψ(t₂)) sgn(t₁ − t₂)` over the square |
//!
//! η23 is evaluated through `2 ∫ [sin ψ C − cos ψ S]` with the running
//! integrals `C(t) = ∫₀ᵗ cos ψ`, `S(t) = ∫₀ᵗ sin ψ`.

use std::fmt;

use nalgebra::{Matrix3, Vector2};

use crate::error::{Error, Result};
use crate::pulse::{PulseShape, Waveform};
use crate::quadrature::{refine_until, CompositeRule, PANEL_ORDER};
use crate::rotation::{rotation_matrix, AxisAngle, Trajectory};

/// Agreement required between successive quadrature refinements.
pub const QUADRATURE_TOLERANCE: f64 = 1e-11;
/// Gauss-Legendre nodes per period of the fastest harmonic at the start of
/// the refinement.
pub const NODES_PER_PERIOD: usize = 64;
const MAX_DOUBLINGS: usize = 10;

/// Identifies one of the five specialised correction integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Residual {
    Eta11,
    Eta12,
    Eta21,
    Eta22,
    Eta23,
}

impl Residual {
    pub const ALL: [Residual; 5] = [Self::Eta11, Self::Eta12, Self::Eta21, Self::Eta22, Self::Eta23];

    pub fn name(self) -> &'static str {
        match self {
            Self::Eta11 => "eta11",
            Self::Eta12 => "eta12",
            Self::Eta21 => "eta21",
            Self::Eta22 => "eta22",
            Self::Eta23 => "eta23",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == name)
    }

    pub fn is_second_order(self) -> bool {
        matches!(self, Self::Eta21 | Self::Eta22 | Self::Eta23)
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The five correction integrals of a `ŷ` pulse under `ẑ` coupling.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CorrectionVector {
    pub eta11: f64,
    pub eta12: f64,
    pub eta21: f64,
    pub eta22: f64,
    pub eta23: f64,
}

impl CorrectionVector {
    pub fn get(&self, r: Residual) -> f64 {
        match r {
            Residual::Eta11 => self.eta11,
            Residual::Eta12 => self.eta12,
            Residual::Eta21 => self.eta21,
            Residual::Eta22 => self.eta22,
            Residual::Eta23 => self.eta23,
        }
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.eta11, self.eta12, self.eta21, self.eta22, self.eta23]
    }

    pub fn first_order_norm(&self) -> f64 {
        self.eta11.abs().max(self.eta12.abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// The same integrals for a pulse stretched to duration `tau_p`.
    pub fn at_duration(&self, tau_p: f64) -> Self {
        let t2 = tau_p * tau_p;
        Self {
            eta11: self.eta11 * tau_p,
            eta12: self.eta12 * tau_p,
            eta21: self.eta21 * t2,
            eta22: self.eta22 * t2,
            eta23: self.eta23 * t2,
        }
    }

    pub fn max_gap(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Columns of the toggling-frame matrix at time `t`: column `j` is the
/// rotated coupling direction `j`, entry `(i, j)` is `n_{i,j}(t)`.
pub fn n_vector(pulse: &PulseShape, t: f64) -> Result<Matrix3<f64>> {
    let psi = pulse.accumulated_angle(t)?;
    let aa = AxisAngle::new(pulse.axis(), psi)?;
    Ok(rotation_matrix(&aa))
}

fn require_y_axis(pulse: &PulseShape) -> Result<()> {
    if pulse.is_y_axis() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "specialised correction integrals need a pulse about the y axis; use general_residuals".into(),
        ))
    }
}

/// The five specialised integrals: closed form for piecewise-constant
/// pulses, refined Gauss-Legendre quadrature otherwise.
pub fn eta_specific(pulse: &PulseShape) -> Result<CorrectionVector> {
    require_y_axis(pulse)?;
    match pulse.waveform() {
        Waveform::PiecewiseConstant(_) => eta_closed_form(pulse),
        Waveform::HarmonicSeries(_) => Ok(eta_adaptive(pulse)),
    }
}

/// Quadrature route, refined until successive results agree to
/// [`QUADRATURE_TOLERANCE`]. Works for every waveform kind.
pub fn eta_adaptive(pulse: &PulseShape) -> CorrectionVector {
    let start = NODES_PER_PERIOD * pulse.highest_harmonic() as usize / PANEL_ORDER;
    refine_until(
        start,
        QUADRATURE_TOLERANCE,
        MAX_DOUBLINGS,
        |panels| eta_quadrature(pulse, panels),
        |a, b| a.max_gap(b),
    )
    .0
}

/// Quadrature route with `panels_per_unit` panels of [`PANEL_ORDER`] nodes,
/// split at the switching instants.
pub fn eta_quadrature(pulse: &PulseShape, panels_per_unit: usize) -> CorrectionVector {
    let rule = CompositeRule::new(&pulse.breakpoints(), panels_per_unit, PANEL_ORDER);
    let cum = rule.cumulative(
        |t| {
            let (s, c) = pulse.angle_at(t).sin_cos();
            Vector2::new(c, s)
        },
        Vector2::zeros(),
    );
    let mut eta = CorrectionVector::default();
    for k in 0..cum.nodes.len() {
        let (t, w) = (cum.nodes[k], cum.weights[k]);
        let (c, s) = (cum.values[k].x, cum.values[k].y);
        let (big_c, big_s) = (cum.running[k].x, cum.running[k].y);
        eta.eta11 += w * s;
        eta.eta12 += w * c;
        eta.eta21 += w * t * s;
        eta.eta22 += w * t * c;
        eta.eta23 += 2.0 * w * (s * big_c - c * big_s);
    }
    eta
}

/// Exact per-segment antiderivatives for piecewise-constant pulses.
pub fn eta_closed_form(pulse: &PulseShape) -> Result<CorrectionVector> {
    require_y_axis(pulse)?;
    let Some(segments) = pulse.segments() else {
        return Err(Error::Unsupported(
            "closed form needs a piecewise-constant pulse".into(),
        ));
    };
    let mut eta = CorrectionVector::default();
    let (mut start, mut psi0) = (0.0_f64, 0.0_f64);
    // running C(t) = ∫ cos ψ, S(t) = ∫ sin ψ
    let (mut big_c, mut big_s) = (0.0_f64, 0.0_f64);
    for seg in segments {
        let len = seg.end - start;
        let rate = 2.0 * seg.amplitude;
        let m = SegmentMoments::new(psi0, rate, start, len);
        eta.eta11 += m.int_sin;
        eta.eta12 += m.int_cos;
        eta.eta21 += m.int_t_sin;
        eta.eta22 += m.int_t_cos;
        // ∫ sinψ C − cosψ S over the segment, with C = C0 + ∫_{start}^t cos ψ …
        eta.eta23 += 2.0 * (big_c * m.int_sin - big_s * m.int_cos + one_minus_cos_integral(rate, len));
        big_c += m.int_cos;
        big_s += m.int_sin;
        psi0 += rate * len;
        start = seg.end;
    }
    Ok(eta)
}

/// `∫₀ᴸ (1 − cos(ω u)) / ω du`-type term: `∫₀ᴸ ∫₀ᵘ sin(ω(u − r)) dr du`.
fn one_minus_cos_integral(rate: f64, len: f64) -> f64 {
    let x = rate * len;
    if x.abs() < 1e-3 {
        // ω L³/6 − ω³ L⁵/120 + ω⁵ L⁷/5040
        let x2 = x * x;
        rate * len.powi(3) * (1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0)
    } else {
        (len - x.sin() / rate) / rate
    }
}

/// Integrals of `sin ψ`, `cos ψ`, `t sin ψ`, `t cos ψ` over one segment
/// where `ψ = ψ₀ + ω (t − t₀)`.
struct SegmentMoments {
    int_sin: f64,
    int_cos: f64,
    int_t_sin: f64,
    int_t_cos: f64,
}

impl SegmentMoments {
    fn new(psi0: f64, rate: f64, t0: f64, len: f64) -> Self {
        let (s0, c0) = psi0.sin_cos();
        let x = rate * len;
        // with u = t − t0: ∫₀ᴸ sin(ψ₀+ωu) du etc. via sin/cos moments of ωu
        let (i0s, i0c, i1s, i1c) = if x.abs() < 1e-4 {
            // series in ω: ∫ uᵏ sin(ωu), ∫ uᵏ cos(ωu)
            let l = len;
            let w = rate;
            let i0s = w * l * l / 2.0 - w.powi(3) * l.powi(4) / 24.0;
            let i0c = l - w * w * l.powi(3) / 6.0 + w.powi(4) * l.powi(5) / 120.0;
            let i1s = w * l.powi(3) / 3.0 - w.powi(3) * l.powi(5) / 30.0;
            let i1c = l * l / 2.0 - w * w * l.powi(4) / 8.0 + w.powi(4) * l.powi(6) / 144.0;
            (i0s, i0c, i1s, i1c)
        } else {
            let (sx, cx) = x.sin_cos();
            let w = rate;
            let i0s = (1.0 - cx) / w;
            let i0c = sx / w;
            let i1s = (sx - x * cx) / (w * w);
            let i1c = (cx + x * sx - 1.0) / (w * w);
            (i0s, i0c, i1s, i1c)
        };
        // sin(ψ₀ + ωu) = s0 cos ωu + c0 sin ωu ; cos(ψ₀ + ωu) = c0 cos ωu − s0 sin ωu
        let int_sin = s0 * i0c + c0 * i0s;
        let int_cos = c0 * i0c - s0 * i0s;
        let u_sin = s0 * i1c + c0 * i1s;
        let u_cos = c0 * i1c - s0 * i1s;
        Self {
            int_sin,
            int_cos,
            int_t_sin: t0 * int_sin + u_sin,
            int_t_cos: t0 * int_cos + u_cos,
        }
    }
}

/// The general first- and second-order system for an arbitrary rotation
/// path and arbitrary couplings: 9 + 9 + 18 + 3 = 39 scalar integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralResiduals {
    /// `∫ n_{i,j}`, indexed `[i][j]`.
    pub first_order: Matrix3<f64>,
    /// `∫ t n_{i,j}`, indexed `[i][j]`.
    pub second_order_a: Matrix3<f64>,
    /// `∬ Σ_{jk} ε_{ijk} n_{j,l}(t₁) n_{k,m}(t₂) sgn(t₁ − t₂)` for every `i`
    /// and `l ≤ m`, stored `[i][pair]` with pairs in [`GeneralResiduals::LM_PAIRS`] order.
    /// Diagonal pairs hold the raw integral, without the factor two that the
    /// symmetrised operator prefactor `Ā_l Ā_l + Ā_l Ā_l` would add.
    pub second_order_b: [[f64; 6]; 3],
    /// `Σ_i ∬ n_{i,j}(t₁) n_{i,k}(t₂) sgn(t₁ − t₂)` for `(j, k)` in
    /// [`GeneralResiduals::JK_PAIRS`] order.
    pub second_order_c: [f64; 3],
}

impl GeneralResiduals {
    pub const LM_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    pub const JK_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

    pub fn len(&self) -> usize {
        9 + 9 + 18 + 3
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All 39 values in a fixed order: first order, second order (a), (b), (c).
    pub fn to_vec(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(39);
        for m in [&self.first_order, &self.second_order_a] {
            for i in 0..3 {
                for j in 0..3 {
                    out.push(m[(i, j)]);
                }
            }
        }
        for row in &self.second_order_b {
            out.extend_from_slice(row);
        }
        out.extend_from_slice(&self.second_order_c);
        out
    }

    pub fn max_gap(&self, other: &Self) -> f64 {
        self.to_vec()
            .iter()
            .zip(other.to_vec())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.to_vec().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

/// Levi-Civita symbol on `{0, 1, 2}`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// All 39 integrals with `panels_per_unit` quadrature panels.
pub fn general_residuals_with<T: Trajectory + ?Sized>(traj: &T, panels_per_unit: usize) -> GeneralResiduals {
    let rule = CompositeRule::new(&traj.breakpoints(), panels_per_unit, PANEL_ORDER);
    let cum = rule.cumulative(|t| rotation_matrix(&traj.at(t)), Matrix3::zeros());
    let total = cum.total;

    let mut second_a = Matrix3::zeros();
    // sgn-weighted double integral of n_{a,b}(t1) n_{c,d}(t2):
    // ∫ n_{a,b}(t) (2 N_{c,d}(t) − N_{c,d}(1)) dt
    let mut signed = [[[[0.0_f64; 3]; 3]; 3]; 3];
    for k in 0..cum.nodes.len() {
        let (t, w) = (cum.nodes[k], cum.weights[k]);
        let n = &cum.values[k];
        let tail = cum.running[k] * 2.0 - total;
        second_a += n * (w * t);
        for a in 0..3 {
            for b in 0..3 {
                let wn = w * n[(a, b)];
                for c in 0..3 {
                    for d in 0..3 {
                        signed[a][b][c][d] += wn * tail[(c, d)];
                    }
                }
            }
        }
    }

    let mut second_b = [[0.0; 6]; 3];
    for (i, row) in second_b.iter_mut().enumerate() {
        for (p, &(l, m)) in GeneralResiduals::LM_PAIRS.iter().enumerate() {
            let mut acc = 0.0;
            for j in 0..3 {
                for k in 0..3 {
                    let e = levi_civita(i, j, k);
                    if e != 0.0 {
                        acc += e * signed[j][l][k][m];
                    }
                }
            }
            row[p] = acc;
        }
    }
    let mut second_c = [0.0; 3];
    for (p, &(j, k)) in GeneralResiduals::JK_PAIRS.iter().enumerate() {
        second_c[p] = (0..3).map(|i| signed[i][j][i][k]).sum();
    }
    GeneralResiduals {
        first_order: total,
        second_order_a: second_a,
        second_order_b: second_b,
        second_order_c: second_c,
    }
}

/// All 39 integrals, with the panel density doubled until successive
/// results agree to [`QUADRATURE_TOLERANCE`].
pub fn general_residuals<T: Trajectory + ?Sized>(traj: &T) -> GeneralResiduals {
    refine_until(
        NODES_PER_PERIOD / PANEL_ORDER,
        QUADRATURE_TOLERANCE,
        MAX_DOUBLINGS,
        |panels| general_residuals_with(traj, panels),
        |a, b| a.max_gap(b),
    )
    .0
}
