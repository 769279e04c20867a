//! Brute-force references shared by the integration tests.
#![allow(dead_code)]

use std::num::NonZeroUsize;

use decoupling_pulses::linalg::{expm_hermitian, identity, kron, pauli_dyn, CMatrix};
use decoupling_pulses::pulse::PulseShape;
use decoupling_pulses::qsim::BathSpec;
use gauss_quad::GaussLegendre;
use num_complex::Complex64;

fn gl(order: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(NonZeroUsize::new(order).unwrap())
        .iter()
        .map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect()
}

fn intervals(pulse: &PulseShape) -> Vec<(f64, f64)> {
    let mut b = vec![0.0];
    b.extend(pulse.breakpoints());
    b.push(1.0);
    b.windows(2).map(|w| (w[0], w[1])).collect()
}

/// `∬ f(t₁, t₂) sgn(t₁ − t₂)` over the unit square as an honest
/// two-dimensional rule: the region `t₁ > t₂` is cut into rectangles and
/// triangles on which the integrand is smooth, each covered by a tensor
/// Gauss-Legendre rule with `sub × sub` cells of `order²` nodes.
pub fn sgn_double_integral(pulse: &PulseShape, sub: usize, order: usize, f: impl Fn(f64, f64) -> f64) -> f64 {
    let rule = gl(order);
    let g = |t1: f64, t2: f64| f(t1, t2) - f(t2, t1);
    let iv = intervals(pulse);
    let mut total = 0.0;
    for (a, &(a0, a1)) in iv.iter().enumerate() {
        for &(b0, b1) in &iv[..a] {
            total += rectangle(&rule, sub, (a0, a1), (b0, b1), &g);
        }
        total += triangle(&rule, sub, (a0, a1), &g);
    }
    total
}

fn rectangle(rule: &[(f64, f64)], sub: usize, x: (f64, f64), y: (f64, f64), g: &impl Fn(f64, f64) -> f64) -> f64 {
    let (hx, hy) = ((x.1 - x.0) / sub as f64, (y.1 - y.0) / sub as f64);
    let mut s = 0.0;
    for i in 0..sub {
        for j in 0..sub {
            for &(u, wu) in rule {
                for &(v, wv) in rule {
                    let t1 = x.0 + (i as f64 + u) * hx;
                    let t2 = y.0 + (j as f64 + v) * hy;
                    s += wu * wv * hx * hy * g(t1, t2);
                }
            }
        }
    }
    s
}

/// `{ (t₁, t₂) : lo ≤ t₂ < t₁ ≤ hi }` via `t₂ = lo + (t₁ − lo) u`.
fn triangle(rule: &[(f64, f64)], sub: usize, (lo, hi): (f64, f64), g: &impl Fn(f64, f64) -> f64) -> f64 {
    let h = (hi - lo) / sub as f64;
    let hu = 1.0 / sub as f64;
    let mut s = 0.0;
    for i in 0..sub {
        for j in 0..sub {
            for &(x, wx) in rule {
                for &(y, wy) in rule {
                    let t1 = lo + (i as f64 + x) * h;
                    let u = (j as f64 + y) * hu;
                    let jac = t1 - lo;
                    s += wx * wy * h * hu * jac * g(t1, lo + jac * u);
                }
            }
        }
    }
    s
}

/// `∫₀¹ f` with a composite rule aligned to the pulse breakpoints.
pub fn single_integral(pulse: &PulseShape, sub: usize, order: usize, f: impl Fn(f64) -> f64) -> f64 {
    let rule = gl(order);
    let mut s = 0.0;
    for (a, b) in intervals(pulse) {
        let h = (b - a) / sub as f64;
        for i in 0..sub {
            for &(x, w) in &rule {
                s += w * h * f(a + (i as f64 + x) * h);
            }
        }
    }
    s
}

/// Lab-frame generator `τ_p H_sys + v σ_â ⊗ 1` at amplitude `v`, assembled
/// from the bath pieces.
pub fn lab_generator(pulse: &PulseShape, bath: &BathSpec, tau_p: f64, v: f64) -> CMatrix {
    let s = pauli_dyn();
    let db = bath.dimension();
    let mut h0 = kron(&identity(2), bath.h_b());
    for j in 0..3 {
        let l = bath.lambda()[j];
        if l != 0.0 {
            h0 += kron(&s[j], &(bath.operator(j) * Complex64::from(l)));
        }
    }
    h0 *= Complex64::from(tau_p);
    let a = pulse.axis();
    let spin = &s[0] * Complex64::from(a.x) + &s[1] * Complex64::from(a.y) + &s[2] * Complex64::from(a.z);
    h0 + kron(&spin, &identity(db)) * Complex64::from(v)
}

/// Uniform midpoint exponentials of the full lab-frame generator, ignoring
/// switching instants.
pub fn naive_midpoint(pulse: &PulseShape, bath: &BathSpec, tau_p: f64, steps: usize) -> CMatrix {
    let dt = 1.0 / steps as f64;
    let mut u = identity(2 * bath.dimension());
    for k in 0..steps {
        let t = (k as f64 + 0.5) * dt;
        let g = lab_generator(pulse, bath, tau_p, pulse.amplitude(t).unwrap());
        u = expm_hermitian(&g, dt) * u;
    }
    u
}

/// Midpoint exponentials on a uniform grid inside each segment, `steps`
/// cells per unit of time.
pub fn aligned_midpoint(pulse: &PulseShape, bath: &BathSpec, tau_p: f64, steps: usize) -> CMatrix {
    let mut u = identity(2 * bath.dimension());
    for (a, b) in intervals(pulse) {
        let n = ((b - a) * steps as f64).ceil().max(1.0) as usize;
        let h = (b - a) / n as f64;
        for k in 0..n {
            let v = pulse.amplitude(a + (k as f64 + 0.5) * h).unwrap();
            u = expm_hermitian(&lab_generator(pulse, bath, tau_p, v), h) * u;
        }
    }
    u
}

/// One exact exponential per constant segment.
pub fn segment_product(pulse: &PulseShape, bath: &BathSpec, tau_p: f64) -> CMatrix {
    let mut u = identity(2 * bath.dimension());
    let mut start = 0.0;
    for s in pulse.segments().expect("piecewise pulse") {
        u = expm_hermitian(&lab_generator(pulse, bath, tau_p, s.amplitude), s.end - start) * u;
        start = s.end;
    }
    u
}
