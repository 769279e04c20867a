//! Composite Gauss-Legendre rules on the normalised pulse window `[0, 1]`.
//!
//! Panels never straddle a breakpoint of the waveform, so piecewise-smooth
//! integrands are integrated spectrally on each piece. The cumulative variant
//! returns the running integral `F(t) = ∫₀ᵗ f` at every outer node, which is
//! what the sign-weighted double integrals reduce to.

use std::num::NonZeroUsize;
use std::ops::{AddAssign, Mul};

use gauss_quad::GaussLegendre;

/// Default number of nodes per panel.
pub const PANEL_ORDER: usize = 8;

#[derive(Debug, Clone)]
pub struct CompositeRule {
    order: usize,
    reference: Vec<(f64, f64)>,
    edges: Vec<f64>,
}

/// Running integrals of a (possibly vector valued) integrand.
#[derive(Debug, Clone)]
pub struct Cumulative<T> {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Integrand at each outer node.
    pub values: Vec<T>,
    /// `∫₀^{node} f` at each outer node.
    pub running: Vec<T>,
    pub total: T,
}

impl CompositeRule {
    /// Splits every interval between consecutive `breaks` (interior points of
    /// `(0, 1)`, any order) into equal panels, roughly `panels_per_unit`
    /// panels per unit length and at least one per interval.
    pub fn new(breaks: &[f64], panels_per_unit: usize, order: usize) -> Self {
        let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&b| b > 0.0 && b < 1.0).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut bounds = Vec::with_capacity(cuts.len() + 2);
        bounds.push(0.0);
        bounds.extend(cuts);
        bounds.push(1.0);

        let mut edges = vec![0.0];
        for w in bounds.windows(2) {
            let (a, b) = (w[0], w[1]);
            let n = ((b - a) * panels_per_unit as f64).ceil().max(1.0) as usize;
            for k in 1..=n {
                edges.push(if k == n { b } else { a + (b - a) * k as f64 / n as f64 });
            }
        }
        let order = order.max(1);
        let rule = GaussLegendre::new(NonZeroUsize::new(order).unwrap());
        let mut reference = rule.as_node_weight_pairs().to_vec();
        reference.sort_by(|x, y| x.0.total_cmp(&y.0));
        Self {
            order,
            reference,
            edges,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn panel_count(&self) -> usize {
        self.edges.len() - 1
    }

    /// All `(node, weight)` pairs in increasing node order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.panel_count() * self.order);
        for w in self.edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let half = 0.5 * (b - a);
            for &(x, wt) in &self.reference {
                out.push((a + half * (x + 1.0), half * wt));
            }
        }
        out
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.points().into_iter().map(|(t, w)| w * f(t)).sum()
    }

    /// Running integral of `f` at every outer node. Each partial panel
    /// `[a, node]` is integrated with the same Gauss-Legendre order, so the
    /// cost is `order + 1` evaluations per outer node.
    pub fn cumulative<T, F>(&self, mut f: F, zero: T) -> Cumulative<T>
    where
        T: Copy + AddAssign + Mul<f64, Output = T>,
        F: FnMut(f64) -> T,
    {
        let n = self.panel_count() * self.order;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        let mut running = Vec::with_capacity(n);
        let mut prefix = zero;
        for w in self.edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let half = 0.5 * (b - a);
            let mut panel = zero;
            for &(x, wt) in &self.reference {
                let t = a + half * (x + 1.0);
                let value = f(t);
                panel += value * (half * wt);

                let sub_half = 0.5 * (t - a);
                let mut partial = prefix;
                for &(y, wy) in &self.reference {
                    partial += f(a + sub_half * (y + 1.0)) * (sub_half * wy);
                }
                nodes.push(t);
                weights.push(half * wt);
                values.push(value);
                running.push(partial);
            }
            prefix += panel;
        }
        Cumulative {
            nodes,
            weights,
            values,
            running,
            total: prefix,
        }
    }
}

/// Doubles the panel density, starting from `start`, until two successive
/// results differ by less than `tol` according to `gap`, or `max_doublings`
/// is hit. Returns the last result and the final density.
pub fn refine_until<T, E, D>(start: usize, tol: f64, max_doublings: usize, mut eval: E, gap: D) -> (T, usize)
where
    E: FnMut(usize) -> T,
    D: Fn(&T, &T) -> f64,
{
    let mut density = start.max(1);
    let mut previous = eval(density);
    for _ in 0..max_doublings {
        density *= 2;
        let next = eval(density);
        let converged = gap(&previous, &next) < tol;
        previous = next;
        if converged {
            break;
        }
    }
    (previous, density)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let rule = CompositeRule::new(&[0.3], 1, 4);
        let got = rule.integrate(|t| 7.0 * t.powi(6) - 2.0 * t);
        assert!((got - 0.0).abs() < 1e-14, "{got}");
    }

    #[test]
    fn panels_respect_breaks() {
        let rule = CompositeRule::new(&[0.25, 0.7, 0.25], 4, 2);
        let pts = rule.points();
        assert!(pts.windows(2).all(|w| w[0].0 < w[1].0));
        // [0,.25] -> 1 panel, [.25,.7] -> 2, [.7,1] -> 2
        assert_eq!(rule.panel_count(), 5);
        let total: f64 = pts.iter().map(|p| p.1).sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cumulative_of_cosine() {
        let rule = CompositeRule::new(&[], 16, 8);
        let cum = rule.cumulative(|t| (5.0 * t).cos(), 0.0);
        for (t, r) in cum.nodes.iter().zip(&cum.running) {
            assert!((r - (5.0 * t).sin() / 5.0).abs() < 1e-14);
        }
        assert!((cum.total - 5.0_f64.sin() / 5.0).abs() < 1e-14);
    }

    #[test]
    fn discontinuous_integrand_is_exact_with_breaks() {
        let f = |t: f64| if t < 1.0 / 3.0 { 2.0 } else { -1.0 };
        let rule = CompositeRule::new(&[1.0 / 3.0], 1, 3);
        assert!((rule.integrate(f) - 0.0).abs() < 1e-15);
    }
}
