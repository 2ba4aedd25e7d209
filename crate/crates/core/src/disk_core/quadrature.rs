//! Composite Gauss-Legendre rules on angular intervals.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, computed by Newton
/// iteration on the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// How panels are laid out along the integration interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PanelLayout {
    /// Equal-length panels.
    Uniform,
    /// Panel lengths shrink geometrically toward both interval endpoints;
    /// adjacent panels differ by `ratio`.
    EndpointGraded { ratio: f64 },
}

/// A composite Gauss-Legendre rule.
///
/// Total node count is `panels * nodes_per_panel`; for any interval the
/// weights sum to the interval length.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    panels: usize,
    nodes_per_panel: usize,
    layout: PanelLayout,
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
}

impl QuadratureRule {
    pub const DEFAULT_NODES_PER_PANEL: usize = 16;

    pub fn new(panels: usize, nodes_per_panel: usize) -> Result<Self> {
        Self::with_layout(panels, nodes_per_panel, PanelLayout::Uniform)
    }

    pub fn with_layout(panels: usize, nodes_per_panel: usize, layout: PanelLayout) -> Result<Self> {
        if panels < 1 {
            return invalid("quadrature needs at least one panel");
        }
        if nodes_per_panel < 2 {
            return invalid("quadrature needs at least two nodes per panel");
        }
        if let PanelLayout::EndpointGraded { ratio } = layout {
            if !(ratio.is_finite() && ratio >= 1.0) {
                return invalid(format!("grading ratio must be >= 1, got {ratio}"));
            }
            if panels < 2 {
                return invalid("endpoint grading needs at least two panels");
            }
        }
        let (ref_nodes, ref_weights) = gauss_legendre(nodes_per_panel);
        Ok(Self {
            panels,
            nodes_per_panel,
            layout,
            ref_nodes,
            ref_weights,
        })
    }

    /// Rule sized for a polynomial of the given degree in `e^{i theta}`:
    /// `max(8, ceil(degree / 4))` uniform panels of 16 nodes.
    pub fn for_degree(degree: usize) -> Self {
        let panels = 8.max(degree.div_ceil(4));
        Self::new(panels, Self::DEFAULT_NODES_PER_PANEL).expect("valid default rule")
    }

    /// 24 panels graded by a factor 2 toward each endpoint, for integrands that
    /// concentrate at the ends of the interval.
    pub fn endpoint_graded() -> Self {
        Self::with_layout(
            24,
            Self::DEFAULT_NODES_PER_PANEL,
            PanelLayout::EndpointGraded { ratio: 2.0 },
        )
        .expect("valid graded rule")
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    pub fn node_count(&self) -> usize {
        self.panels * self.nodes_per_panel
    }

    pub fn layout(&self) -> PanelLayout {
        self.layout
    }

    fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        match self.layout {
            PanelLayout::Uniform => (0..=self.panels)
                .map(|i| a + (b - a) * i as f64 / self.panels as f64)
                .collect(),
            PanelLayout::EndpointGraded { ratio } => {
                // Left half graded toward `a`, right half toward `b`; an odd
                // panel count puts the extra panel on the right.
                let left = self.panels / 2;
                let right = self.panels - left;
                let mid = 0.5 * (a + b);
                let mut pts = graded(a, mid, left, ratio);
                let mut r = graded(b, mid, right, ratio);
                r.reverse();
                pts.pop();
                pts.extend(r);
                pts
            }
        }
    }

    /// Nodes and weights of the rule mapped to `[a, b]`.
    pub fn points(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let bp = self.breakpoints(a, b);
        let mut out = Vec::with_capacity(self.node_count());
        for w in bp.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (x, wt) in self.ref_nodes.iter().zip(&self.ref_weights) {
                out.push((mid + half * x, half * wt));
            }
        }
        out
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.points(a, b).into_iter().map(|(x, w)| w * f(x)).sum()
    }
}

/// Breakpoints from `from` toward `to` with panel lengths growing by `ratio`.
fn graded(from: f64, to: f64, panels: usize, ratio: f64) -> Vec<f64> {
    let total: f64 = (0..panels).map(|i| ratio.powi(i as i32)).sum();
    let h0 = (to - from) / total;
    let mut pts = Vec::with_capacity(panels + 1);
    let mut x = from;
    pts.push(x);
    for i in 0..panels {
        x += h0 * ratio.powi(i as i32);
        pts.push(x);
    }
    *pts.last_mut().unwrap() = to;
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reference_rule_is_exact_for_low_degree() {
        for n in 2..=20 {
            let (x, w) = gauss_legendre(n);
            assert_relative_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
            // exact through degree 2n - 1
            let deg = 2 * n - 2;
            let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert_relative_eq!(integral, 2.0 / (deg as f64 + 1.0), epsilon = 1e-13);
        }
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for rule in [
            QuadratureRule::new(5, 7).unwrap(),
            QuadratureRule::endpoint_graded(),
            QuadratureRule::with_layout(7, 4, PanelLayout::EndpointGraded { ratio: 3.0 }).unwrap(),
        ] {
            let pts = rule.points(-0.3, 2.2);
            assert_eq!(pts.len(), rule.node_count());
            let s: f64 = pts.iter().map(|p| p.1).sum();
            assert_relative_eq!(s, 2.5, epsilon = 1e-13);
            assert!(pts.iter().all(|p| p.0 > -0.3 && p.0 < 2.2));
        }
    }

    #[test]
    fn graded_rule_resolves_endpoint_peak() {
        let rule = QuadratureRule::endpoint_graded();
        let n = 400.0;
        let got = rule.integrate(0.0, 1.0, |x| (n * (x - 1.0)).exp());
        let exact = (1.0 - (-n).exp()) / n;
        assert_relative_eq!(got, exact, max_relative = 1e-12);
    }

    #[test]
    fn rejects_degenerate_rules() {
        assert!(QuadratureRule::new(0, 4).is_err());
        assert!(QuadratureRule::new(3, 1).is_err());
        assert!(QuadratureRule::with_layout(1, 4, PanelLayout::EndpointGraded { ratio: 2.0 }).is_err());
    }

    #[test]
    fn default_sizing() {
        assert_eq!(QuadratureRule::for_degree(3).panels(), 8);
        assert_eq!(QuadratureRule::for_degree(128).panels(), 32);
        assert_eq!(QuadratureRule::for_degree(129).panels(), 33);
        assert_eq!(QuadratureRule::for_degree(10).nodes_per_panel(), 16);
    }
}
