//! Neumann-Robin problem on the disk and the Robin stability experiment.
//!
//! `u` is harmonic in the disk, `d_n u = phi` on the measurement arc `I` and
//! `d_n u + q u = 0` on `J = T \ I`. Writing `u = a_0 + sum r^m (a_m cos m t + b_m sin m t)`
//! with `m <= M`, both conditions become `d_n u + q u = phi` at `N` equispaced
//! boundary angles (with `phi = 0` on `J`, `q = 0` on `I`), solved in the
//! least-squares sense.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::disk_core::{signed_angle, Arc, QuadratureRule};
use crate::error::{invalid, Error, Result};

/// Smallest admissible ratio `sigma_min / sigma_max` of the collocation matrix.
pub const RANK_TOL: f64 = 1e-12;
/// RMS collocation residual above which a solve carries a warning.
pub const RESIDUAL_WARN: f64 = 1e-2;
/// Grid size used by [`admissible_check`] and the dense residual.
pub const DENSE_GRID: usize = 8192;

fn smoothstep(x: f64) -> f64 {
    x * x * x * (10.0 + x * (-15.0 + 6.0 * x))
}

fn smoothstep_slope(x: f64) -> f64 {
    30.0 * x * x * (1.0 - x) * (1.0 - x)
}

/// Plateau bump: `height` within `half_width - ramp` of `center`, zero beyond
/// `half_width`, joined by the quintic `6x^5 - 15x^4 + 10x^3`. It is `C^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplineBump {
    pub center: f64,
    pub half_width: f64,
    pub ramp: f64,
    pub height: f64,
}

impl SplineBump {
    pub fn new(center: f64, half_width: f64, ramp: f64, height: f64) -> Result<Self> {
        let b = Self {
            center,
            half_width,
            ramp,
            height,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.center, self.half_width, self.ramp, self.height]
            .iter()
            .all(|v| v.is_finite())
        {
            return invalid("bump parameters must be finite");
        }
        if !(self.ramp > 0.0 && self.ramp <= self.half_width && self.half_width < PI) {
            return invalid(format!(
                "bump needs 0 < ramp <= half_width < pi, got ramp {} and half_width {}",
                self.ramp, self.half_width
            ));
        }
        Ok(())
    }

    pub fn value(&self, theta: f64) -> f64 {
        let d = signed_angle(theta - self.center).abs();
        if d >= self.half_width {
            0.0
        } else if d <= self.half_width - self.ramp {
            self.height
        } else {
            self.height * smoothstep((self.half_width - d) / self.ramp)
        }
    }

    pub fn derivative(&self, theta: f64) -> f64 {
        let s = signed_angle(theta - self.center);
        let d = s.abs();
        if d >= self.half_width || d <= self.half_width - self.ramp {
            0.0
        } else {
            -s.signum() * self.height * smoothstep_slope((self.half_width - d) / self.ramp) / self.ramp
        }
    }

    /// `max |value'| = 15 |height| / (8 ramp)`.
    pub fn max_slope(&self) -> f64 {
        15.0 * self.height.abs() / (8.0 * self.ramp)
    }

    /// Closed support `[center - half_width, center + half_width]` as an arc.
    pub fn support(&self) -> Result<Arc> {
        Arc::new(self.center, self.half_width / PI)
    }
}

/// A real function of the boundary angle together with its derivative.
#[derive(Debug, Clone)]
pub enum Profile {
    Zero,
    Bump(SplineBump),
    /// `sum_i w_i p_i`.
    Combination(Vec<(f64, Profile)>),
    /// Closed-form value and derivative.
    Explicit {
        value: fn(f64) -> f64,
        derivative: fn(f64) -> f64,
    },
}

impl Profile {
    pub fn value(&self, theta: f64) -> f64 {
        match self {
            Profile::Zero => 0.0,
            Profile::Bump(b) => b.value(theta),
            Profile::Combination(terms) => terms.iter().map(|(w, p)| w * p.value(theta)).sum(),
            Profile::Explicit { value, .. } => value(theta),
        }
    }

    pub fn derivative(&self, theta: f64) -> f64 {
        match self {
            Profile::Zero => 0.0,
            Profile::Bump(b) => b.derivative(theta),
            Profile::Combination(terms) => terms
                .iter()
                .map(|(w, p)| w * p.derivative(theta))
                .sum(),
            Profile::Explicit { derivative, .. } => derivative(theta),
        }
    }

    pub fn scaled(&self, s: f64) -> Profile {
        Profile::Combination(vec![(s, self.clone())])
    }

    /// `self + t * other`.
    pub fn perturbed(&self, t: f64, other: &Profile) -> Profile {
        Profile::Combination(vec![(1.0, self.clone()), (t, other.clone())])
    }

    /// `(1 / |arc|) int_arc p^2`, square-rooted.
    pub fn arc_norm(&self, arc: &Arc, rule: &QuadratureRule) -> f64 {
        (rule.integrate(arc.start(), arc.end(), |t| self.value(t).powi(2)) / arc.length()).sqrt()
    }
}

/// A Robin coefficient on `J` with its admissibility data.
#[derive(Debug, Clone)]
pub struct RobinCoefficient {
    pub profile: Profile,
    /// The arc `J` carrying the Robin condition.
    pub j_arc: Arc,
    /// Subarc of `J` on which `q >= c`.
    pub k_arc: Arc,
    pub c: f64,
    pub c_prime: f64,
}

impl RobinCoefficient {
    pub fn new(profile: Profile, j_arc: Arc, k_arc: Arc, c: f64, c_prime: f64) -> Result<Self> {
        if !(c > 0.0 && c_prime > 0.0 && c.is_finite() && c_prime.is_finite()) {
            return invalid(format!("bounds must be positive, got c = {c}, c' = {c_prime}"));
        }
        Ok(Self {
            profile,
            j_arc,
            k_arc,
            c,
            c_prime,
        })
    }

    pub fn value(&self, theta: f64) -> f64 {
        self.profile.value(theta)
    }

    pub fn with_profile(&self, profile: Profile) -> Self {
        Self {
            profile,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<String>,
    pub max_abs: f64,
    pub max_abs_slope: f64,
    pub min_on_k: f64,
    /// Largest `|q|` or `|q'|` found outside the open arc `J`.
    pub max_outside: f64,
}

/// Check every constraint of the admissible class on a dense grid of the circle.
pub fn admissible_check(q: &RobinCoefficient) -> AdmissibilityReport {
    let tol = 1e-12;
    let mut violations = Vec::new();
    if !q.j_arc.contains_strictly(&q.k_arc) {
        violations.push("K is not strictly inside J".to_string());
    }
    let (mut max_abs, mut max_abs_slope, mut min_on_k, mut max_outside) =
        (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
    let (ja, jb) = (q.j_arc.start(), q.j_arc.end());
    let grid = (0..DENSE_GRID)
        .map(|i| -PI + TAU * i as f64 / DENSE_GRID as f64)
        .chain([ja, jb, q.k_arc.start(), q.k_arc.end()]);
    for t in grid {
        let v = q.profile.value(t);
        let d = q.profile.derivative(t);
        let interior = q.j_arc.distance_to_boundary(t) > 0.0 && q.j_arc.contains(t);
        if interior {
            max_abs = max_abs.max(v.abs());
            max_abs_slope = max_abs_slope.max(d.abs());
        } else {
            max_outside = max_outside.max(v.abs()).max(d.abs());
        }
        if q.k_arc.contains(t) {
            min_on_k = min_on_k.min(v);
        }
    }
    if max_outside > tol {
        violations.push(format!(
            "q or q' does not vanish outside J (max {max_outside:e})"
        ));
    }
    if max_abs > q.c_prime * (1.0 + tol) {
        violations.push(format!("|q| reaches {max_abs} > c' = {}", q.c_prime));
    }
    if max_abs_slope > q.c_prime * (1.0 + tol) {
        violations.push(format!("|q'| reaches {max_abs_slope} > c' = {}", q.c_prime));
    }
    if min_on_k < q.c * (1.0 - tol) {
        violations.push(format!("q drops to {min_on_k} < c = {} on K", q.c));
    }
    AdmissibilityReport {
        admissible: violations.is_empty(),
        violations,
        max_abs,
        max_abs_slope,
        min_on_k,
        max_outside,
    }
}

/// Flux condition: `phi >= 0`, `phi` not identically zero, and `phi`, `phi'`
/// vanishing outside the open arc `I`.
pub fn flux_check(phi: &Profile, arc: &Arc) -> Vec<String> {
    let mut out = Vec::new();
    let mut max_val = 0.0f64;
    let mut min_val = 0.0f64;
    let mut outside = 0.0f64;
    let grid = (0..DENSE_GRID)
        .map(|i| -PI + TAU * i as f64 / DENSE_GRID as f64)
        .chain([arc.start(), arc.end()]);
    for t in grid {
        let v = phi.value(t);
        max_val = max_val.max(v);
        min_val = min_val.min(v);
        if !(arc.contains(t) && arc.distance_to_boundary(t) > 0.0) {
            outside = outside.max(v.abs()).max(phi.derivative(t).abs());
        }
    }
    if min_val < 0.0 {
        out.push(format!("flux is negative somewhere (min {min_val})"));
    }
    if max_val <= 0.0 {
        out.push("flux vanishes identically".to_string());
    }
    if outside > 1e-12 {
        out.push(format!("flux or its slope does not vanish outside I (max {outside:e})"));
    }
    out
}

/// `u(r, t) = a_0 + sum_{m=1}^M r^m (a_m cos m t + b_m sin m t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicField {
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl HarmonicField {
    pub fn zero(degree: usize) -> Self {
        Self {
            a0: 0.0,
            a: vec![0.0; degree],
            b: vec![0.0; degree],
        }
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    fn from_vector(x: &DVector<f64>, degree: usize) -> Self {
        Self {
            a0: x[0],
            a: (1..=degree).map(|m| x[m]).collect(),
            b: (1..=degree).map(|m| x[degree + m]).collect(),
        }
    }

    fn modes(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.a
            .iter()
            .zip(&self.b)
            .enumerate()
            .map(|(i, (a, b))| ((i + 1) as f64, *a, *b))
    }

    pub fn evaluate(&self, r: f64, theta: f64) -> f64 {
        self.a0
            + self
                .modes()
                .map(|(m, a, b)| r.powf(m) * (a * (m * theta).cos() + b * (m * theta).sin()))
                .sum::<f64>()
    }

    pub fn trace(&self, theta: f64) -> f64 {
        self.evaluate(1.0, theta)
    }

    /// `d_n u = sum m (a_m cos m t + b_m sin m t)` on the circle.
    pub fn normal_derivative(&self, theta: f64) -> f64 {
        self.modes()
            .map(|(m, a, b)| m * (a * (m * theta).cos() + b * (m * theta).sin()))
            .sum()
    }

    /// `d u / d theta` on the circle.
    pub fn tangential_derivative(&self, theta: f64) -> f64 {
        self.modes()
            .map(|(m, a, b)| m * (b * (m * theta).cos() - a * (m * theta).sin()))
            .sum()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return invalid("harmonic fields must share the truncation degree");
        }
        Ok(Self {
            a0: self.a0 - other.a0,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| x - y).collect(),
        })
    }

    /// Circle means of `u^2 + (u')^2 + (u'')^2` by Parseval, square-rooted.
    pub fn w22_norm(&self) -> f64 {
        let s: f64 = self
            .modes()
            .map(|(m, a, b)| 0.5 * (1.0 + m * m + m.powi(4)) * (a * a + b * b))
            .sum();
        (self.a0 * self.a0 + s).sqrt()
    }

    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        std::iter::once((self.a0 - other.a0).abs())
            .chain(self.a.iter().zip(&other.a).map(|(x, y)| (x - y).abs()))
            .chain(self.b.iter().zip(&other.b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

/// Problem data: `d_n u = phi` on `arc`, `d_n u + q u = 0` on its complement.
#[derive(Debug, Clone)]
pub struct RobinProblem {
    pub arc: Arc,
    pub phi: Profile,
    pub q: Profile,
    pub degree: usize,
    pub collocation: usize,
}

impl RobinProblem {
    pub fn new(arc: Arc, phi: Profile, q: Profile, degree: usize, collocation: usize) -> Result<Self> {
        if degree < 1 {
            return invalid("harmonic truncation must be at least 1");
        }
        if collocation < 2 * degree + 1 {
            return invalid(format!(
                "need N >= 2M + 1 collocation points, got N = {collocation}, M = {degree}"
            ));
        }
        Ok(Self {
            arc,
            phi,
            q,
            degree,
            collocation,
        })
    }

    pub fn with_q(&self, q: Profile) -> Self {
        Self { q, ..self.clone() }
    }

    pub fn with_phi(&self, phi: Profile) -> Self {
        Self { phi, ..self.clone() }
    }

    pub fn with_sizes(&self, degree: usize, collocation: usize) -> Result<Self> {
        Self::new(self.arc, self.phi.clone(), self.q.clone(), degree, collocation)
    }

    /// Flux restricted to `I`.
    fn flux(&self, theta: f64) -> f64 {
        if self.arc.contains(theta) {
            self.phi.value(theta)
        } else {
            0.0
        }
    }

    /// Robin coefficient restricted to `J`.
    fn robin(&self, theta: f64) -> f64 {
        if self.arc.contains(theta) && self.arc.distance_to_boundary(theta) > 0.0 {
            0.0
        } else {
            self.q.value(theta)
        }
    }

    /// Pointwise defect `d_n u + q u - phi`.
    pub fn defect(&self, u: &HarmonicField, theta: f64) -> f64 {
        u.normal_derivative(theta) + self.robin(theta) * u.trace(theta) - self.flux(theta)
    }

    pub fn collocation_angles(&self) -> Vec<f64> {
        let n = self.collocation;
        (0..n).map(|j| -PI + TAU * j as f64 / n as f64).collect()
    }
}

#[derive(Debug, Clone)]
pub struct RobinSolution {
    pub field: HarmonicField,
    /// RMS of the boundary defect over the collocation angles.
    pub residual: f64,
    /// `sigma_min / sigma_max` of the collocation matrix.
    pub conditioning: f64,
    pub warning: Option<String>,
}

/// Least-squares Fourier collocation solve.
pub fn forward_solve(p: &RobinProblem) -> Result<RobinSolution> {
    let m = p.degree;
    let angles = p.collocation_angles();
    let n = angles.len();
    let mut mat = DMatrix::<f64>::zeros(n, 2 * m + 1);
    let mut rhs = DVector::<f64>::zeros(n);
    for (row, &t) in angles.iter().enumerate() {
        let q = p.robin(t);
        mat[(row, 0)] = q;
        for k in 1..=m {
            let kf = k as f64;
            let (s, c) = (kf * t).sin_cos();
            mat[(row, k)] = kf * c + q * c;
            mat[(row, m + k)] = kf * s + q * s;
        }
        rhs[row] = p.flux(t);
    }
    let svd = mat.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let conditioning = if smax > 0.0 { smin / smax } else { 0.0 };
    if !(conditioning > RANK_TOL) {
        return Err(Error::RankDeficient(format!(
            "collocation matrix has sigma_min / sigma_max = {conditioning:e}"
        )));
    }
    let x = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::RankDeficient(e.to_string()))?;
    let r = &mat * &x - &rhs;
    let residual = (r.norm_squared() / n as f64).sqrt();
    let warning = (residual > RESIDUAL_WARN)
        .then(|| format!("collocation residual {residual:e} exceeds {RESIDUAL_WARN:e}"));
    Ok(RobinSolution {
        field: HarmonicField::from_vector(&x, m),
        residual,
        conditioning,
        warning,
    })
}

/// RMS of the boundary defect over a fixed dense grid, independent of `N`.
pub fn boundary_residual(p: &RobinProblem, u: &HarmonicField) -> f64 {
    let s: f64 = (0..DENSE_GRID)
        .map(|i| p.defect(u, -PI + TAU * (i as f64 + 0.5) / DENSE_GRID as f64).powi(2))
        .sum();
    (s / DENSE_GRID as f64).sqrt()
}

/// `(||u1 - u2||_{2,I}, ||u1 - u2||_{W^{1,2}(I)})`, both normalized by `1/|I|`.
pub fn boundary_trace_norms(
    u1: &HarmonicField,
    u2: &HarmonicField,
    arc: &Arc,
    rule: &QuadratureRule,
) -> Result<(f64, f64)> {
    let d = u1.sub(u2)?;
    let l2 = rule.integrate(arc.start(), arc.end(), |t| d.trace(t).powi(2)) / arc.length();
    let h1 = rule.integrate(arc.start(), arc.end(), |t| d.tangential_derivative(t).powi(2))
        / arc.length();
    Ok((l2.sqrt(), (l2 + h1).sqrt()))
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityRow {
    pub t: f64,
    /// `||q_t - q_0||_{2,J}`.
    pub dq_norm: f64,
    /// `||u_t - u_0||_{2,I}`.
    pub du_norm_i: f64,
    pub du_norm_w12: f64,
    /// `dq_norm * log(1 / du_norm_i)`.
    pub functional: f64,
    pub residual: f64,
    pub admissible: bool,
    /// `du_norm_i < 1`.
    pub in_regime: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub rows: Vec<StabilityRow>,
    /// Largest functional over admissible in-regime rows.
    pub eta_hat: f64,
    pub base_residual: f64,
}

/// Solve with `q_0 + t dq` for each `t` and compare to the base solution.
pub fn stability_experiment(
    base: &RobinCoefficient,
    direction: &Profile,
    schedule: &[f64],
    template: &RobinProblem,
) -> Result<StabilityReport> {
    if let Some(t) = schedule.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return invalid(format!("schedule entries must be finite and nonnegative, got {t}"));
    }
    let base_report = admissible_check(base);
    if !base_report.admissible {
        return invalid(format!(
            "base coefficient is not admissible: {}",
            base_report.violations.join("; ")
        ));
    }
    let rule = QuadratureRule::endpoint_graded();
    let base_problem = template.with_q(base.profile.clone());
    let u0 = forward_solve(&base_problem)?;
    let j_arc = base.j_arc;

    let rows = schedule
        .par_iter()
        .map(|&t| -> Result<StabilityRow> {
            let qt = base.with_profile(base.profile.perturbed(t, direction));
            let check = admissible_check(&qt);
            if !check.admissible {
                return Ok(StabilityRow {
                    t,
                    dq_norm: f64::NAN,
                    du_norm_i: f64::NAN,
                    du_norm_w12: f64::NAN,
                    functional: f64::NAN,
                    residual: f64::NAN,
                    admissible: false,
                    in_regime: false,
                    note: Some(format!("skipped: {}", check.violations.join("; "))),
                });
            }
            if t == 0.0 {
                return Ok(StabilityRow {
                    t,
                    dq_norm: 0.0,
                    du_norm_i: 0.0,
                    du_norm_w12: 0.0,
                    functional: 0.0,
                    residual: u0.residual,
                    admissible: true,
                    in_regime: true,
                    note: None,
                });
            }
            let ut = forward_solve(&template.with_q(qt.profile.clone()))?;
            let dq_norm = t.abs() * direction.arc_norm(&j_arc, &rule);
            let (du, du1) = boundary_trace_norms(&ut.field, &u0.field, &template.arc, &rule)?;
            let in_regime = du < 1.0;
            Ok(StabilityRow {
                t,
                dq_norm,
                du_norm_i: du,
                du_norm_w12: du1,
                functional: if in_regime && du > 0.0 {
                    dq_norm * (1.0 / du).ln()
                } else {
                    f64::NAN
                },
                residual: ut.residual,
                admissible: true,
                in_regime,
                note: (!in_regime).then(|| "out of regime: ||du|| >= 1".to_string()),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let eta_hat = rows
        .iter()
        .filter(|r| r.admissible && r.in_regime)
        .map(|r| r.functional)
        .fold(0.0, f64::max);
    Ok(StabilityReport {
        rows,
        eta_hat,
        base_residual: u0.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn manufactured_q(t: f64) -> f64 {
        let c = t.cos();
        if c < 0.0 {
            -c / (2.0 + c)
        } else {
            0.0
        }
    }

    fn manufactured_q_slope(t: f64) -> f64 {
        let c = t.cos();
        if c < 0.0 {
            2.0 * t.sin() / (2.0 + c).powi(2)
        } else {
            0.0
        }
    }

    fn manufactured_phi(t: f64) -> f64 {
        t.cos().max(0.0)
    }

    fn manufactured_phi_slope(t: f64) -> f64 {
        if t.cos() > 0.0 {
            -t.sin()
        } else {
            0.0
        }
    }

    pub(crate) fn manufactured_problem(degree: usize, n: usize) -> RobinProblem {
        RobinProblem::new(
            Arc::semicircle(),
            Profile::Explicit {
                value: manufactured_phi,
                derivative: manufactured_phi_slope,
            },
            Profile::Explicit {
                value: manufactured_q,
                derivative: manufactured_q_slope,
            },
            degree,
            n,
        )
        .unwrap()
    }

    fn admissible_instance() -> (RobinProblem, RobinCoefficient) {
        let semi = Arc::semicircle();
        let j = semi.complement();
        let k = Arc::new(PI, 0.1).unwrap();
        let q = Profile::Bump(SplineBump::new(PI, 1.2, 0.6, 1.0).unwrap());
        let coef = RobinCoefficient::new(q.clone(), j, k, 0.5, 4.0).unwrap();
        let phi = Profile::Bump(SplineBump::new(0.0, 1.2, 0.6, 1.0).unwrap());
        (RobinProblem::new(semi, phi, q, 16, 128).unwrap(), coef)
    }

    #[test]
    fn bump_shape() {
        let b = SplineBump::new(0.5, 1.0, 0.4, 2.0).unwrap();
        assert_eq!(b.value(0.5), 2.0);
        assert_eq!(b.value(0.5 + 0.55), 2.0);
        assert_eq!(b.value(0.5 + 1.0), 0.0);
        assert_relative_eq!(b.value(0.5 + 0.8), 1.0, epsilon = 1e-15);
        // derivative against central differences
        for &t in &[0.5 + 0.7, 0.5 - 0.9, 0.5 + 0.95] {
            let h = 1e-6;
            let fd = (b.value(t + h) - b.value(t - h)) / (2.0 * h);
            assert_relative_eq!(b.derivative(t), fd, epsilon = 1e-7);
        }
        let peak = (0..20_000)
            .map(|i| b.derivative(0.5 + 0.6 + 0.4 * i as f64 / 20_000.0).abs())
            .fold(0.0, f64::max);
        assert_relative_eq!(peak, b.max_slope(), max_relative = 1e-6);
        assert!(SplineBump::new(0.0, 1.0, 1.5, 1.0).is_err());
    }

    #[test]
    fn manufactured_solution_recovered() {
        let p = manufactured_problem(16, 128);
        let sol = forward_solve(&p).unwrap();
        let mut exact = HarmonicField::zero(16);
        exact.a0 = 2.0;
        exact.a[0] = 1.0;
        assert!(sol.field.max_coeff_distance(&exact) < 1e-8);
        assert!(sol.residual < 1e-10);
        assert!(sol.warning.is_none());
    }

    #[test]
    fn zero_flux_gives_zero_field() {
        let (p, _) = admissible_instance();
        let sol = forward_solve(&p.with_phi(Profile::Zero)).unwrap();
        assert!(sol.field.max_coeff_distance(&HarmonicField::zero(16)) < 1e-14);
    }

    #[test]
    fn zero_robin_coefficient_is_rank_deficient() {
        let (p, _) = admissible_instance();
        assert!(matches!(
            forward_solve(&p.with_q(Profile::Zero)),
            Err(Error::RankDeficient(_))
        ));
        assert!(RobinProblem::new(Arc::semicircle(), Profile::Zero, Profile::Zero, 16, 32).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let (p, coef) = admissible_instance();
        let rep = admissible_check(&coef);
        assert!(rep.admissible, "{:?}", rep.violations);
        assert!(flux_check(&p.phi, &p.arc).is_empty());
        assert!(!admissible_check(&coef.with_profile(Profile::Zero)).admissible);
        // shifted so its support reaches the endpoint of J at pi/2
        let touching = Profile::Bump(SplineBump::new(PI / 2.0 + 1.0, 1.2, 0.6, 1.0).unwrap());
        let rep = admissible_check(&coef.with_profile(touching));
        assert!(!rep.admissible);
        assert!(rep.violations.iter().any(|v| v.contains("outside J")));
        let steep = Profile::Bump(SplineBump::new(PI, 1.2, 0.1, 1.0).unwrap());
        assert!(!admissible_check(&coef.with_profile(steep)).admissible);
    }

    #[test]
    fn admissible_solution_is_positive() {
        let (p, _) = admissible_instance();
        let u = forward_solve(&p).unwrap().field;
        let min = (0..4096)
            .map(|i| u.trace(TAU * i as f64 / 4096.0))
            .fold(f64::INFINITY, f64::min);
        assert!(min > 0.0, "min trace {min}");
    }

    #[test]
    fn linear_in_flux() {
        let (p, _) = admissible_instance();
        let u = forward_solve(&p).unwrap().field;
        let u2 = forward_solve(&p.with_phi(p.phi.scaled(2.0))).unwrap().field;
        let doubled = HarmonicField {
            a0: 2.0 * u.a0,
            a: u.a.iter().map(|x| 2.0 * x).collect(),
            b: u.b.iter().map(|x| 2.0 * x).collect(),
        };
        assert!(u2.max_coeff_distance(&doubled) < 1e-12);
    }

    #[test]
    fn trace_norm_examples() {
        let rule = QuadratureRule::endpoint_graded();
        let semi = Arc::semicircle();
        let mut u = HarmonicField::zero(3);
        u.a0 = 0.3;
        assert_eq!(boundary_trace_norms(&u, &u, &semi, &rule).unwrap(), (0.0, 0.0));
        let mut d = HarmonicField::zero(3);
        d.a[0] = 1.0;
        let zero = HarmonicField::zero(3);
        let (l2, w12) = boundary_trace_norms(&d, &zero, &semi, &rule).unwrap();
        // (1/pi) int_{-pi/2}^{pi/2} cos^2 = 1/2 and the same for sin^2
        assert_relative_eq!(l2, 0.5f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(w12, 1.0, epsilon = 1e-14);
        assert!(boundary_trace_norms(&d, &HarmonicField::zero(2), &semi, &rule).is_err());
    }
}
