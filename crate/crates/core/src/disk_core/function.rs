use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Arc, QuadratureRule};
use crate::error::{domain, invalid, Error, Result};

/// Falling factorial `m (m-1) ... (m-j+1)`; zero when `j > m`.
pub fn falling_factorial(m: usize, j: usize) -> f64 {
    if j > m {
        return 0.0;
    }
    (0..j).map(|i| (m - i) as f64).product()
}

/// Diagonal weights `w_m = sum_{j <= min(k, m)} ((m)_j)^2` so that
/// `||f||_{k,2}^2 = sum_m w_m |a_m|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SobolevWeights {
    k: usize,
    weights: Vec<f64>,
}

impl SobolevWeights {
    pub fn new(k: usize, degree: usize) -> Self {
        let weights = (0..=degree)
            .map(|m| {
                (0..=k.min(m))
                    .map(|j| falling_factorial(m, j).powi(2))
                    .sum()
            })
            .collect();
        Self { k, weights }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn get(&self, m: usize) -> f64 {
        self.weights[m]
    }
}

/// An analytic function on the closed disk, stored as Taylor coefficients
/// `a_0 .. a_M`. `M` is a capacity: trailing zeros are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DiskFunctionRepr", into = "DiskFunctionRepr")]
pub struct DiskFunction {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct DiskFunctionRepr {
    degree: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<DiskFunctionRepr> for DiskFunction {
    type Error = Error;
    fn try_from(r: DiskFunctionRepr) -> Result<Self> {
        if r.re.len() != r.degree + 1 || r.im.len() != r.degree + 1 {
            return invalid(format!(
                "degree {} needs {} coefficients, got re: {}, im: {}",
                r.degree,
                r.degree + 1,
                r.re.len(),
                r.im.len()
            ));
        }
        DiskFunction::new(
            r.re
                .into_iter()
                .zip(r.im)
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<DiskFunction> for DiskFunctionRepr {
    fn from(f: DiskFunction) -> Self {
        DiskFunctionRepr {
            degree: f.degree(),
            re: f.coeffs.iter().map(|c| c.re).collect(),
            im: f.coeffs.iter().map(|c| c.im).collect(),
        }
    }
}

const RADIUS_SLACK: f64 = 1e-12;

impl DiskFunction {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a disk function needs at least one coefficient");
        }
        if let Some(i) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return invalid(format!("coefficient {i} is not finite"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut f = Self::zero(n);
        f.coeffs[n] = Complex64::new(1.0, 0.0);
        f
    }

    /// `(z - a)^n` expanded by the binomial theorem.
    pub fn binomial_power(a: Complex64, n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        let mut binom = 1.0_f64;
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c = (-a).powu((n - j) as u32) * binom;
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Complex64 {
        self.coeffs.get(m).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Same function with capacity raised to `degree` (never lowered).
    pub fn with_capacity(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if degree > self.degree() {
            coeffs.resize(degree + 1, Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|m| self.coeff(m) + other.coeff(m)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_real(-1.0))
    }

    /// `sum a_m z^m` for `|z| <= 1`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 + RADIUS_SLACK {
            return domain(format!("|z| = {} lies outside the closed unit disk", z.norm()));
        }
        Ok(self.horner(z))
    }

    pub(crate) fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Complex derivative `f'`; capacity drops by one (a constant maps to 0).
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(m, c)| c * (m + 1) as f64)
                .collect(),
        }
    }

    pub fn nth_derivative(&self, j: usize) -> Self {
        (0..j).fold(self.clone(), |f, _| f.derivative())
    }

    /// Boundary values `f(e^{i theta})` as a Fourier series.
    pub fn boundary_trace(&self) -> BoundaryTrace {
        BoundaryTrace {
            coeffs: self.coeffs.clone(),
        }
    }

    /// `d/dtheta f(e^{i theta})`: Fourier coefficient `m` times `i m`.
    pub fn tangential_derivative(&self) -> BoundaryTrace {
        self.boundary_trace().tangential_derivative()
    }

    /// Hardy norm `||f||_2 = (sum |a_m|^2)^{1/2}`.
    pub fn h2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Integral mean `M_f(r) = (sum |a_m|^2 r^{2m})^{1/2}` for `0 < r <= 1`.
    pub fn integral_mean(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r <= 1.0) {
            return domain(format!("integral mean radius must lie in (0, 1], got {r}"));
        }
        Ok(self.mean_sq(r).sqrt())
    }

    /// `M_f(r)^2`, accepting `r = 0` where it equals `|f(0)|^2`.
    pub(crate) fn mean_sq(&self, r: f64) -> f64 {
        let r2 = r * r;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r2 + c.norm_sqr())
    }

    /// `M_{f^{(j)}}(r)^2` without materializing the derivative.
    pub(crate) fn derivative_mean_sq(&self, j: usize, r: f64) -> f64 {
        let r2 = r * r;
        self.coeffs
            .iter()
            .enumerate()
            .skip(j)
            .rev()
            .fold(0.0, |acc, (m, c)| {
                acc * r2 + falling_factorial(m, j).powi(2) * c.norm_sqr()
            })
    }

    /// `||f^{(j)}||_2`.
    pub fn derivative_h2_norm(&self, j: usize) -> f64 {
        self.derivative_mean_sq(j, 1.0).sqrt()
    }

    /// Hardy-Sobolev norm `||f||_{k,2}` through the diagonal weights.
    pub fn sobolev_norm(&self, k: usize) -> f64 {
        let w = SobolevWeights::new(k, self.degree());
        self.weighted_norm_sq(&w).sqrt()
    }

    pub fn weighted_norm_sq(&self, w: &SobolevWeights) -> f64 {
        self.coeffs
            .iter()
            .zip(w.as_slice())
            .map(|(c, w)| w * c.norm_sqr())
            .sum()
    }

    /// `||f||_{2,I}`: L^2 mean of the boundary trace over `arc`, normalized by `1/(2 pi lambda)`.
    pub fn arc_norm(&self, arc: &Arc, rule: &QuadratureRule) -> f64 {
        self.boundary_trace().arc_mean_sq(arc, rule).sqrt()
    }

    /// `||f||_{W^{m,2}(I)}`: root sum of the normalized arc norms of
    /// `d^j f / d theta^j`, `j = 0..=m`.
    pub fn arc_sobolev_norm(&self, arc: &Arc, m: usize, rule: &QuadratureRule) -> f64 {
        let mut trace = self.boundary_trace();
        let mut total = trace.arc_mean_sq(arc, rule);
        for _ in 0..m {
            trace = trace.tangential_derivative();
            total += trace.arc_mean_sq(arc, rule);
        }
        total.sqrt()
    }

    /// Largest `|f|` over `samples` equispaced boundary points (spacing
    /// `2 pi / samples`). By the maximum principle this is a lower estimate
    /// of `||f||_{L^inf(D)}`.
    pub fn sup_norm_estimate(&self, samples: usize) -> Result<f64> {
        let min = 4 * (self.degree() + 1);
        if samples < min {
            return invalid(format!(
                "sup-norm grid needs at least {min} samples for degree {}, got {samples}",
                self.degree()
            ));
        }
        Ok((0..samples)
            .map(|i| {
                let t = TAU * i as f64 / samples as f64;
                self.horner(Complex64::from_polar(1.0, t)).norm()
            })
            .fold(0.0, f64::max))
    }

    /// Grid size used when callers do not choose one: at least 1024 and at
    /// least sixteen points per coefficient.
    pub fn default_sup_samples(&self) -> usize {
        1024.max(16 * (self.degree() + 1))
    }
}

/// Boundary trace of an analytic function, `sum_{m >= 0} c_m e^{i m theta}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace {
    coeffs: Vec<Complex64>,
}

impl BoundaryTrace {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn evaluate(&self, theta: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, theta);
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn tangential_derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| c * Complex64::new(0.0, m as f64))
                .collect(),
        }
    }

    /// `Q(g)(e^{i theta}) = -i e^{-i theta} dg/dtheta`; on the trace of an
    /// analytic `f` this yields the trace of `f'`.
    pub fn apply_q(&self) -> Self {
        let d = self.tangential_derivative();
        let shifted: Vec<Complex64> = d
            .coeffs
            .iter()
            .skip(1)
            .map(|c| c * Complex64::new(0.0, -1.0))
            .collect();
        Self {
            coeffs: if shifted.is_empty() {
                vec![Complex64::new(0.0, 0.0)]
            } else {
                shifted
            },
        }
    }

    /// `(1 / (2 pi)) int_0^{2 pi} |g|^2` by Parseval.
    pub fn l2_mean_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `(1 / (2 pi lambda)) int_I |g|^2`.
    pub fn arc_mean_sq(&self, arc: &Arc, rule: &QuadratureRule) -> f64 {
        rule.integrate(arc.start(), arc.end(), |t| self.evaluate(t).norm_sqr()) / arc.length()
    }
}

/// Full-circle mean of `|g|^2` by quadrature, used as a Parseval cross-check.
pub fn circle_mean_sq_by_quadrature(trace: &BoundaryTrace, rule: &QuadratureRule) -> f64 {
    rule.integrate(-PI, PI, |t| trace.evaluate(t).norm_sqr()) / TAU
}
