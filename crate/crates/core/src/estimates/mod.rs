//! Checkers for the inequalities behind the logarithmic estimate, the explicit
//! proof constants, and the stability functionals.
//!
//! Each checker returns an [`InequalityReport`] comparing a left-hand side with
//! its claimed upper bound. Hypotheses that the caller must establish (a zero
//! of given order, a sup-norm bound, a derivative-mean bound) are validated and
//! reported as [`Error::Domain`](crate::Error::Domain) when violated.

mod constants;

pub use constants::{
    a_constant, choose_r, compute_dk, compute_gamma_k, gamma_target, r_floor, ProofConstants,
};

use num_complex::Complex64;
use serde::Serialize;

use crate::disk_core::{Arc, DiskFunction, QuadratureRule};
use crate::error::{domain, Result};

/// Relative tolerance used by every checker.
pub const REL_TOL: f64 = 1e-10;

/// Outcome of one inequality check `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub tol: f64,
}

impl InequalityReport {
    /// Report with tolerance `1e-10 (1 + |lhs| + |rhs|)`.
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self::with_tol(lhs, rhs, REL_TOL * (1.0 + lhs.abs() + rhs.abs()))
    }

    pub fn with_tol(lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = rhs - lhs;
        Self {
            lhs,
            rhs,
            margin,
            satisfied: margin >= -tol,
            tol,
        }
    }
}

/// Hardy convexity: with `log r = alpha log r1 + (1 - alpha) log r2`,
/// `M_f(r) <= M_f(r1)^alpha M_f(r2)^(1 - alpha)`.
pub fn hardy_convexity_check(f: &DiskFunction, r1: f64, r2: f64, alpha: f64) -> Result<InequalityReport> {
    if !(r1 > 0.0 && r1 < r2 && r2 <= 1.0) {
        return domain(format!("need 0 < r1 < r2 <= 1, got r1 = {r1}, r2 = {r2}"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return domain(format!("alpha must lie in [0, 1], got {alpha}"));
    }
    let r = (alpha * r1.ln() + (1.0 - alpha) * r2.ln()).exp();
    let lhs = f.mean_sq(r).sqrt();
    let rhs = f.mean_sq(r1).sqrt().powf(alpha) * f.mean_sq(r2).sqrt().powf(1.0 - alpha);
    Ok(InequalityReport::new(lhs, rhs))
}

/// Hardy-Landau-Littlewood ratio
/// `||f^(k)||_2 / (||f||_2^(1 - k/n) ||f^(n)||_2^(k/n))`
/// for `f` with a zero of order `n` at the origin.
pub fn hll_ratio(f: &DiskFunction, k: usize, n: usize) -> Result<f64> {
    if !(1 <= k && k < n) {
        return domain(format!("need 1 <= k < n, got k = {k}, n = {n}"));
    }
    if f.is_zero() {
        return domain("the HLL ratio is undefined for f = 0");
    }
    if let Some(m) = (0..n).find(|&m| f.coeff(m).norm_sqr() != 0.0) {
        return domain(format!(
            "f must vanish to order {n} at the origin, but coefficient {m} is nonzero"
        ));
    }
    let nf = n as f64;
    let kf = k as f64;
    let num = f.derivative_h2_norm(k);
    let den = f.h2_norm().powf(1.0 - kf / nf) * f.derivative_h2_norm(n).powf(kf / nf);
    Ok(num / den)
}

/// Mean growth of the derivative: `M_{f'}(r) <= M_f(rho) / (rho^2 - r^2)`.
///
/// `r = 0` is accepted, where `M_{f'}(0) = |f'(0)|`.
pub fn mean_growth_check(f: &DiskFunction, r: f64, rho: f64) -> Result<InequalityReport> {
    if !(r >= 0.0 && r < rho && rho <= 1.0) {
        return domain(format!("need 0 <= r < rho <= 1, got r = {r}, rho = {rho}"));
    }
    let lhs = f.derivative_mean_sq(1, r).sqrt();
    let rhs = f.mean_sq(rho).sqrt() / (rho * rho - r * r);
    Ok(InequalityReport::new(lhs, rhs))
}

/// Two-constants bound `|f(z)| <= ||f||_{2,I}^(lambda (1 - |z|) / 2)` for
/// `||f||_{L^inf(D)} <= 1`.
pub fn two_constants_check(f: &DiskFunction, arc: &Arc, z: Complex64) -> Result<InequalityReport> {
    let sup = f.sup_norm_estimate(f.default_sup_samples())?;
    if sup > 1.0 + REL_TOL {
        return domain(format!(
            "two-constants bound needs ||f||_inf <= 1 but the boundary maximum is {sup}; rescale f first"
        ));
    }
    let value = f.evaluate(z)?;
    let rule = QuadratureRule::for_degree(f.degree());
    let arc_norm = f.arc_norm(arc, &rule);
    let exponent = arc.lambda() * (1.0 - z.norm()).max(0.0) / 2.0;
    Ok(InequalityReport::new(value.norm(), arc_norm.powf(exponent)))
}

/// Tail bound for `M_{f^(k)}(1) <= 1`:
/// `||f||_2 <= sum_{s<k} (1-r)^s / s! M_{f^(s)}(r) + [log r / log M_{f^(k)}(r)]^k`.
///
/// When `M_{f^(k)}(r) = 0` the bracket is taken as its limit, 0.
pub fn tail_bound_check(f: &DiskFunction, k: usize, r: f64) -> Result<InequalityReport> {
    if k < 1 {
        return domain("tail bound needs k >= 1");
    }
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("tail bound radius must lie in (0, 1), got {r}"));
    }
    let top = f.derivative_mean_sq(k, 1.0).sqrt();
    if top > 1.0 + REL_TOL {
        return domain(format!("tail bound needs M_(f^({k}))(1) <= 1, got {top}"));
    }
    let mk = f.derivative_mean_sq(k, r).sqrt();
    if mk >= 1.0 {
        return domain(format!(
            "tail bound needs M_(f^({k}))({r}) < 1 for the log quotient, got {mk}"
        ));
    }
    let mut rhs = 0.0;
    let mut fact = 1.0;
    for s in 0..k {
        if s > 0 {
            fact *= s as f64;
        }
        rhs += (1.0 - r).powi(s as i32) / fact * f.derivative_mean_sq(s, r).sqrt();
    }
    if mk > 0.0 {
        rhs += (r.ln() / mk.ln()).powi(k as i32);
    }
    Ok(InequalityReport::new(f.h2_norm(), rhs))
}

/// `norm * (lambda log(1 / arc_norm))^power`.
fn log_functional(norm: f64, arc_norm: f64, lambda: f64, power: usize) -> f64 {
    norm * (lambda * (1.0 / arc_norm).ln()).powi(power as i32)
}

/// `||f||_2 (lambda log(1 / ||f||_{2,I}))^k`, bounded by `alpha_k` over the
/// unit ball under the smallness hypothesis.
pub fn theorem1_functional(f: &DiskFunction, arc: &Arc, k: usize) -> Result<f64> {
    corollary_functional(f, arc, k, 0)
}

/// `||f||_{m,2} (lambda log(1 / ||f||_{W^{m,2}(I)}))^(k - m)` for `0 <= m < k`.
pub fn corollary_functional(f: &DiskFunction, arc: &Arc, k: usize, m: usize) -> Result<f64> {
    if m >= k {
        return domain(format!("need 0 <= m < k, got m = {m}, k = {k}"));
    }
    let rule = QuadratureRule::for_degree(f.degree() + m);
    let arc_norm = f.arc_sobolev_norm(arc, m, &rule);
    if arc_norm >= 1.0 {
        return domain(format!(
            "the subarc norm must be < 1 for the log functional, got {arc_norm}"
        ));
    }
    let norm = f.sobolev_norm(m);
    if norm == 0.0 {
        return Ok(0.0);
    }
    Ok(log_functional(norm, arc_norm, arc.lambda(), k - m))
}

/// `||f^(j)||_{2,I} / ||f||_{W^{j,2}(I)}`, an empirical lower bound for the
/// trace constant `K_j`.
pub fn derivative_trace_ratio(f: &DiskFunction, arc: &Arc, j: usize) -> f64 {
    let rule = QuadratureRule::for_degree(f.degree() + j);
    let num = f.nth_derivative(j).arc_norm(arc, &rule);
    let den = f.arc_sobolev_norm(arc, j, &rule);
    num / den
}
