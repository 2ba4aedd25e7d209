//! The extremal family `f_n = u_n / ||u_n||_{k,2}`, `u_n = (z - a)^n`, `a > 1`.
//!
//! On the semicircle `|u_n|` is largest at the arc endpoints while on the full
//! circle it peaks at `z = -1`, so `||f_n||_{2,I}` decays geometrically while
//! `||f_n||_2` decays only like `n^{-k}`. The log functional
//! `||f_n||_2 log^k(1 / ||f_n||_{2,I})` converges to
//! `((1 + a)/2)^k log^k((1 + a)^2 / (1 + a^2))`.
//!
//! All norms are accumulated in log space: `(1 + a)^{2n+1}` leaves the `f64`
//! range near `n = 350` for `a = 2`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::disk_core::{Arc, QuadratureRule};
use crate::error::{domain, invalid, Result};

fn log_sum_exp(terms: impl IntoIterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.into_iter().collect();
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + v.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

fn check_root(a: f64) -> Result<()> {
    if !(a > 1.0 && a.is_finite()) {
        return domain(format!("the root must satisfy a > 1, got {a}"));
    }
    Ok(())
}

/// `log I_n`, `I_n = ||u_n||_2^2 = sum_j C(n, j)^2 a^{2j}`.
pub fn ln_un_h2_norm_sq(n: usize, a: f64) -> Result<f64> {
    check_root(a)?;
    let ln_a2 = 2.0 * a.ln();
    let mut ln_binom = 0.0;
    let mut terms = Vec::with_capacity(n + 1);
    for j in 0..=n {
        if j > 0 {
            ln_binom += ((n - j + 1) as f64).ln() - (j as f64).ln();
        }
        terms.push(2.0 * ln_binom + j as f64 * ln_a2);
    }
    Ok(log_sum_exp(terms))
}

/// `I_n = ||(z - a)^n||_2^2`; overflows to infinity for large `n`, see
/// [`ln_un_h2_norm_sq`].
pub fn un_h2_norm_sq(n: usize, a: f64) -> Result<f64> {
    Ok(ln_un_h2_norm_sq(n, a)?.exp())
}

/// `log ||u_n||_{k,2}^2 = log sum_{j <= k} ((n)_j)^2 I_{n-j}`.
pub fn ln_un_sobolev_norm_sq(n: usize, a: f64, k: usize) -> Result<f64> {
    check_root(a)?;
    if n < k {
        return domain(format!("need n >= k, got n = {n}, k = {k}"));
    }
    let mut ln_falling = 0.0;
    let mut terms = Vec::with_capacity(k + 1);
    for j in 0..=k {
        if j > 0 {
            ln_falling += ((n - j + 1) as f64).ln();
        }
        terms.push(2.0 * ln_falling + ln_un_h2_norm_sq(n - j, a)?);
    }
    Ok(log_sum_exp(terms))
}

pub fn un_sobolev_norm_sq(n: usize, a: f64, k: usize) -> Result<f64> {
    Ok(ln_un_sobolev_norm_sq(n, a, k)?.exp())
}

/// `log ||u_n||_{2,I}^2`, the arc mean of `(1 - 2a cos theta + a^2)^n`.
pub fn ln_un_arc_norm_sq(n: usize, a: f64, arc: &Arc, rule: &QuadratureRule) -> Result<f64> {
    check_root(a)?;
    if n == 0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let terms = rule
        .points(arc.start(), arc.end())
        .into_iter()
        .map(|(t, w)| w.ln() + nf * (1.0 - 2.0 * a * t.cos() + a * a).ln());
    Ok(log_sum_exp(terms) - arc.length().ln())
}

pub fn un_arc_norm_sq(n: usize, a: f64, arc: &Arc, rule: &QuadratureRule) -> Result<f64> {
    Ok(ln_un_arc_norm_sq(n, a, arc, rule)?.exp())
}

/// Laplace-method value of `log ||u_n||_{2,I}^2` on the semicircle:
/// `(n + 1) log(1 + a^2) - log(pi n a)`.
pub fn ln_arc_asymptotic(n: usize, a: f64) -> f64 {
    let nf = n as f64;
    (nf + 1.0) * (1.0 + a * a).ln() - (PI * nf * a).ln()
}

/// Laplace-method value of `log I_n`: `-(1/2) log(4 pi n a) + (2n + 1) log(1 + a)`.
pub fn ln_h2_asymptotic(n: usize, a: f64) -> f64 {
    let nf = n as f64;
    -0.5 * (4.0 * PI * nf * a).ln() + (2.0 * nf + 1.0) * (1.0 + a).ln()
}

/// `I_n` divided by its Laplace asymptotic `(4 pi n a)^{-1/2} (1 + a)^{2n+1}`.
pub fn laplace_asymptotic_check(n: usize, a: f64) -> Result<f64> {
    if n < 1 {
        return domain("the Laplace asymptotic needs n >= 1");
    }
    Ok((ln_un_h2_norm_sq(n, a)? - ln_h2_asymptotic(n, a)).exp())
}

/// `beta_{k,a} = ((1 + a)/2)^k log^k((1 + a)^2 / (1 + a^2))`.
pub fn beta_limit(k: usize, a: f64) -> Result<f64> {
    check_root(a)?;
    let base = 0.5 * (1.0 + a) * ((1.0 + a).powi(2) / (1.0 + a * a)).ln();
    Ok(base.powi(k as i32))
}

/// Parameters of the extremal family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessFamily {
    a: f64,
    k: usize,
    n_max: usize,
}

impl SharpnessFamily {
    pub fn new(a: f64, k: usize, n_max: usize) -> Result<Self> {
        if !(a > 1.0 && a.is_finite()) {
            return invalid(format!("the root must satisfy a > 1, got {a}"));
        }
        if n_max <= k {
            return invalid(format!("n_max must exceed k, got n_max = {n_max}, k = {k}"));
        }
        Ok(Self { a, k, n_max })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Norms of the single member `f_n`.
    pub fn row(&self, n: usize, arc: &Arc, rule: &QuadratureRule) -> Result<SharpnessRow> {
        let ln_sob = ln_un_sobolev_norm_sq(n, self.a, self.k)?;
        let ln_h2 = 0.5 * (ln_un_h2_norm_sq(n, self.a)? - ln_sob);
        let ln_arc = 0.5 * (ln_un_arc_norm_sq(n, self.a, arc, rule)? - ln_sob);
        let h2_norm = ln_h2.exp();
        let log_inv_arc = -ln_arc;
        let k = self.k as i32;
        Ok(SharpnessRow {
            n,
            h2_norm,
            arc_norm: ln_arc.exp(),
            ln_arc_norm: ln_arc,
            prop_functional: h2_norm * log_inv_arc.powi(k),
            thm1_functional: h2_norm * (arc.lambda() * log_inv_arc).powi(k),
            beta_limit: beta_limit(self.k, self.a)?,
            laplace_ratio: laplace_asymptotic_check(n, self.a)?,
        })
    }
}

/// One member of the sharpness table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessRow {
    pub n: usize,
    /// `||f_n||_2`.
    pub h2_norm: f64,
    /// `||f_n||_{2,I}`.
    pub arc_norm: f64,
    /// `log ||f_n||_{2,I}`, kept because `arc_norm` underflows for very large `n`.
    #[serde(skip)]
    pub ln_arc_norm: f64,
    /// `||f_n||_2 log^k(1 / ||f_n||_{2,I})`, no arc-length factor.
    pub prop_functional: f64,
    /// `||f_n||_2 (lambda log(1 / ||f_n||_{2,I}))^k`.
    pub thm1_functional: f64,
    pub beta_limit: f64,
    pub laplace_ratio: f64,
}

/// Rows `n = k + 1 ..= n_max` for the family on `arc`; rows are computed in
/// parallel and returned in order of `n`.
pub fn sharpness_sequence(fam: &SharpnessFamily, arc: &Arc) -> Result<Vec<SharpnessRow>> {
    let rule = QuadratureRule::endpoint_graded();
    (fam.k + 1..=fam.n_max)
        .into_par_iter()
        .map(|n| fam.row(n, arc, &rule))
        .collect()
}
