//! Explicit constants from the proof of the logarithmic estimate.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::error::{domain, invalid, Result};

/// `A = -log(1 - 2/e) / (2/e)`, the slope for which `A (r - 1) <= log r <= r - 1`
/// on `[1 - 2/e, 1)`.
pub fn a_constant() -> f64 {
    -(1.0 - 2.0 / E).ln() / (2.0 / E)
}

/// Lower end `1 - 2/e` of the admissible radius range.
pub fn r_floor() -> f64 {
    1.0 - 2.0 / E
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `D_k = max(sqrt(pi + 1), sqrt(k + 1) max_j j! C(k, j) C(k + 1, j))`.
///
/// With this choice `g = z^{k+1} f / D_k` has `M_{g^{(s)}}(1) <= 1` for
/// `s <= k` and `||g||_inf <= 1` whenever `||f||_{k,2} <= 1`.
pub fn compute_dk(k: usize) -> Result<f64> {
    if k < 1 {
        return domain("D_k is defined for k >= 1");
    }
    let inner = (0..=k)
        .map(|j| factorial(j) * binomial(k, j) * binomial(k + 1, j))
        .fold(0.0, f64::max);
    Ok((PI + 1.0).sqrt().max(((k + 1) as f64).sqrt() * inner))
}

/// Right-hand side `2 / (e (k + 1) C)` of the equation defining `Gamma_k`.
pub fn gamma_target(k: usize, c: f64) -> f64 {
    2.0 / (E * (k + 1) as f64 * c)
}

/// `(Gamma_k, gamma_k)`: `Gamma_k >= e` is the larger root of
/// `log x / x = 2 / (e (k + 1) C)`, and `gamma_k = 2 Gamma_k`.
pub fn compute_gamma_k(k: usize, c: f64) -> Result<(f64, f64)> {
    if k < 1 {
        return domain("Gamma_k is defined for k >= 1");
    }
    if !(c >= 2.0) || !c.is_finite() {
        return domain(format!("the HLL constant must satisfy C >= 2, got {c}"));
    }
    let target = gamma_target(k, c);
    // log x / x is decreasing on [e, inf) from 1/e to 0, and target < 1/e.
    let g = |x: f64| x.ln() / x - target;
    let mut lo = E;
    let mut hi = 2.0 * E;
    while g(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = if g(lo).abs() <= g(hi).abs() { lo } else { hi };
    Ok((root, 2.0 * root))
}

/// The radius `r = 1 - (k + 1) C loglog(1/N) / log(1/N)`, valid once
/// `N <= e^{-Gamma_k}`; then `1 - 2/e <= r < 1`.
pub fn choose_r(n_i: f64, k: usize, c: f64) -> Result<f64> {
    let (big_gamma, _) = compute_gamma_k(k, c)?;
    if !(n_i > 0.0) {
        return domain(format!("N_I must be positive, got {n_i}"));
    }
    let l = (1.0 / n_i).ln();
    // Compare in log space: N <= e^{-Gamma} <=> log(1/N) >= Gamma.
    if !(l >= big_gamma * (1.0 - 1e-15)) {
        return domain(format!(
            "N_I = {n_i:e} exceeds e^(-Gamma_k) = {:e} (Gamma_k = {big_gamma})",
            (-big_gamma).exp()
        ));
    }
    let r = 1.0 - (k + 1) as f64 * c * l.ln() / l;
    // Exact arithmetic gives r >= 1 - 2/e at the threshold; absorb the last ulp.
    Ok(r.max(r_floor()))
}

/// The explicit constants of the proof for a given order and HLL constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofConstants {
    pub k: usize,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D_k")]
    pub d_k: f64,
    #[serde(rename = "Gamma_k")]
    pub big_gamma_k: f64,
    #[serde(rename = "gamma_k")]
    pub gamma_k: f64,
    #[serde(rename = "A")]
    pub a: f64,
}

impl ProofConstants {
    pub fn new(k: usize, c: f64) -> Result<Self> {
        if k < 1 {
            return invalid("proof constants need k >= 1");
        }
        let (big_gamma_k, gamma_k) = compute_gamma_k(k, c)?;
        Ok(Self {
            k,
            c,
            d_k: compute_dk(k)?,
            big_gamma_k,
            gamma_k,
            a: a_constant(),
        })
    }

    /// Residual `|log Gamma / Gamma - 2 / (e (k + 1) C)|`.
    pub fn gamma_residual(&self) -> f64 {
        (self.big_gamma_k.ln() / self.big_gamma_k - gamma_target(self.k, self.c)).abs()
    }

    /// Arc-norm level `e^{-gamma_k / lambda}` below which the main estimate applies.
    pub fn smallness_threshold(&self, lambda: f64) -> f64 {
        (-self.gamma_k / lambda).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dk_values() {
        assert_relative_eq!(compute_dk(1).unwrap(), 2.0 * 2f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(compute_dk(2).unwrap(), 6.0 * 3f64.sqrt(), epsilon = 1e-13);
        for k in 1..12 {
            assert!(compute_dk(k).unwrap() >= (PI + 1.0).sqrt());
        }
        assert!(compute_dk(0).is_err());
    }

    #[test]
    fn a_constant_value() {
        let a = a_constant();
        assert!(a > 1.80 && a < 1.81);
        assert_relative_eq!(a, 1.808_871_493_288_776, epsilon = 1e-12);
    }

    #[test]
    fn gamma_root_for_k1() {
        let (g, gg) = compute_gamma_k(1, 2.0).unwrap();
        // independent: secant iteration on the same equation started near 14
        let f = |x: f64| x.ln() / x - 1.0 / (2.0 * E);
        let (mut x0, mut x1) = (10.0_f64, 20.0_f64);
        for _ in 0..60 {
            let fx1 = f(x1);
            if fx1 == 0.0 || (x1 - x0).abs() < 1e-15 {
                break;
            }
            let x2 = x1 - fx1 * (x1 - x0) / (fx1 - f(x0));
            x0 = x1;
            x1 = x2;
        }
        assert_relative_eq!(g, x1, epsilon = 1e-9);
        assert_relative_eq!(g, 14.561_003_906_540_5, epsilon = 1e-9);
        assert_relative_eq!(gg, 2.0 * g);
        assert!(g >= E);
        let pc = ProofConstants::new(1, 2.0).unwrap();
        assert!(pc.gamma_residual() < 1e-12);
    }

    #[test]
    fn gamma_grows_with_k() {
        let mut prev = 0.0;
        for k in 1..30 {
            let (g, _) = compute_gamma_k(k, 2.0).unwrap();
            assert!(g > prev);
            prev = g;
            let pc = ProofConstants::new(k, 2.0).unwrap();
            assert!(pc.gamma_residual() < 1e-12);
        }
        assert!(compute_gamma_k(1, 1.5).is_err());
    }

    #[test]
    fn choose_r_examples() {
        let r = choose_r((-20.0f64).exp(), 1, 2.0).unwrap();
        assert_relative_eq!(r, 1.0 - 4.0 * 20f64.ln() / 20.0, epsilon = 1e-14);
        assert_relative_eq!(r, 0.40086, epsilon = 1e-5);
        let near_one = choose_r(1e-300, 1, 2.0).unwrap();
        assert!(near_one > 0.95 && near_one < 1.0);
        assert!(choose_r(1e-3, 1, 2.0).is_err());
        assert!(choose_r(0.0, 1, 2.0).is_err());
    }

    #[test]
    fn choose_r_at_threshold_is_floor() {
        for k in 1..5 {
            let (g, _) = compute_gamma_k(k, 2.0).unwrap();
            let r = choose_r((-g).exp(), k, 2.0).unwrap();
            assert_relative_eq!(r, r_floor(), epsilon = 1e-12);
            assert!(r >= r_floor());
        }
    }
}
