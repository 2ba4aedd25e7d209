//! Minimal-norm interpolation in `H^{k,2}` from samples on a subarc.
//!
//! The space of polynomials of degree `<= M` with norm
//! `||f||_{k,2}^2 = sum_m w_m |a_m|^2` has reproducing kernel
//! `K(z, w) = sum_m (z conj(w))^m / w_m`. The interpolant of minimal norm
//! through the samples `(x_i, y_i)` is `g = sum_i c_i K(., x_i)` with
//! `G c = y`, `G_ij = K(x_i, x_j)`; this is the orthogonal projection of any
//! interpolated function onto the span of the kernel sections.
//!
//! Gram matrices of clustered boundary nodes are close to singular. The solve
//! first tries a pivoted Cholesky factorization of `G`; if it is numerically
//! rank deficient the system is shifted by a ridge of `1e-12 trace(G) / n` and
//! the result is flagged as regularized.

mod cholesky;

pub use cholesky::PivotedCholesky;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::disk_core::{signed_angle, Arc, DiskFunction, SobolevWeights};
use crate::error::{invalid, Result};
use crate::estimates::ProofConstants;

/// Pivots at or below this fraction of the largest diagonal entry count as zero.
pub const RANK_TOL: f64 = 1e-13;
/// Ridge added on rank deficiency, relative to `trace(G) / n`.
pub const RIDGE: f64 = 1e-12;

/// Truncated Hardy-Sobolev kernel of order `k` and degree `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    weights: SobolevWeights,
}

impl KernelSpec {
    pub fn new(k: usize, truncation: usize) -> Result<Self> {
        if truncation < 1 {
            return invalid("kernel truncation must be at least 1");
        }
        Ok(Self {
            weights: SobolevWeights::new(k, truncation),
        })
    }

    pub fn order(&self) -> usize {
        self.weights.order()
    }

    pub fn truncation(&self) -> usize {
        self.weights.degree()
    }

    pub fn weights(&self) -> &SobolevWeights {
        &self.weights
    }

    /// `K(z, w) = sum_{m <= M} (z conj(w))^m / w_m`.
    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        let t = z * w.conj();
        self.weights
            .as_slice()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, wm| acc * t + 1.0 / wm)
    }

    /// Coefficients of the kernel section `K(., x)`.
    pub fn section(&self, x: Complex64) -> Vec<Complex64> {
        let xc = x.conj();
        let mut p = Complex64::new(1.0, 0.0);
        self.weights
            .as_slice()
            .iter()
            .map(|wm| {
                let c = p / wm;
                p *= xc;
                c
            })
            .collect()
    }

    /// `<f, g> = sum_m w_m a_m conj(b_m)`.
    pub fn inner(&self, f: &DiskFunction, g: &DiskFunction) -> Complex64 {
        self.weights
            .as_slice()
            .iter()
            .enumerate()
            .map(|(m, w)| f.coeff(m) * g.coeff(m).conj() * w)
            .sum()
    }
}

/// Sorted, distinct sample angles inside an arc.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSet {
    angles: Vec<f64>,
    level: usize,
    #[serde(skip)]
    arc: Arc,
}

impl SampleSet {
    /// Angles are sorted counter-clockwise along `arc`.
    pub fn new(mut angles: Vec<f64>, arc: &Arc, level: usize) -> Result<Self> {
        if angles.is_empty() {
            return invalid("a sample set needs at least one point");
        }
        if let Some(t) = angles.iter().find(|t| !t.is_finite() || !arc.contains(**t)) {
            return invalid(format!("sample angle {t} is not inside the arc"));
        }
        angles.sort_by(|a, b| arc.offset(*a).total_cmp(&arc.offset(*b)));
        if angles
            .windows(2)
            .any(|w| arc.offset(w[1]) - arc.offset(w[0]) <= 0.0)
        {
            return invalid("sample angles must be distinct");
        }
        Ok(Self {
            angles,
            level,
            arc: *arc,
        })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    /// Every angle of `self` also occurs in `other` (up to `1e-12` rad).
    pub fn is_nested_in(&self, other: &SampleSet) -> bool {
        self.angles.iter().all(|a| {
            other
                .angles
                .iter()
                .any(|b| signed_angle(a - b).abs() <= 1e-12)
        })
    }
}

/// Nested equispaced sets: level `j` has `counts[j]` points
/// `start + i * (2 pi lambda) / counts[j]`, `i = 0..counts[j]`. Consecutive
/// counts must divide each other so the sets are nested.
pub fn dyadic_schedule(arc: &Arc, counts: &[usize]) -> Result<Vec<SampleSet>> {
    if counts.is_empty() {
        return invalid("schedule needs at least one level");
    }
    for w in counts.windows(2) {
        if w[0] == 0 || w[1] % w[0] != 0 || w[1] <= w[0] {
            return invalid(format!(
                "schedule counts must increase by integer factors, got {} then {}",
                w[0], w[1]
            ));
        }
    }
    counts
        .iter()
        .enumerate()
        .map(|(level, &n)| {
            if n == 0 {
                return invalid("schedule levels need at least one point");
            }
            let angles = (0..n)
                .map(|i| arc.start() + arc.length() * i as f64 / n as f64)
                .collect();
            SampleSet::new(angles, arc, level)
        })
        .collect()
}

/// Hermitian Gram matrix `G_ij = K(x_i, x_j)`.
pub fn gram_matrix(spec: &KernelSpec, samples: &SampleSet) -> DMatrix<Complex64> {
    let pts = samples.points();
    let n = pts.len();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = spec.eval(pts[i], pts[j]);
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
        g[(i, i)].im = 0.0;
    }
    g
}

/// Result of a minimal-norm interpolation.
#[derive(Debug, Clone)]
pub struct Interpolant {
    pub function: DiskFunction,
    /// Kernel expansion weights `c` with `g = sum_i c_i K(., x_i)`.
    pub weights: Vec<Complex64>,
    /// Numerical rank found by the pivoted factorization of `G`.
    pub rank: usize,
    /// Ridge added to the diagonal; zero for an unregularized solve.
    pub ridge: f64,
    /// `max_i |g(x_i) - y_i|`.
    pub residual: f64,
}

impl Interpolant {
    pub fn regularized(&self) -> bool {
        self.ridge > 0.0
    }
}

/// The element of minimal `||.||_{k,2}` norm among degree-`<= M` functions
/// taking `values` at the sample points.
pub fn min_norm_interpolant(
    spec: &KernelSpec,
    samples: &SampleSet,
    values: &[Complex64],
) -> Result<Interpolant> {
    if values.len() != samples.len() {
        return invalid(format!(
            "{} values for {} sample points",
            values.len(),
            samples.len()
        ));
    }
    let degree = spec.truncation();
    if values.iter().all(|v| v.norm_sqr() == 0.0) {
        return Ok(Interpolant {
            function: DiskFunction::zero(degree),
            weights: vec![Complex64::new(0.0, 0.0); values.len()],
            rank: 0,
            ridge: 0.0,
            residual: 0.0,
        });
    }
    let n = samples.len();
    let mut g = gram_matrix(spec, samples);
    let max_diag = (0..n).map(|i| g[(i, i)].re).fold(0.0, f64::max);
    let factor = PivotedCholesky::factor(&g, RANK_TOL * max_diag);
    let rank = factor.rank();
    let (weights, ridge) = if factor.is_full_rank() {
        (factor.solve(values), 0.0)
    } else {
        let trace: f64 = (0..n).map(|i| g[(i, i)].re).sum();
        let ridge = RIDGE * trace / n as f64;
        for i in 0..n {
            g[(i, i)] += ridge;
        }
        let shifted = PivotedCholesky::factor(&g, 0.0);
        if !shifted.is_full_rank() {
            return Err(crate::Error::RankDeficient(
                "ridge-shifted Gram matrix is not positive definite".into(),
            ));
        }
        (shifted.solve(values), ridge)
    };

    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
    for (c, x) in weights.iter().zip(samples.points()) {
        for (m, s) in spec.section(x).into_iter().enumerate() {
            coeffs[m] += c * s;
        }
    }
    let function = DiskFunction::new(coeffs)?;
    let residual = samples
        .points()
        .iter()
        .zip(values)
        .map(|(x, y)| (function.horner(*x) - y).norm())
        .fold(0.0, f64::max);
    Ok(Interpolant {
        function,
        weights,
        rank,
        ridge,
        residual,
    })
}

/// `sup_{x in I} d(x, S)` with `d` the angular distance.
pub fn fill_distance(samples: &SampleSet, arc: &Arc) -> f64 {
    let half = PI * arc.lambda();
    let offs: Vec<f64> = samples.angles().iter().map(|&t| arc.offset(t)).collect();
    let first = offs[0] + half;
    let last = half - offs[offs.len() - 1];
    let interior = offs
        .windows(2)
        .map(|w| 0.5 * (w[1] - w[0]))
        .fold(0.0, f64::max);
    first.max(last).max(interior)
}

/// One level of a convergence experiment.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub h_n: f64,
    /// `||f - f_n||_2`.
    pub error: f64,
    /// `error * (lambda log(1 / h_n))^k`.
    pub functional: f64,
    pub regularized: bool,
    pub residual: f64,
    /// `||f_n||_{k,2}`.
    pub interpolant_norm: f64,
    /// `h_n > e^{-gamma_k / lambda}`: the rate bound is not asserted here.
    pub pre_asymptotic: bool,
    #[serde(skip)]
    pub interpolant: DiskFunction,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// `||f||_{k,2}` after normalization (1 unless `f = 0`).
    pub target_norm: f64,
    /// Largest functional over all rows.
    pub alpha_hat: f64,
    /// Largest functional over rows meeting the fill-distance hypothesis, if any.
    pub alpha_hat_admissible: Option<f64>,
    /// `e^{-gamma_k / lambda}` with `C = 2`.
    pub h_threshold: f64,
}

/// Interpolate `f / ||f||_{k,2}` on every level of `schedule` and record the
/// recovery error against the fill distance.
pub fn convergence_experiment(
    f: &DiskFunction,
    arc: &Arc,
    spec: &KernelSpec,
    schedule: &[SampleSet],
) -> Result<ConvergenceReport> {
    let k = spec.order();
    if f.degree() > spec.truncation() {
        return invalid(format!(
            "function degree {} exceeds kernel truncation {}",
            f.degree(),
            spec.truncation()
        ));
    }
    for w in schedule.windows(2) {
        if !w[0].is_nested_in(&w[1]) {
            return invalid(format!("level {} is not nested in level {}", w[0].level(), w[1].level()));
        }
    }
    let norm = f.sobolev_norm(k);
    let target = if norm > 0.0 { f.scale_real(1.0 / norm) } else { f.clone() };
    let target = target.with_capacity(spec.truncation());
    let h_threshold = if k >= 1 {
        ProofConstants::new(k, 2.0)?.smallness_threshold(arc.lambda())
    } else {
        1.0 / std::f64::consts::E
    };
    let lambda = arc.lambda();

    let rows: Vec<ConvergenceRow> = schedule
        .par_iter()
        .map(|s| -> Result<ConvergenceRow> {
            let values: Vec<Complex64> = s.points().iter().map(|x| target.horner(*x)).collect();
            let interp = min_norm_interpolant(spec, s, &values)?;
            let h_n = fill_distance(s, arc);
            let error = target.sub(&interp.function).h2_norm();
            Ok(ConvergenceRow {
                n: s.len(),
                h_n,
                error,
                functional: error * (lambda * (1.0 / h_n).ln()).powi(k as i32),
                regularized: interp.regularized(),
                residual: interp.residual,
                interpolant_norm: interp.function.sobolev_norm(k),
                pre_asymptotic: h_n > h_threshold,
                interpolant: interp.function,
            })
        })
        .collect::<Result<_>>()?;

    let alpha_hat = rows.iter().map(|r| r.functional).fold(0.0, f64::max);
    let admissible: Vec<f64> = rows
        .iter()
        .filter(|r| !r.pre_asymptotic)
        .map(|r| r.functional)
        .collect();
    Ok(ConvergenceReport {
        alpha_hat,
        alpha_hat_admissible: admissible.into_iter().reduce(f64::max),
        target_norm: target.sobolev_norm(k),
        h_threshold,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kernel_examples() {
        let one = Complex64::new(1.0, 0.0);
        let spec0 = KernelSpec::new(0, 3).unwrap();
        assert_relative_eq!(spec0.eval(one, one).re, 4.0);
        let spec1 = KernelSpec::new(1, 17).unwrap();
        let z = Complex64::from_polar(0.7, 1.1);
        assert_eq!(spec1.eval(Complex64::new(0.0, 0.0), z), one);
        assert_eq!(spec1.eval(z, Complex64::new(0.0, 0.0)), one);
        // sum_{m <= 10^4} 1 / (1 + m^2), summed independently in reverse order
        let big = KernelSpec::new(1, 10_000).unwrap();
        let oracle: f64 = (0..=10_000u32).rev().map(|m| 1.0 / (1.0 + (m as f64).powi(2))).sum();
        assert_relative_eq!(big.eval(one, one).re, oracle, max_relative = 1e-14);
        assert_relative_eq!(oracle, 2.0766, epsilon = 1e-4);
        let w = Complex64::from_polar(0.9, -2.0);
        assert!((spec1.eval(z, w) - spec1.eval(w, z).conj()).norm() < 1e-15);
        assert!(spec1.eval(w, w).re >= 1.0);
        assert!(KernelSpec::new(1, 0).is_err());
    }

    #[test]
    fn gram_examples() {
        let arc = Arc::new(0.0, 0.9).unwrap();
        let spec = KernelSpec::new(0, 1).unwrap();
        let s = SampleSet::new(vec![0.1], &arc, 0).unwrap();
        let g = gram_matrix(&spec, &s);
        assert_eq!(g.shape(), (1, 1));
        assert_relative_eq!(g[(0, 0)].re, 2.0);
        let s = SampleSet::new(vec![-PI / 2.0, PI / 2.0], &arc, 0).unwrap();
        let g = gram_matrix(&spec, &s);
        assert_relative_eq!(g[(0, 0)].re, 2.0);
        assert_relative_eq!(g[(1, 1)].re, 2.0);
        assert!(g[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn sample_set_validation() {
        let semi = Arc::semicircle();
        assert!(SampleSet::new(vec![], &semi, 0).is_err());
        assert!(SampleSet::new(vec![2.0], &semi, 0).is_err());
        assert!(SampleSet::new(vec![0.2, 0.2], &semi, 0).is_err());
        let s = SampleSet::new(vec![0.3, -0.2, 0.1], &semi, 0).unwrap();
        assert_eq!(s.angles(), &[-0.2, 0.1, 0.3]);
        // wrap-around arc centred at pi
        let j = semi.complement();
        let s = SampleSet::new(vec![-3.0, 3.0, PI], &j, 0).unwrap();
        assert_eq!(s.angles(), &[3.0, PI, -3.0]);
    }

    #[test]
    fn fill_distance_examples() {
        let arc = Arc::new(0.4, 0.3).unwrap();
        let s = SampleSet::new(vec![0.4], &arc, 0).unwrap();
        assert_relative_eq!(fill_distance(&s, &arc), PI * 0.3, epsilon = 1e-15);
        let semi = Arc::semicircle();
        let ends = SampleSet::new(vec![-PI / 2.0, PI / 2.0], &semi, 0).unwrap();
        assert_relative_eq!(fill_distance(&ends, &semi), PI / 2.0, epsilon = 1e-15);
        let sched = dyadic_schedule(&semi, &[4, 8, 16, 32]).unwrap();
        let hs: Vec<f64> = sched.iter().map(|s| fill_distance(s, &semi)).collect();
        assert!(hs.windows(2).all(|w| w[1] <= w[0]));
        assert_relative_eq!(hs[0], PI / 4.0, epsilon = 1e-14);
        assert!(sched.windows(2).all(|w| w[0].is_nested_in(&w[1])));
        assert!(dyadic_schedule(&semi, &[4, 6]).is_err());
    }

    #[test]
    fn single_point_is_rank_one_projection() {
        let spec = KernelSpec::new(1, 12).unwrap();
        let arc = Arc::semicircle();
        let s = SampleSet::new(vec![0.3], &arc, 0).unwrap();
        let v = Complex64::new(0.7, -0.2);
        let g = min_norm_interpolant(&spec, &s, &[v]).unwrap();
        let x = Complex64::from_polar(1.0, 0.3);
        let kxx = spec.eval(x, x).re;
        assert_relative_eq!(g.function.sobolev_norm(1), v.norm() / kxx.sqrt(), max_relative = 1e-13);
        let expected: Vec<Complex64> = spec.section(x).into_iter().map(|c| c * v / kxx).collect();
        for (a, b) in g.function.coeffs().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(!g.regularized());
    }

    #[test]
    fn zero_values_give_zero() {
        let spec = KernelSpec::new(1, 8).unwrap();
        let s = SampleSet::new(vec![0.1, 0.5], &Arc::semicircle(), 0).unwrap();
        let g = min_norm_interpolant(&spec, &s, &[Complex64::new(0.0, 0.0); 2]).unwrap();
        assert!(g.function.is_zero());
        assert!(min_norm_interpolant(&spec, &s, &[Complex64::new(1.0, 0.0)]).is_err());
    }

    fn geometric(m: usize) -> DiskFunction {
        // 1 / (2 - z) = sum z^m / 2^(m+1)
        DiskFunction::from_real(&(0..=m).map(|j| 0.5f64.powi(j as i32 + 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn eight_point_semicircle_interpolation() {
        let f = geometric(64);
        let spec = KernelSpec::new(1, 64).unwrap();
        let semi = Arc::semicircle();
        let s = dyadic_schedule(&semi, &[8]).unwrap().remove(0);
        let values: Vec<Complex64> = s.points().iter().map(|x| f.horner(*x)).collect();
        let g = min_norm_interpolant(&spec, &s, &values).unwrap();
        assert!(g.residual < 1e-8);
        assert!(g.function.sobolev_norm(1) <= f.sobolev_norm(1));
    }

    #[test]
    fn interpolant_in_span_is_recovered() {
        let spec = KernelSpec::new(1, 20).unwrap();
        let semi = Arc::semicircle();
        let sched = dyadic_schedule(&semi, &[4, 8]).unwrap();
        // f = sum c_i K(., x_i) over the level-0 nodes
        let cs = [0.3, -0.1, 0.25, 0.05];
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 21];
        for (c, x) in cs.iter().zip(sched[0].points()) {
            for (m, s) in spec.section(x).into_iter().enumerate() {
                coeffs[m] += s * *c;
            }
        }
        let f = DiskFunction::new(coeffs).unwrap();
        let report = convergence_experiment(&f, &semi, &spec, &sched[..1]).unwrap();
        assert!(report.rows[0].error < 1e-12);
    }

    #[test]
    fn experiment_rejects_bad_inputs() {
        let spec = KernelSpec::new(1, 4).unwrap();
        let semi = Arc::semicircle();
        let sched = dyadic_schedule(&semi, &[2, 4]).unwrap();
        assert!(convergence_experiment(&geometric(8), &semi, &spec, &sched).is_err());
        let reversed = vec![sched[1].clone(), sched[0].clone()];
        assert!(convergence_experiment(&geometric(3), &semi, &spec, &reversed).is_err());
    }
}
