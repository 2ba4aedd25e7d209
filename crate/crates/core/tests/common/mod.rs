#![allow(dead_code)]

use hardylog::rkhs_interp::{KernelSpec, SampleSet};
use hardylog::{Complex64, DiskFunction};
use nalgebra::{DMatrix, DVector};

/// Least-norm interpolant from the KKT system of
/// `min sum_m w_m |g_m|^2` subject to `sum_m g_m x_i^m = y_i`,
/// written over the reals and solved by LU.
pub fn lagrange_interpolant(spec: &KernelSpec, samples: &SampleSet, values: &[Complex64]) -> DiskFunction {
    let w = spec.weights().as_slice();
    let m1 = w.len();
    let pts = samples.points();
    let s = pts.len();
    let nv = 2 * m1;
    let nc = 2 * s;
    let mut kkt = DMatrix::<f64>::zeros(nv + nc, nv + nc);
    for m in 0..m1 {
        kkt[(m, m)] = 2.0 * w[m];
        kkt[(m1 + m, m1 + m)] = 2.0 * w[m];
    }
    let mut rhs = DVector::<f64>::zeros(nv + nc);
    for (i, x) in pts.iter().enumerate() {
        let mut p = Complex64::new(1.0, 0.0);
        for m in 0..m1 {
            // Re(g_m x^m) = gr pr - gi pi ; Im(g_m x^m) = gr pi + gi pr
            let (re_row, im_row) = (nv + 2 * i, nv + 2 * i + 1);
            kkt[(re_row, m)] = p.re;
            kkt[(re_row, m1 + m)] = -p.im;
            kkt[(im_row, m)] = p.im;
            kkt[(im_row, m1 + m)] = p.re;
            kkt[(m, re_row)] = p.re;
            kkt[(m1 + m, re_row)] = -p.im;
            kkt[(m, im_row)] = p.im;
            kkt[(m1 + m, im_row)] = p.re;
            p *= x;
        }
        rhs[nv + 2 * i] = values[i].re;
        rhs[nv + 2 * i + 1] = values[i].im;
    }
    let sol = kkt.lu().solve(&rhs).expect("KKT system is nonsingular for distinct nodes");
    DiskFunction::new((0..m1).map(|m| Complex64::new(sol[m], sol[m1 + m])).collect()).unwrap()
}

pub fn geometric(degree: usize) -> DiskFunction {
    DiskFunction::from_real(&(0..=degree).map(|m| 0.5f64.powi(m as i32 + 1)).collect::<Vec<_>>()).unwrap()
}
