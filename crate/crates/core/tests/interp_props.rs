mod common;

use std::f64::consts::PI;

use common::{geometric, lagrange_interpolant};
use hardylog::rkhs_interp::{
    convergence_experiment, dyadic_schedule, gram_matrix, min_norm_interpolant, KernelSpec, SampleSet,
};
use hardylog::{Arc, Complex64, DiskFunction};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn coeffs(max_degree: usize) -> impl Strategy<Value = DiskFunction> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=max_degree + 1)
        .prop_map(|v| DiskFunction::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

fn nodes(arc: Arc, count: usize) -> impl Strategy<Value = SampleSet> {
    grid_nodes(arc, count, 10_000)
}

/// Distinct nodes on a uniform grid of `steps + 1` points along the arc.
fn grid_nodes(arc: Arc, count: usize, steps: u32) -> impl Strategy<Value = SampleSet> {
    prop::collection::btree_set(0..=steps, count).prop_map(move |set| {
        let angles = set
            .into_iter()
            .map(|i| arc.start() + arc.length() * i as f64 / steps as f64)
            .collect();
        SampleSet::new(angles, &arc, 0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reproducing_property(g in coeffs(24), k in 0usize..3, r in 0.0..1.0f64, t in -PI..PI) {
        let spec = KernelSpec::new(k, 24).unwrap();
        let w = Complex64::from_polar(r, t);
        let section = DiskFunction::new(spec.section(w)).unwrap();
        let lhs = spec.inner(&g.with_capacity(24), &section);
        let rhs = g.evaluate(w).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        prop_assert!((spec.eval(Complex64::from_polar(0.9, 0.4), w) - section.evaluate(Complex64::from_polar(0.9, 0.4)).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn gram_is_positive_semidefinite(s in nodes(Arc::new(0.7, 0.4).unwrap(), 6), k in 0usize..3) {
        let spec = KernelSpec::new(k, 12).unwrap();
        let g = gram_matrix(&spec, &s);
        let n = g.nrows();
        // real symmetric embedding [[Re, -Im], [Im, Re]] shares the spectrum, doubled
        let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                big[(i, j)] = g[(i, j)].re;
                big[(i + n, j + n)] = g[(i, j)].re;
                big[(i, j + n)] = -g[(i, j)].im;
                big[(i + n, j)] = g[(i, j)].im;
            }
        }
        let eig = big.symmetric_eigen();
        let scale = eig.eigenvalues.max();
        prop_assert!(eig.eigenvalues.min() >= -1e-12 * scale);
    }

    #[test]
    fn matches_lagrange_oracle(
        f in coeffs(8),
        s in (1usize..=3).prop_flat_map(|n| grid_nodes(Arc::semicircle(), n, 30)),
        k in 0usize..3,
        m in 3usize..=8,
    ) {
        let spec = KernelSpec::new(k, m).unwrap();
        let values: Vec<Complex64> = s.points().iter().map(|x| f.evaluate(*x).unwrap()).collect();
        let ours = min_norm_interpolant(&spec, &s, &values).unwrap();
        let oracle = lagrange_interpolant(&spec, &s, &values);
        let scale = 1.0 + oracle.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
        for mm in 0..=m {
            prop_assert!((ours.function.coeff(mm) - oracle.coeff(mm)).norm() < 1e-8 * scale);
        }
    }

    #[test]
    fn projection_contracts_and_is_orthogonal(f in coeffs(16), s in nodes(Arc::new(-1.0, 0.3).unwrap(), 5)) {
        let spec = KernelSpec::new(1, 16).unwrap();
        let f = f.with_capacity(16);
        let values: Vec<Complex64> = s.points().iter().map(|x| f.evaluate(*x).unwrap()).collect();
        let g = min_norm_interpolant(&spec, &s, &values).unwrap();
        prop_assume!(!g.regularized());
        let nf = f.sobolev_norm(1);
        let ng = g.function.sobolev_norm(1);
        let nd = f.sub(&g.function).sobolev_norm(1);
        prop_assert!(ng <= nf + 1e-8);
        prop_assert!((nf * nf - ng * ng - nd * nd).abs() <= 1e-6 * nf * nf);
        let ymax = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assert!(g.residual < 1e-8 * (1.0 + ymax));
    }

    #[test]
    fn perturbations_do_not_reduce_the_norm(
        f in coeffs(8),
        s in (1usize..=3).prop_flat_map(|n| nodes(Arc::semicircle(), n)),
        dir in coeffs(8),
        eps in -0.5..0.5f64,
    ) {
        let spec = KernelSpec::new(1, 8).unwrap();
        let values: Vec<Complex64> = s.points().iter().map(|x| f.evaluate(*x).unwrap()).collect();
        let g = min_norm_interpolant(&spec, &s, &values).unwrap();
        // project dir onto the constraint nullspace: subtract its own interpolant
        let dvals: Vec<Complex64> = s.points().iter().map(|x| dir.evaluate(*x).unwrap()).collect();
        let dproj = dir.with_capacity(8).sub(&min_norm_interpolant(&spec, &s, &dvals).unwrap().function);
        let other = g.function.add(&dproj.scale_real(eps));
        prop_assert!(other.sobolev_norm(1) >= g.function.sobolev_norm(1) - 1e-10);
    }
}

#[test]
fn error_decreases_on_geometric_target() {
    let semi = Arc::semicircle();
    let spec = KernelSpec::new(1, 64).unwrap();
    let sched = dyadic_schedule(&semi, &[4, 8, 16, 32, 64, 128, 256]).unwrap();
    let rep = convergence_experiment(&geometric(64), &semi, &spec, &sched).unwrap();
    assert!(rep.rows.windows(2).all(|w| w[1].error < w[0].error));
    assert!(rep.rows.iter().all(|r| r.residual < 1e-8 && r.interpolant_norm <= 1.0 + 1e-8));
    assert!(rep.rows.iter().all(|r| r.pre_asymptotic));
    assert!(rep.alpha_hat_admissible.is_none());
    assert!((rep.target_norm - 1.0).abs() < 1e-12);
}
