//! Pivoted Cholesky factorization for Hermitian positive semidefinite matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// `P^T G P = L L^*` with `L` lower triangular of size `n x rank`.
#[derive(Debug, Clone)]
pub struct PivotedCholesky {
    l: DMatrix<Complex64>,
    perm: Vec<usize>,
    rank: usize,
    pivots: Vec<f64>,
}

impl PivotedCholesky {
    /// Factor `g`, stopping once the largest remaining diagonal entry of the
    /// Schur complement drops to `tol` or below.
    pub fn factor(g: &DMatrix<Complex64>, tol: f64) -> Self {
        let n = g.nrows();
        assert_eq!(n, g.ncols(), "Gram matrix must be square");
        let mut a = g.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut pivots = Vec::with_capacity(n);
        let mut rank = n;
        for j in 0..n {
            let (p, best) = (j..n)
                .map(|i| (i, a[(i, i)].re))
                .fold((j, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= tol {
                rank = j;
                break;
            }
            if p != j {
                a.swap_rows(j, p);
                a.swap_columns(j, p);
                perm.swap(j, p);
            }
            pivots.push(best);
            let d = best.sqrt();
            a[(j, j)] = Complex64::new(d, 0.0);
            for i in j + 1..n {
                a[(i, j)] /= d;
            }
            // Full (both triangles) Schur update so later symmetric swaps stay valid.
            for c in j + 1..n {
                let ljc = a[(c, j)].conj();
                for r in j + 1..n {
                    let v = a[(r, j)] * ljc;
                    a[(r, c)] -= v;
                }
                a[(c, c)].im = 0.0;
            }
        }
        let mut l = DMatrix::zeros(n, rank);
        for c in 0..rank {
            for r in c..n {
                l[(r, c)] = a[(r, c)];
            }
        }
        Self {
            l,
            perm,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.perm.len()
    }

    pub fn pivots(&self) -> &[f64] {
        &self.pivots
    }

    pub fn factor_l(&self) -> &DMatrix<Complex64> {
        &self.l
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Solve `G x = b`; only valid for a full-rank factorization.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        assert!(self.is_full_rank(), "solve needs a full-rank factorization");
        let n = self.perm.len();
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[(i, k)] * y[k];
            }
            y[i] = s / self.l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.l[(k, i)].conj() * y[k];
            }
            y[i] = s / self.l[(i, i)].conj();
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = y[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reconstructs_hermitian_matrix() {
        let b = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.5),
                c(-0.2, 0.1),
                c(0.3, 0.0),
                c(0.0, -1.0),
                c(2.0, 0.0),
                c(0.1, 0.4),
                c(0.7, 0.2),
                c(0.0, 0.3),
                c(-1.0, 1.0),
            ],
        );
        let g = &b * b.adjoint();
        let f = PivotedCholesky::factor(&g, 1e-14);
        assert!(f.is_full_rank());
        let ll = f.factor_l() * f.factor_l().adjoint();
        for i in 0..3 {
            for j in 0..3 {
                let p = f.permutation();
                assert!((ll[(i, j)] - g[(p[i], p[j])]).norm() < 1e-12);
            }
        }
        let rhs = [c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.5)];
        let x = f.solve(&rhs);
        let gx = &g * DMatrix::from_column_slice(3, 1, &x);
        for i in 0..3 {
            assert!((gx[(i, 0)] - rhs[i]).norm() < 1e-11);
        }
    }

    #[test]
    fn detects_rank() {
        let v = DMatrix::from_row_slice(3, 1, &[c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)]);
        let g = &v * v.adjoint();
        let f = PivotedCholesky::factor(&g, 1e-12);
        assert_eq!(f.rank(), 1);
        assert!(!f.is_full_rank());
    }
}
