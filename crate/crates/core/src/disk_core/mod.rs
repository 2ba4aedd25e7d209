//! Coefficient-level representation of analytic functions on the closed unit disk.
//!
//! Every norm used by the estimates is diagonal in the Taylor basis: the Hardy
//! norm is the l^2 norm of the coefficients, integral means weight coefficient
//! `m` by `r^{2m}`, and the Hardy-Sobolev norm weights it by
//! [`SobolevWeights`]. Boundary values are derived from the coefficients and
//! only enter through subarc norms, which are computed by composite
//! Gauss-Legendre quadrature.

mod arc;
mod function;
pub mod quadrature;

pub use arc::{reduce_angle, signed_angle, Arc};
pub use function::{
    circle_mean_sq_by_quadrature, falling_factorial, BoundaryTrace, DiskFunction, SobolevWeights,
};
pub use quadrature::{PanelLayout, QuadratureRule};
