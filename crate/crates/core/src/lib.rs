//! Numerical toolkit for Hardy-Sobolev spaces on the unit disk.
//!
//! Functions are stored as truncated Taylor series, so every Hardy and
//! Hardy-Sobolev norm is a weighted coefficient sum. On top of that
//! representation the crate provides:
//!
//! * [`disk_core`]: coefficient arithmetic, integral means, circle and subarc norms;
//! * [`estimates`]: checkers for the classical inequalities used by the
//!   logarithmic estimate, the explicit proof constants, and the stability functionals;
//! * [`sharpness`]: the extremal family `(z - a)^n` evaluated in log space;
//! * [`rkhs_interp`]: minimal-norm interpolation from boundary samples through the
//!   reproducing kernel;
//! * [`robin_lab`]: a Fourier collocation solver for the Neumann-Robin problem and a
//!   stability experiment for the Robin coefficient;
//! * [`harness`]: configuration, seeded random families and CSV reports driving the CLI.

pub mod disk_core;
pub mod error;
pub mod estimates;
pub mod harness;
pub mod rkhs_interp;
pub mod robin_lab;
pub mod sharpness;

pub use disk_core::{Arc, BoundaryTrace, DiskFunction, QuadratureRule, SobolevWeights};
pub use error::{Error, Result};
pub use num_complex::Complex64;
