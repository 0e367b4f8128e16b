//! Desk-scale verification of hidden-variable no-go results for finite-dimensional
//! quantum systems.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised as follows:
//!
//! * [`scalar`], [`matrix`], [`eigen`], [`operator`], [`joint`]: exact and floating-point
//!   linear algebra on small Hilbert spaces, including joint spectra of commuting families.
//! * [`valuation`]: valuation search over finite sets of rays or observables, with
//!   certificates in both directions and an independent checker.
//! * [`bootstrap`]: moving candidate representations down and uncolorable ray sets up
//!   in dimension.
//! * [`bell`]: the two-dimensional value representation with a uniform hidden variable.
//! * [`expectation`]: finite candidate expectation representations and a falsifier that
//!   produces re-checkable violation certificates.
//!
//! Only finite dimensions are supported. Joint spectra are computed for simultaneously
//! diagonalizable families; approximate joint eigenvectors of non-normal families are
//! out of reach of this crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bell;
pub mod bootstrap;
pub mod eigen;
pub mod error;
pub mod expectation;
pub mod graph;
pub mod joint;
pub mod matrix;
pub mod operator;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod valuation;

pub use error::Error;
pub use matrix::Matrix;
pub use num_complex::Complex64;
pub use operator::{DensityMatrix, Observable, Ray};
pub use scalar::{Exact, QSqrt2, Scalar};

/// Default tolerance for every floating-point comparison in the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

pub type Result<T, E = Error> = core::result::Result<T, E>;
