//! Numerical verification of zeta-regularized determinants, explicit formulas
//! and dynamical Lefschetz trace formulas.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure: file
//! formats, reports and the command-line front end live in the `zrl` crate.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`numerics`] | Gamma, log-Gamma, Hurwitz zeta, quadrature, Möbius/divisors |
//! | [`regdet`] | spectral zeta functions and regularized determinants of ladders |
//! | [`zeros`] | Riemann–Siegel `Z(t)` and a zero finder for `ζ(s)` |
//! | [`distribution`] | exponential sums and Dirac combs paired against test functions |
//! | [`explicit`] | both sides of the explicit formula for `ℚ` and quadratic fields |
//! | [`suspension`] | orbit and spectral data of suspension flows, trace formula |
//! | [`kronecker`] | leafwise cohomology of the irrational-slope foliation of `T²` |
//! | [`lefschetz`] | arithmetic and dynamical Lefschetz numbers |
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod distribution;
mod error;
pub mod explicit;
pub mod kronecker;
pub mod lefschetz;
pub mod numerics;
pub mod regdet;
pub mod suspension;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use numerics::PrecisionConfig;

/// Complex scalar used throughout the crate.
pub type ComplexValue = Complex64;
