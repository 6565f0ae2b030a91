use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation at a pole of the function.
    Pole(&'static str),
    /// Argument outside the supported domain.
    Domain(String),
    /// Adaptive procedure ran out of refinement budget.
    Convergence { estimate: Complex64, error: f64 },
    /// The spectrum contains zero; the regularized determinant is zero.
    ZeroEigenvalue,
    /// Zero count disagrees with the Riemann–von Mangoldt estimate.
    MissedZero { lo: f64, hi: f64, found: usize, expected: f64 },
    /// Ordinates are not strictly ascending (index of the first offender).
    Order { index: usize },
    /// A truncation parameter is too small for the requested guarantee.
    Truncation(String),
    /// The Weil distribution was requested on a support containing 0.
    UnsupportedPrincipalValue,
    /// The curve is supersingular (`p | a_p`).
    NotOrdinary { p: u64, a_p: i64 },
    /// Integer or rounding guard breached.
    Precision(String),
    /// Data violates an exact identity it must satisfy.
    Consistency(String),
    /// Divisors `|mα+n|` below the threshold at the listed modes.
    SmallDivisor { modes: Vec<(i64, i64)>, smallest: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole(what) => write!(f, "pole: {what}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence { estimate, error } => write!(
                f,
                "no convergence (best estimate {} {:+}i, error estimate {error:e})",
                estimate.re, estimate.im
            ),
            Error::ZeroEigenvalue => write!(f, "spectrum contains 0"),
            Error::MissedZero { lo, hi, found, expected } => write!(
                f,
                "zero count mismatch on [{lo}, {hi}]: found {found}, expected about {expected:.2}"
            ),
            Error::Order { index } => write!(f, "ordinates not strictly ascending at entry {index}"),
            Error::Truncation(msg) => write!(f, "truncation error: {msg}"),
            Error::UnsupportedPrincipalValue => {
                write!(f, "Weil term undefined for test functions whose support contains 0")
            }
            Error::NotOrdinary { p, a_p } => {
                write!(f, "curve with p = {p}, a_p = {a_p} is not ordinary")
            }
            Error::Precision(msg) => write!(f, "precision error: {msg}"),
            Error::Consistency(msg) => write!(f, "consistency error: {msg}"),
            Error::SmallDivisor { modes, smallest } => write!(
                f,
                "small divisors at {} mode(s), smallest |mα+n| = {smallest:e}",
                modes.len()
            ),
        }
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
