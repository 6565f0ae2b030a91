//! Complex special functions and numeric utilities shared by every other module.
//!
//! All routines are pure. Series are accumulated with [`CompensatedSum`] in a
//! fixed ascending index order so results do not depend on evaluation schedule.

mod arith;
mod config;
mod gamma;
mod hurwitz;
mod quad;
mod sum;

pub use arith::{divisors, factorize, is_prime, kronecker_symbol, mobius, primes_up_to};
pub use config::PrecisionConfig;
pub use gamma::{gamma_fn, log_gamma};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_s_derivative_at_0};
pub use quad::{integrate, integrate_real, QuadValue};
pub use sum::CompensatedSum;

use num_complex::Complex64;

use crate::error::{domain, Result};

pub(crate) const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// `ln √(2π)`.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// True when `z` is one of `0, -1, -2, …`.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && libm::floor(z.re) == z.re
}

pub(crate) fn ensure_finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(domain(alloc::format!("{what} is not finite")))
    }
}
