use core::f64::consts::PI;

use num_complex::Complex64;

use super::{ensure_finite, is_nonpositive_integer, CompensatedSum, LN_SQRT_2PI};
use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// B_{2k} / (2k (2k-1)), k = 1..8: Stirling series for ln Γ.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_SHIFT: f64 = 15.0;

/// Γ(z) by the Lanczos approximation, with reflection for `Re z < 1/2`.
pub fn gamma_fn(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole("Gamma at a non-positive integer"));
    }
    ensure_finite(z, "Gamma argument")?;
    let value = if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let s = (z * PI).sin();
        Complex64::from(PI) / (s * lanczos(Complex64::new(1.0, 0.0) - z))
    } else {
        lanczos(z)
    };
    ensure_finite(value, "Gamma value")
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::from(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + (LANCZOS_G + 0.5);
    let log_part = (z + 0.5) * t.ln() - t + LN_SQRT_2PI;
    log_part.exp() * x
}

/// Principal branch of ln Γ(z) on the plane cut along `(-∞, 0]`.
///
/// Shifts `z` right by the recurrence until `Re w ≥ 15`, applies the Stirling
/// series there and subtracts `Σ Log(z+k)`. Every term is continuous off the
/// cut and the result is real on the positive axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole("log Gamma at a non-positive integer"));
    }
    ensure_finite(z, "log Gamma argument")?;
    let mut shift = CompensatedSum::new();
    let mut w = z;
    while w.re < STIRLING_SHIFT {
        shift.add(w.ln());
        w += 1.0;
    }
    let ln_w = w.ln();
    let mut acc = CompensatedSum::new();
    acc.add((w - 0.5) * ln_w);
    acc.add(-w);
    acc.add_real(LN_SQRT_2PI);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for &c in &STIRLING {
        acc.add(pow * c);
        pow *= inv2;
    }
    ensure_finite(acc.value() - shift.value(), "log Gamma value")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate, PrecisionConfig};
    use std::vec::Vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_anchor_values() {
        assert!((gamma_fn(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        let sqrt_pi = PI.sqrt();
        assert!((gamma_fn(c(0.5, 0.0)).unwrap() - sqrt_pi).norm() < 1e-14);
        assert!((gamma_fn(c(5.0, 0.0)).unwrap() - 24.0).norm() < 1e-12);
    }

    #[test]
    fn gamma_poles() {
        for k in 0..5 {
            assert!(matches!(gamma_fn(c(-(k as f64), 0.0)), Err(Error::Pole(_))));
            assert!(matches!(log_gamma(c(-(k as f64), 0.0)), Err(Error::Pole(_))));
        }
    }

    #[test]
    fn gamma_matches_integral_oracle() {
        // Γ(z) = ∫_0^∞ t^{z-1} e^{-t} dt with Re z = 2.5; the tail beyond 60 is < e^{-50}.
        let z = c(2.5, 1.0);
        let cfg = PrecisionConfig::default();
        let f = |t: f64| {
            if t == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                ((z - 1.0) * t.ln() - t).exp()
            }
        };
        let oracle = integrate(&f, 0.0, 60.0, &cfg).unwrap();
        let value = gamma_fn(z).unwrap();
        assert!((value - oracle).norm() / oracle.norm() < 1e-11, "{value} vs {oracle}");
    }

    #[test]
    fn log_gamma_anchor_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        let ln_9_fact = 362_880.0f64.ln();
        assert!((log_gamma(c(10.0, 0.0)).unwrap() - ln_9_fact).norm() < 1e-13);
    }

    #[test]
    fn log_gamma_exponentiates_to_gamma() {
        let mut pts = Vec::new();
        for i in 0..12 {
            for j in 0..9 {
                pts.push(c(-5.3 + 0.9 * i as f64, -8.0 + 2.0 * j as f64));
            }
        }
        for z in pts {
            let g = gamma_fn(z).unwrap();
            let lg = log_gamma(z).unwrap().exp();
            assert!((g - lg).norm() <= 1e-11 * g.norm().max(1e-300), "z = {z}: {g} vs {lg}");
        }
    }

    #[test]
    fn log_gamma_is_continuous_across_real_axis_for_positive_re() {
        let above = log_gamma(c(0.3, 1e-9)).unwrap();
        let below = log_gamma(c(0.3, -1e-9)).unwrap();
        assert!((above - below).norm() < 1e-8);
    }

    #[test]
    fn reflection_on_grid() {
        // 100 non-integer points with |z| ≤ 5.
        for i in 0..10 {
            for j in 0..10 {
                let z = c(-4.45 + 0.9 * i as f64, -2.7 + 0.6 * j as f64);
                if z.norm() > 5.0 {
                    continue;
                }
                let lhs = gamma_fn(z).unwrap() * gamma_fn(c(1.0, 0.0) - z).unwrap();
                let rhs = Complex64::from(PI) / (z * PI).sin();
                assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm(), "z = {z}");
            }
        }
    }
}
