use libm::ceil;
use num_complex::Complex64;

use super::{ensure_finite, is_nonpositive_integer, CompensatedSum, PrecisionConfig};
use crate::error::{domain, Error, Result};

// B_{2k}, k = 1..15.
const BERNOULLI_2K: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43_867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
    8_553_103.0 / 6.0,
    -23_749_461_029.0 / 870.0,
    8_615_841_276_005.0 / 14_322.0,
];

fn check_z(z: Complex64) -> Result<()> {
    if is_nonpositive_integer(z) {
        return Err(domain("Hurwitz zeta parameter z must avoid 0, -1, -2, ..."));
    }
    ensure_finite(z, "Hurwitz parameter z")?;
    Ok(())
}

/// Number of directly summed terms: `max(series_cutoff, 10 |Im s|)`, pushed
/// further right when `Re z` is negative so the tail starts in `Re > 0`.
fn direct_terms(s: Complex64, z: Complex64, cfg: &PrecisionConfig) -> usize {
    let base = cfg.series_cutoff.max(ceil(10.0 * s.im.abs()) as usize);
    let lift = if z.re < 0.0 { ceil(-z.re) as usize } else { 0 };
    base + lift
}

/// Hurwitz zeta `ζ(s, z) = Σ_{ν≥0} (z+ν)^{-s}` continued to `s ≠ 1` by
/// Euler–Maclaurin summation. Powers use the principal argument of `z+ν`.
pub fn hurwitz_zeta(s: Complex64, z: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    cfg.validate()?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("Hurwitz zeta at s = 1"));
    }
    ensure_finite(s, "Hurwitz exponent s")?;
    check_z(z)?;
    let n = direct_terms(s, z, cfg);
    let mut acc = CompensatedSum::new();
    for nu in 0..n {
        acc.add((-s * (z + nu as f64).ln()).exp());
    }
    let a = z + n as f64;
    let ln_a = a.ln();
    let a_pow = (-s * ln_a).exp(); // a^{-s}
    acc.add(a_pow * a / (s - 1.0));
    acc.add(a_pow * 0.5);
    // Σ_k B_{2k}/(2k)! · s(s+1)…(s+2k-2) · a^{-s-2k+1}
    let inv_a = a.inv();
    let inv_a2 = inv_a * inv_a;
    let mut poch = s;
    let mut fact = 2.0;
    let mut pow = a_pow * inv_a;
    for k in 1..=cfg.euler_maclaurin_terms {
        acc.add(BERNOULLI_2K[k - 1] / fact * poch * pow);
        let m = 2.0 * k as f64;
        poch *= (s + (m - 1.0)) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        pow *= inv_a2;
    }
    ensure_finite(acc.value(), "Hurwitz zeta value")
}

/// `∂_s ζ(s, z)` at `s = 0`, obtained by differentiating the Euler–Maclaurin
/// expansion termwise.
///
/// Equals `Log Γ(z) − ln √(2π)` for `Re z > 0` with the principal branch of
/// log Γ; elsewhere it agrees with it up to an integer multiple of `2πi`.
pub fn hurwitz_zeta_s_derivative_at_0(z: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    cfg.validate()?;
    check_z(z)?;
    let n = direct_terms(Complex64::new(0.0, 0.0), z, cfg);
    let mut acc = CompensatedSum::new();
    for nu in 0..n {
        acc.add(-(z + nu as f64).ln());
    }
    let a = z + n as f64;
    let ln_a = a.ln();
    acc.add(a * ln_a);
    acc.add(-a);
    acc.add(-ln_a * 0.5);
    let inv_a = a.inv();
    let inv_a2 = inv_a * inv_a;
    let mut pow = inv_a;
    for k in 1..=cfg.euler_maclaurin_terms {
        let m = 2.0 * k as f64;
        acc.add(pow * (BERNOULLI_2K[k - 1] / (m * (m - 1.0))));
        pow *= inv_a2;
    }
    ensure_finite(acc.value(), "Hurwitz derivative value")
}
