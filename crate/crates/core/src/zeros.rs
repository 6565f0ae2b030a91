//! Nontrivial zeros of `ζ(s)` on the critical line.
//!
//! Zeros are located as sign changes of Hardy's `Z(t)`. Above height 100 `Z`
//! comes from the Riemann–Siegel main sum plus the remainder series
//! `C_0 … C_4`; below it the asymptotic series is not accurate enough and
//! `ζ(1/2 + it)` is summed by Euler–Maclaurin instead. Only the ordinates `γ`
//! are stored; consumers rebuild `ρ = 1/2 ± iγ`.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::floor;
use num_complex::Complex64;
// f64 math methods for no_std builds; std builds resolve them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::numerics::{hurwitz_zeta, log_gamma, CompensatedSum, PrecisionConfig, TWO_PI};

/// Lowest height accepted by `θ(t)` and `Z(t)`.
pub const MIN_HEIGHT: f64 = 10.0;
/// Highest `t_max` accepted by [`find_zeros`].
pub const MAX_HEIGHT: f64 = 1.0e4;
/// First height scanned by [`find_zeros`].
pub const SCAN_START: f64 = 14.0;
/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-9;
/// Below this height [`hardy_z`] uses the Euler–Maclaurin evaluation.
pub const RIEMANN_SIEGEL_MIN_HEIGHT: f64 = 100.0;
/// Allowed gap between the zero count and `θ(T)/π + 1`.
pub const COUNT_SLACK: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroSource {
    Computed { t_max: f64 },
    File { path: String, field_label: Option<String> },
}

/// Strictly ascending positive ordinates of zeros `1/2 + iγ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    source: ZeroSource,
}

impl ZeroList {
    pub fn new(ordinates: Vec<f64>, source: ZeroSource) -> Result<Self> {
        for (i, &g) in ordinates.iter().enumerate() {
            if !(g > 0.0) || !g.is_finite() {
                return Err(domain(alloc::format!("ordinate {i} is not a positive finite number")));
            }
            if i > 0 && !(ordinates[i - 1] < g) {
                return Err(Error::Order { index: i });
            }
        }
        Ok(ZeroList { ordinates, source })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> &ZeroSource {
        &self.source
    }

    pub fn field_label(&self) -> Option<&str> {
        match &self.source {
            ZeroSource::File { field_label, .. } => field_label.as_deref(),
            ZeroSource::Computed { .. } => Some("q"),
        }
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Keeps only ordinates `≤ height`.
    pub fn truncated(&self, height: f64) -> ZeroList {
        let ordinates = self.ordinates.iter().copied().filter(|&g| g <= height).collect();
        ZeroList { ordinates, source: self.source.clone() }
    }
}

/// Riemann–Siegel theta by its asymptotic expansion, valid for `t ≥ 10`.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    if !(t >= MIN_HEIGHT) || !t.is_finite() {
        return Err(domain("riemann_siegel_theta needs t >= 10"));
    }
    let t3 = t * t * t;
    Ok(0.5 * t * (t / TWO_PI).ln() - 0.5 * t - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t3))
}

/// Smooth part `θ(T)/π + 1` of the zero-counting function.
pub fn riemann_von_mangoldt_estimate(t: f64) -> Result<f64> {
    Ok(riemann_siegel_theta(t)? / PI + 1.0)
}

fn psi(p: Complex64) -> Complex64 {
    // Ψ(p) = cos(2π(p² - p - 1/16)) / cos(2πp); entire, all zeros of the
    // denominator are cancelled by the numerator.
    (TWO_PI * (p * p - p - 0.0625)).cos() / (TWO_PI * p).cos()
}

const CAUCHY_NODES: usize = 64;
const CAUCHY_RADIUS: f64 = 0.5;

/// `Ψ^{(k)}(p)` for `k = 0..=12` by the trapezoidal rule on Cauchy's integral.
/// Nodes sit half a step off the real axis to stay clear of the removable
/// singularities.
fn psi_derivatives(p: f64) -> [f64; 13] {
    let mut acc = [Complex64::new(0.0, 0.0); 13];
    for j in 0..CAUCHY_NODES {
        let phi = TWO_PI * (j as f64 + 0.5) / CAUCHY_NODES as f64;
        let unit = Complex64::new(phi.cos(), phi.sin());
        let v = psi(Complex64::new(p, 0.0) + unit * CAUCHY_RADIUS);
        let back = unit.conj();
        let mut rot = Complex64::new(1.0, 0.0);
        for slot in acc.iter_mut() {
            *slot += v * rot;
            rot *= back;
        }
    }
    let mut out = [0.0; 13];
    let mut scale = 1.0 / CAUCHY_NODES as f64;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            scale *= k as f64 / CAUCHY_RADIUS;
        }
        *slot = acc[k].re * scale;
    }
    out
}

/// Remainder coefficients `C_0 … C_4` of the Riemann–Siegel formula.
fn remainder_coefficients(p: f64) -> [f64; 5] {
    let d = psi_derivatives(p);
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let pi6 = pi4 * pi2;
    let pi8 = pi4 * pi4;
    [
        d[0],
        -d[3] / (96.0 * pi2),
        d[2] / (64.0 * pi2) + d[6] / (18_432.0 * pi4),
        -d[1] / (64.0 * pi2) - d[5] / (3_840.0 * pi4) - d[9] / (5_308_416.0 * pi6),
        d[0] / (128.0 * pi2)
            + 19.0 * d[4] / (24_576.0 * pi4)
            + 11.0 * d[8] / (5_898_240.0 * pi6)
            + d[12] / (2_038_431_744.0 * pi8),
    ]
}

/// Hardy's `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real for real `t ≥ 10`.
pub fn hardy_z(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if t < RIEMANN_SIEGEL_MIN_HEIGHT {
        hardy_z_euler_maclaurin(t, cfg)
    } else {
        hardy_z_riemann_siegel(t)
    }
}

/// `Z(t)` from the Euler–Maclaurin `ζ(1/2+it)` and the exact
/// `θ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π`. Cost grows linearly in `t`.
pub fn hardy_z_euler_maclaurin(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(t >= MIN_HEIGHT) || !t.is_finite() {
        return Err(domain("hardy_z needs t >= 10"));
    }
    let zeta = hurwitz_zeta(Complex64::new(0.5, t), Complex64::new(1.0, 0.0), cfg)?;
    let theta = log_gamma(Complex64::new(0.25, 0.5 * t))?.im - 0.5 * t * PI.ln();
    Ok((Complex64::new(0.0, theta).exp() * zeta).re)
}

/// Riemann–Siegel `Z(t)`: main sum plus remainder terms through `C_4`.
/// The truncation error decays like `t^{-11/4}` (about 1e-8 at `t = 100`).
pub fn hardy_z_riemann_siegel(t: f64) -> Result<f64> {
    let theta = riemann_siegel_theta(t)?;
    let a = (t / TWO_PI).sqrt();
    let n = floor(a) as u64;
    let p = a - n as f64;
    let mut main = CompensatedSum::new();
    for k in 1..=n {
        let kf = k as f64;
        main.add_real((theta - t * kf.ln()).cos() / kf.sqrt());
    }
    let coeffs = remainder_coefficients(p);
    let inv_a = 1.0 / a;
    let mut rem = CompensatedSum::new();
    let mut pow = 1.0;
    for c in coeffs {
        rem.add_real(c * pow);
        pow *= inv_a;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(2.0 * main.real() + sign * rem.real() / a.sqrt())
}

fn scan_step(t: f64) -> f64 {
    if t < 1000.0 {
        0.05
    } else {
        0.02
    }
}

fn bisect(mut lo: f64, mut hi: f64, mut z_lo: f64, cfg: &PrecisionConfig) -> Result<f64> {
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let z_mid = hardy_z(mid, cfg)?;
        if z_mid == 0.0 {
            return Ok(mid);
        }
        if (z_mid > 0.0) == (z_lo > 0.0) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sign-change scan of `Z` over `[14, t_max]`, refined by bisection.
///
/// The scan step is 0.05 below height 1000 and 0.02 above. The total count is
/// checked against `θ(t_max)/π + 1`; a gap larger than 2 is reported with the
/// 100-wide block whose local count deviates most.
pub fn find_zeros(t_max: f64, cfg: &PrecisionConfig) -> Result<ZeroList> {
    if !(SCAN_START..=MAX_HEIGHT).contains(&t_max) {
        return Err(domain("find_zeros needs 14 <= t_max <= 1e4"));
    }
    let mut zeros = Vec::new();
    let mut t = SCAN_START;
    let mut z_prev = hardy_z(t, cfg)?;
    while t < t_max {
        let next = (t + scan_step(t)).min(t_max);
        let z_next = hardy_z(next, cfg)?;
        if z_next == 0.0 {
            zeros.push(next);
        } else if z_prev != 0.0 && (z_prev > 0.0) != (z_next > 0.0) {
            zeros.push(bisect(t, next, z_prev, cfg)?);
        }
        t = next;
        z_prev = z_next;
    }
    let expected = riemann_von_mangoldt_estimate(t_max)?;
    if (zeros.len() as f64 - expected).abs() > COUNT_SLACK {
        return Err(worst_block(&zeros, t_max));
    }
    ZeroList::new(zeros, ZeroSource::Computed { t_max })
}

fn worst_block(zeros: &[f64], t_max: f64) -> Error {
    let smooth = |t: f64| riemann_von_mangoldt_estimate(t.max(MIN_HEIGHT)).unwrap_or(0.0);
    let mut worst = (SCAN_START, t_max, zeros.len(), smooth(t_max));
    let mut worst_gap = -1.0;
    let mut lo = SCAN_START;
    while lo < t_max {
        let hi = (lo + 100.0).min(t_max);
        let found = zeros.iter().filter(|&&g| g > lo && g <= hi).count();
        let expected = smooth(hi) - smooth(lo);
        let gap = (found as f64 - expected).abs();
        if gap > worst_gap {
            worst_gap = gap;
            worst = (lo, hi, found, expected);
        }
        lo = hi;
    }
    Error::MissedZero { lo: worst.0, hi: worst.1, found: worst.2, expected: worst.3 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{hurwitz_zeta, log_gamma};

    /// Independent `Z(t)` from Euler–Maclaurin `ζ` and the exact θ via log Γ.
    fn z_oracle(t: f64) -> f64 {
        let cfg = PrecisionConfig::default();
        let zeta = hurwitz_zeta(Complex64::new(0.5, t), Complex64::new(1.0, 0.0), &cfg).unwrap();
        let theta = log_gamma(Complex64::new(0.25, 0.5 * t)).unwrap().im - 0.5 * t * PI.ln();
        (Complex64::new(0.0, theta).exp() * zeta).re
    }

    #[test]
    fn theta_against_exact_log_gamma() {
        for t in [10.0, 17.08, 20.0, 50.0, 100.0, 1234.5] {
            let exact = log_gamma(Complex64::new(0.25, 0.5 * t)).unwrap().im - 0.5 * t * PI.ln();
            assert!((riemann_siegel_theta(t).unwrap() - exact).abs() < 1e-7, "t = {t}");
        }
        assert!(riemann_siegel_theta(100.0).unwrap() > riemann_siegel_theta(50.0).unwrap());
        assert!(riemann_siegel_theta(2.0 * PI * core::f64::consts::E).unwrap().is_finite());
        assert!(riemann_siegel_theta(9.9).is_err());
    }

    #[test]
    fn hardy_z_matches_euler_maclaurin() {
        let cfg = PrecisionConfig::default();
        for t in [40.0, 55.5, 99.9, 250.0, 777.7, 2500.0] {
            let rs = hardy_z_riemann_siegel(t).unwrap();
            let em = z_oracle(t);
            assert!((rs - em).abs() < 1e-6, "t = {t}: {rs} vs {em}");
        }
        // Both paths agree with each other where hardy_z switches over.
        let t = RIEMANN_SIEGEL_MIN_HEIGHT;
        assert!((hardy_z(t - 1e-9, &cfg).unwrap() - hardy_z(t, &cfg).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn z_squared_is_zeta_modulus_squared() {
        let cfg = PrecisionConfig::default();
        for t in [18.0, 40.0, 120.0] {
            let zeta = hurwitz_zeta(Complex64::new(0.5, t), Complex64::new(1.0, 0.0), &cfg).unwrap();
            let z = hardy_z(t, &cfg).unwrap();
            assert!((z * z - zeta.norm_sqr()).abs() < 1e-6 * (1.0 + zeta.norm_sqr()));
        }
    }

    #[test]
    fn sign_pattern_near_first_zero() {
        let cfg = PrecisionConfig::default();
        assert!(hardy_z(14.0, &cfg).unwrap() * hardy_z(14.2, &cfg).unwrap() < 0.0);
        let mut t = 10.0;
        let first = hardy_z(t, &cfg).unwrap();
        while t < 14.0 {
            t += 0.01;
            assert!(hardy_z(t, &cfg).unwrap() * first > 0.0, "sign change at {t}");
        }
    }

    #[test]
    fn small_heights() {
        let cfg = PrecisionConfig::default();
        assert!(find_zeros(14.0, &cfg).unwrap().is_empty());
        let z = find_zeros(15.0, &cfg).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z.ordinates()[0] - 14.134_725_142).abs() < 1e-6);
        let z = find_zeros(30.0, &cfg).unwrap();
        let expect = [14.1347, 21.0220, 25.0109];
        assert_eq!(z.len(), 3);
        for (g, e) in z.ordinates().iter().zip(expect) {
            assert!((g - e).abs() < 1e-4);
        }
        assert!(find_zeros(13.9, &cfg).is_err());
        assert!(find_zeros(1.0e4 + 1.0, &cfg).is_err());
    }

    #[test]
    fn reported_zeros_are_roots_and_deterministic() {
        let cfg = PrecisionConfig::default();
        let a = find_zeros(120.0, &cfg).unwrap();
        let b = find_zeros(120.0, &cfg).unwrap();
        assert_eq!(a, b);
        for &g in a.ordinates() {
            assert!(hardy_z(g, &cfg).unwrap().abs() <= 1e-6);
        }
    }

    #[test]
    fn counts_track_riemann_von_mangoldt() {
        let cfg = PrecisionConfig::default();
        for t in [50.0, 100.0, 200.0] {
            let z = find_zeros(t, &cfg).unwrap();
            let est = riemann_von_mangoldt_estimate(t).unwrap();
            assert!((z.len() as f64 - est).abs() <= COUNT_SLACK, "T = {t}");
        }
        assert_eq!(find_zeros(100.0, &cfg).unwrap().len(), 29);
        assert_eq!(find_zeros(200.0, &cfg).unwrap().len(), 79);
    }

    #[test]
    fn zero_list_validation() {
        assert!(ZeroList::new(alloc::vec![1.0, 2.0], ZeroSource::Computed { t_max: 3.0 }).is_ok());
        assert_eq!(
            ZeroList::new(alloc::vec![2.0, 1.0], ZeroSource::Computed { t_max: 3.0 }),
            Err(Error::Order { index: 1 })
        );
        assert!(ZeroList::new(alloc::vec![-1.0], ZeroSource::Computed { t_max: 3.0 }).is_err());
    }
}
