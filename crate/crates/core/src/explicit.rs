//! Both sides of the explicit formula for a number field `K`:
//!
//! ```text
//! Φ(0) − Σ_ρ Φ(ρ) + Φ(1) = −log|d_K| φ(0)
//!     + Σ_{𝔭∤∞} log N𝔭 ( Σ_{k≥1} φ(k log N𝔭) + Σ_{k≤−1} N𝔭^k φ(k log N𝔭) )
//!     + Σ_{𝔭|∞} W_𝔭(φ)
//! ```
//!
//! with `Φ(s) = ∫ φ(t) e^{ts} dt`. Zeros are taken on the critical line,
//! `ρ = 1/2 ± iγ`. Each side is built as a distribution
//! ([`ExplicitFormulaDistribution`]) and then paired with `φ`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use libm::erfc;
use num_complex::Complex64;
// f64 math methods for no_std builds; std builds resolve them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::distribution::{DiracComb, ExponentialSum};
use crate::error::{domain, Error, Result};
use crate::numerics::{integrate, integrate_real, kronecker_symbol, primes_up_to, PrecisionConfig, TWO_PI};
use crate::zeros::ZeroList;

/// Upper Chebyshev bound `ψ(x) < 1.03883 x` (Rosser–Schoenfeld), rounded up.
const CHEBYSHEV_PSI: f64 = 1.04;

/// Smallest truncation multiple accepted for Gaussian test functions.
pub const MIN_GAUSSIAN_TRUNCATION: f64 = 6.0;

/// Standard normal upper tail `P(N > x)`.
fn normal_tail(x: f64) -> f64 {
    0.5 * erfc(x * FRAC_1_SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// `exp(−1/(1−u²))`, `u = (t−c)/w`, supported on `(c−w, c+w)`.
    Bump { center: f64, halfwidth: f64 },
    /// `exp(−(t−c)²/(2σ²))`, treated as supported on `(c−mσ, c+mσ)`.
    Gaussian { center: f64, sigma: f64, truncation: f64 },
}

impl Profile {
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Profile::Bump { center, halfwidth } => (center - halfwidth, center + halfwidth),
            Profile::Gaussian { center, sigma, truncation } => (center - truncation * sigma, center + truncation * sigma),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Profile::Bump { center, halfwidth } => {
                let u = (t - center) / halfwidth;
                if u.abs() < 1.0 {
                    (-1.0 / (1.0 - u * u)).exp()
                } else {
                    0.0
                }
            }
            Profile::Gaussian { center, sigma, .. } => {
                let u = (t - center) / sigma;
                (-0.5 * u * u).exp()
            }
        }
    }

    pub fn transform(&self, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
        match *self {
            Profile::Gaussian { center, sigma, .. } => {
                Ok((s * center + s * s * (0.5 * sigma * sigma)).exp() * (TWO_PI.sqrt() * sigma))
            }
            Profile::Bump { .. } => {
                let (a, b) = self.support();
                integrate(&|t: f64| (s * t).exp() * self.eval(t), a, b, cfg)
            }
        }
    }

    /// `∫ |φ(t) e^{ts}|` over the part of `ℝ` outside the numerical support.
    fn outside_mass(&self, re_s: f64) -> f64 {
        match *self {
            Profile::Bump { .. } => 0.0,
            Profile::Gaussian { center, sigma, truncation } => {
                let x = re_s * sigma;
                TWO_PI.sqrt()
                    * sigma
                    * (re_s * center + 0.5 * x * x).exp()
                    * (normal_tail(truncation - x) + normal_tail(truncation + x))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSide {
    PositiveSupport,
    NegativeSupport,
    StraddlesZero,
}

/// A finite linear combination of bump and Gaussian profiles.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TestFunction {
    terms: Vec<(f64, Profile)>,
}

impl TestFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn bump(center: f64, halfwidth: f64) -> Result<Self> {
        if !(halfwidth > 0.0) || !center.is_finite() || !halfwidth.is_finite() {
            return Err(domain("bump needs a finite center and halfwidth > 0"));
        }
        Ok(TestFunction { terms: alloc::vec![(1.0, Profile::Bump { center, halfwidth })] })
    }

    pub fn gaussian(center: f64, sigma: f64, truncation: f64) -> Result<Self> {
        if !(sigma > 0.0) || !center.is_finite() || !sigma.is_finite() {
            return Err(domain("gaussian needs a finite center and sigma > 0"));
        }
        if !(truncation >= MIN_GAUSSIAN_TRUNCATION) || !truncation.is_finite() {
            return Err(domain("gaussian truncation multiple must be >= 6"));
        }
        Ok(TestFunction { terms: alloc::vec![(1.0, Profile::Gaussian { center, sigma, truncation })] })
    }

    pub fn terms(&self) -> &[(f64, Profile)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        if factor == 0.0 {
            return Self::zero();
        }
        TestFunction { terms: self.terms.iter().map(|&(c, p)| (c * factor, p)).collect() }
    }

    pub fn plus(&self, other: &TestFunction) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        TestFunction { terms }
    }

    /// `t ↦ φ(−t)`.
    pub fn reflected(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|&(c, p)| {
                let p = match p {
                    Profile::Bump { center, halfwidth } => Profile::Bump { center: -center, halfwidth },
                    Profile::Gaussian { center, sigma, truncation } => {
                        Profile::Gaussian { center: -center, sigma, truncation }
                    }
                };
                (c, p)
            })
            .collect();
        TestFunction { terms }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|&(c, p)| c * p.eval(t)).sum()
    }

    /// Convex hull of the (numerical) supports; `None` for the zero function.
    pub fn support(&self) -> Option<(f64, f64)> {
        self.terms.iter().map(|(_, p)| p.support()).reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    pub fn sign_side(&self) -> Option<SignSide> {
        self.support().map(|(a, b)| {
            if a >= 0.0 {
                SignSide::PositiveSupport
            } else if b <= 0.0 {
                SignSide::NegativeSupport
            } else {
                SignSide::StraddlesZero
            }
        })
    }

    pub fn is_compactly_supported(&self) -> bool {
        self.terms.iter().all(|(_, p)| matches!(p, Profile::Bump { .. }))
    }

    /// `∫ |φ(t) e^{t·re_s}| dt` neglected by treating Gaussians as supported
    /// on their truncation interval.
    pub fn outside_mass(&self, re_s: f64) -> f64 {
        self.terms.iter().map(|&(c, p)| c.abs() * p.outside_mass(re_s)).sum()
    }
}

/// Two-sided Laplace transform `Φ(s) = ∫ φ(t) e^{ts} dt`.
///
/// Gaussians use the closed form of the untruncated Gaussian; bumps are
/// integrated by adaptive quadrature over their support.
pub fn transform(phi: &TestFunction, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let mut acc = crate::numerics::CompensatedSum::new();
    for &(c, p) in &phi.terms {
        acc.add(p.transform(s, cfg)? * c);
    }
    Ok(acc.value())
}

/// A nonzero prime ideal, recorded by its norm; `count` ideals share it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub norm: u64,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberFieldData {
    label: String,
    discriminant: i64,
    r1: u32,
    r2: u32,
}

/// Fundamental discriminants: `D ≡ 1 (4)` squarefree, or `D = 4m` with
/// `m ≡ 2, 3 (4)` squarefree; `D ≠ 1`.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let squarefree = |m: i64| {
        let m = m.unsigned_abs();
        crate::numerics::factorize(m).iter().all(|&(_, e)| e == 1)
    };
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

impl NumberFieldData {
    pub fn rational() -> Self {
        NumberFieldData { label: String::from("q"), discriminant: 1, r1: 1, r2: 0 }
    }

    pub fn quadratic(discriminant: i64) -> Result<Self> {
        if !is_fundamental_discriminant(discriminant) {
            return Err(domain(format!("{discriminant} is not a fundamental discriminant")));
        }
        let (r1, r2) = if discriminant > 0 { (2, 0) } else { (0, 1) };
        Ok(NumberFieldData { label: format!("disc:{discriminant}"), discriminant, r1, r2 })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn r1(&self) -> u32 {
        self.r1
    }

    pub fn r2(&self) -> u32 {
        self.r2
    }

    pub fn degree(&self) -> u32 {
        self.r1 + 2 * self.r2
    }

    /// Prime ideals of norm `≤ bound`, ascending by norm.
    ///
    /// For quadratic fields the splitting of `p` follows the Kronecker symbol
    /// `(D|p)`: split gives two ideals of norm `p`, inert one of norm `p²`,
    /// ramified one of norm `p`.
    pub fn prime_ideals(&self, bound: u64) -> Vec<PrimeIdeal> {
        let mut out = Vec::new();
        for p in primes_up_to(bound) {
            if self.degree() == 1 {
                out.push(PrimeIdeal { norm: p, count: 1 });
                continue;
            }
            match kronecker_symbol(self.discriminant, p) {
                1 => out.push(PrimeIdeal { norm: p, count: 2 }),
                0 => out.push(PrimeIdeal { norm: p, count: 1 }),
                _ => {
                    if let Some(n) = p.checked_mul(p) {
                        if n <= bound {
                            out.push(PrimeIdeal { norm: n, count: 1 });
                        }
                    }
                }
            }
        }
        out.sort_by_key(|q| q.norm);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeilTermParams {
    kappa: i32,
}

impl WeilTermParams {
    pub const REAL: WeilTermParams = WeilTermParams { kappa: -2 };
    pub const COMPLEX: WeilTermParams = WeilTermParams { kappa: -1 };

    pub fn new(kappa: i32) -> Result<Self> {
        match kappa {
            -1 | -2 => Ok(WeilTermParams { kappa }),
            _ => Err(domain("kappa must be -1 (complex place) or -2 (real place)")),
        }
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }
}

/// Archimedean distribution `W_𝔭(φ)`.
///
/// Positive support: `∫ φ(t) / (1 − e^{κt}) dt`. Negative support:
/// `∫ φ(t) e^t / (1 − e^{κ|t|}) dt`. Supports containing 0 are rejected.
pub fn weil_term(phi: &TestFunction, params: WeilTermParams, cfg: &PrecisionConfig) -> Result<f64> {
    let kappa = params.kappa as f64;
    // Each profile is integrated over its own window so the term stays linear in φ.
    let kernel = match phi.sign_side() {
        None => return Ok(0.0),
        Some(SignSide::PositiveSupport) => |t: f64, k: f64| 1.0 / (1.0 - (k * t).exp()),
        Some(SignSide::NegativeSupport) => |t: f64, k: f64| t.exp() / (1.0 - (k * t.abs()).exp()),
        Some(SignSide::StraddlesZero) => return Err(Error::UnsupportedPrincipalValue),
    };
    let mut acc = crate::numerics::CompensatedSum::new();
    for &(c, profile) in phi.terms() {
        let (a, b) = profile.support();
        acc.add_real(c * integrate_real(|t| profile.eval(t) * kernel(t, kappa), a, b, cfg)?);
    }
    Ok(acc.real())
}

/// The explicit formula as a pair of distributions with a finite truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitFormulaDistribution {
    /// `1 − Σ_ρ e^{tρ} + e^t`.
    pub spectral: ExponentialSum,
    /// `−log|d_K| δ_0`.
    pub discriminant: DiracComb,
    /// Prime-power Dirac masses with `N𝔭^k ≤ norm_cutoff`.
    pub primes: DiracComb,
    pub r1: u32,
    pub r2: u32,
}

impl ExplicitFormulaDistribution {
    pub fn new(field: &NumberFieldData, zeros: &ZeroList, norm_cutoff: f64) -> Result<Self> {
        if let Some(label) = zeros.field_label() {
            if label != field.label() {
                return Err(domain(format!("zeros belong to field '{label}', not '{}'", field.label())));
            }
        }
        let mut spectral = ExponentialSum::new();
        let one = Complex64::new(1.0, 0.0);
        spectral.push(Complex64::new(0.0, 0.0), one);
        for &g in zeros.ordinates() {
            spectral.push(Complex64::new(0.5, g), -one);
            spectral.push(Complex64::new(0.5, -g), -one);
        }
        spectral.push(one, one);

        let mut discriminant = DiracComb::new();
        discriminant.push(0.0, -(field.discriminant().unsigned_abs() as f64).ln());

        Ok(ExplicitFormulaDistribution {
            spectral,
            discriminant,
            primes: prime_comb(field, norm_cutoff)?,
            r1: field.r1(),
            r2: field.r2(),
        })
    }

    pub fn pair_spectral(&self, phi: &TestFunction, cfg: &PrecisionConfig) -> Result<Complex64> {
        self.spectral.pair(phi, cfg)
    }

    /// Returns `(discriminant term, prime term, real Weil total, complex Weil total)`.
    pub fn pair_geometric(&self, phi: &TestFunction, cfg: &PrecisionConfig) -> Result<(f64, f64, f64, f64)> {
        let disc = self.discriminant.pair(phi);
        let primes = self.primes.pair(phi);
        let (w_real, w_complex) = if phi.is_zero() {
            (0.0, 0.0)
        } else {
            let wr = if self.r1 > 0 { self.r1 as f64 * weil_term(phi, WeilTermParams::REAL, cfg)? } else { 0.0 };
            let wc = if self.r2 > 0 { self.r2 as f64 * weil_term(phi, WeilTermParams::COMPLEX, cfg)? } else { 0.0 };
            (wr, wc)
        };
        Ok((disc, primes, w_real, w_complex))
    }
}

fn prime_comb(field: &NumberFieldData, norm_cutoff: f64) -> Result<DiracComb> {
    if !(norm_cutoff >= 1.0) || !norm_cutoff.is_finite() {
        return Err(domain("norm cutoff must be a finite number >= 1"));
    }
    let bound = libm::floor(norm_cutoff) as u64;
    let mut comb = DiracComb::new();
    for ideal in field.prime_ideals(bound) {
        let log_n = (ideal.norm as f64).ln();
        let weight = log_n * ideal.count as f64;
        let mut power = ideal.norm;
        let mut k = 1i32;
        while power <= bound {
            let x = k as f64 * log_n;
            comb.push(x, weight);
            comb.push(-x, weight * (ideal.norm as f64).powi(-k));
            match power.checked_mul(ideal.norm) {
                Some(p) => power = p,
                None => break,
            }
            k += 1;
        }
    }
    Ok(comb)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSide {
    pub value: Complex64,
    pub zeros_used: usize,
    /// Bound (Gaussian) or estimate (bump) of the omitted zero sum.
    pub tail_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimeSide {
    pub value: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricSide {
    pub value: f64,
    pub discriminant_term: f64,
    pub prime_term: f64,
    pub weil_real: f64,
    pub weil_complex: f64,
    pub prime_tail_bound: f64,
    /// Weil-integral mass neglected outside Gaussian truncation intervals.
    pub weil_tail_estimate: f64,
}

/// Zeros at density `log(γ/2π)/2π`, padded by one per unit height.
fn zero_density(g: f64) -> f64 {
    (g / TWO_PI).ln().max(0.0) / TWO_PI + 1.0
}

fn spectral_tail(phi: &TestFunction, height: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let mut total = 0.0;
    for &(c, p) in phi.terms() {
        total += c.abs()
            * match p {
                Profile::Gaussian { center, sigma, .. } => {
                    // |Φ(1/2 + iγ)| = √(2π)σ e^{c/2 + σ²/8 − σ²γ²/2}
                    let amp = TWO_PI.sqrt() * sigma * (0.5 * center + sigma * sigma / 8.0).exp();
                    let mut sum = 0.0;
                    let mut j = 0.0;
                    loop {
                        let g = height + j;
                        let term = 2.0 * amp * zero_density(g + 1.0) * (-0.5 * sigma * sigma * g * g).exp();
                        sum += term;
                        if term < 1e-30 || j > 1e6 {
                            break;
                        }
                        j += 1.0;
                    }
                    sum
                }
                Profile::Bump { halfwidth, .. } => {
                    // |Φ̂| decays like exp(−√(wγ)); one e-fold spans 2√(γ/w).
                    let at_height = p.transform(Complex64::new(0.5, height), cfg)?.norm();
                    2.0 * at_height * zero_density(height) * 2.0 * (height / halfwidth).sqrt()
                }
            };
    }
    Ok(total)
}

/// `Φ(0) − Σ_γ [Φ(1/2+iγ) + Φ(1/2−iγ)] + Φ(1)`.
pub fn spectral_side(
    phi: &TestFunction,
    zeros: &ZeroList,
    field: &NumberFieldData,
    allow_empty: bool,
    cfg: &PrecisionConfig,
) -> Result<SpectralSide> {
    if zeros.is_empty() && !allow_empty {
        return Err(domain("zero list is empty (pass allow_empty to accept)"));
    }
    let dist = ExplicitFormulaDistribution::new(field, zeros, 1.0)?;
    let value = dist.pair_spectral(phi, cfg)?;
    let height = zeros.ordinates().last().copied().unwrap_or(0.0);
    let tail_estimate = if phi.is_zero() { 0.0 } else { spectral_tail(phi, height, cfg)? };
    Ok(SpectralSide { value, zeros_used: zeros.len(), tail_estimate })
}

fn check_cutoff(phi: &TestFunction, norm_cutoff: f64) -> Result<()> {
    if let Some((a, b)) = phi.support() {
        let reach = a.abs().max(b.abs());
        if norm_cutoff < reach.exp() {
            return Err(Error::Truncation(format!(
                "norm cutoff {norm_cutoff} is below e^{reach:.6} = {:.6} required by the support",
                reach.exp()
            )));
        }
    }
    Ok(())
}

fn prime_tail_bound(phi: &TestFunction, field: &NumberFieldData, norm_cutoff: f64) -> f64 {
    let log_x = norm_cutoff.ln();
    let degree = field.degree() as f64;
    phi.terms()
        .iter()
        .map(|&(c, p)| match p {
            Profile::Bump { .. } => 0.0,
            Profile::Gaussian { center, sigma, .. } => {
                let g = |u: f64| (-0.5 * ((u - center) / sigma).powi(2)).exp();
                // Σ_{n>X} Λ(n) g(log n) ≤ 1.04 ∫_{log X}^∞ e^u g(u) du + boundary
                let pos = TWO_PI.sqrt()
                    * sigma
                    * (center + 0.5 * sigma * sigma).exp()
                    * normal_tail((log_x - center - sigma * sigma) / sigma);
                // Σ_{n>X} Λ(n) n^{-1} g(−log n) ≤ 1.04 ∫_{log X}^∞ g(−u) du + boundary
                let neg = TWO_PI.sqrt() * sigma * normal_tail((log_x + center) / sigma);
                let boundary = log_x * (g(log_x) + g(-log_x));
                c.abs() * degree * (CHEBYSHEV_PSI * (pos + neg) + boundary)
            }
        })
        .sum()
}

/// `Σ_𝔭 log N𝔭 ( Σ_{k≥1} φ(k log N𝔭) + Σ_{k≤−1} N𝔭^k φ(k log N𝔭) )` over
/// prime powers `N𝔭^k ≤ norm_cutoff`.
pub fn prime_side(phi: &TestFunction, field: &NumberFieldData, norm_cutoff: f64) -> Result<PrimeSide> {
    check_cutoff(phi, norm_cutoff)?;
    let comb = prime_comb(field, norm_cutoff)?;
    Ok(PrimeSide {
        value: comb.pair(phi),
        terms: comb.len(),
        tail_bound: prime_tail_bound(phi, field, norm_cutoff),
    })
}

fn weil_tail_estimate(phi: &TestFunction, field: &NumberFieldData) -> f64 {
    let Some((a, b)) = phi.support() else {
        return 0.0;
    };
    let inner = if a >= 0.0 { a } else { -b };
    if inner <= 0.0 {
        return 0.0;
    }
    let kernel = 1.0 / (1.0 - (-inner).exp());
    (field.r1 + field.r2) as f64 * kernel * (phi.outside_mass(0.0) + phi.outside_mass(1.0))
}

/// `−log|d_K| φ(0) + prime side + r1·W(κ=−2) + r2·W(κ=−1)`.
pub fn geometric_side(
    phi: &TestFunction,
    field: &NumberFieldData,
    norm_cutoff: f64,
    cfg: &PrecisionConfig,
) -> Result<GeometricSide> {
    check_cutoff(phi, norm_cutoff)?;
    let dist = ExplicitFormulaDistribution::new(field, &empty_zeros(), norm_cutoff)?;
    let (disc, primes, w_real, w_complex) = dist.pair_geometric(phi, cfg)?;
    let mut acc = crate::numerics::CompensatedSum::new();
    for v in [disc, primes, w_real, w_complex] {
        acc.add_real(v);
    }
    Ok(GeometricSide {
        value: acc.real(),
        discriminant_term: disc,
        prime_term: primes,
        weil_real: w_real,
        weil_complex: w_complex,
        prime_tail_bound: prime_tail_bound(phi, field, norm_cutoff),
        weil_tail_estimate: weil_tail_estimate(phi, field),
    })
}

fn empty_zeros() -> ZeroList {
    ZeroList::new(Vec::new(), crate::zeros::ZeroSource::File { path: String::new(), field_label: None })
        .expect("empty list is valid")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExplicitFormulaReport {
    pub spectral: SpectralSide,
    pub geometric: GeometricSide,
    /// `spectral − geometric` (real part; the imaginary part is reported separately).
    pub difference: f64,
    pub spectral_imaginary: f64,
    pub residual: f64,
    pub norm_cutoff: f64,
}

impl ExplicitFormulaReport {
    /// Sum of every truncation bound and estimate carried by the report.
    pub fn total_tail(&self) -> f64 {
        self.spectral.tail_estimate + self.geometric.prime_tail_bound + self.geometric.weil_tail_estimate
    }
}

pub fn check_explicit_formula(
    phi: &TestFunction,
    field: &NumberFieldData,
    zeros: &ZeroList,
    norm_cutoff: f64,
    cfg: &PrecisionConfig,
) -> Result<ExplicitFormulaReport> {
    let spectral = spectral_side(phi, zeros, field, phi.is_zero(), cfg)?;
    let geometric = geometric_side(phi, field, norm_cutoff, cfg)?;
    let difference = spectral.value.re - geometric.value;
    Ok(ExplicitFormulaReport {
        spectral,
        geometric,
        difference,
        spectral_imaginary: spectral.value.im,
        residual: (spectral.value - geometric.value).norm(),
        norm_cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::ZeroSource;
    use alloc::vec;

    fn zeros(list: &[f64]) -> ZeroList {
        ZeroList::new(list.to_vec(), ZeroSource::File { path: String::from("mem"), field_label: None }).unwrap()
    }

    #[test]
    fn gaussian_transform_closed_form() {
        let cfg = PrecisionConfig::default();
        let phi = TestFunction::gaussian(2.0, 0.3, 6.0).unwrap();
        let v = transform(&phi, Complex64::new(0.0, 0.0), &cfg).unwrap();
        assert!((v.re - 0.751_988_482_4).abs() < 1e-10);
        // Truncated-support quadrature differs from the closed form by at most the outside mass.
        let (a, b) = phi.support().unwrap();
        for s in [Complex64::new(0.0, 0.0), Complex64::new(0.5, 7.0), Complex64::new(1.0, 0.0)] {
            let quad: Complex64 = integrate(&|t: f64| (s * t).exp() * phi.eval(t), a, b, &cfg).unwrap();
            let closed = transform(&phi, s, &cfg).unwrap();
            assert!((quad - closed).norm() <= phi.outside_mass(s.re) * 1.000_001 + 1e-12);
        }
    }

    #[test]
    fn zero_function_transforms_to_zero() {
        let cfg = PrecisionConfig::default();
        let phi = TestFunction::bump(1.0, 0.5).unwrap().scaled(0.0);
        assert!(phi.is_zero());
        assert_eq!(transform(&phi, Complex64::new(0.3, 2.0), &cfg).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(weil_term(&phi, WeilTermParams::REAL, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn bump_transform_refinement_oracle() {
        let cfg = PrecisionConfig::default();
        let phi = TestFunction::bump(1.0, 0.5).unwrap();
        let v = transform(&phi, Complex64::new(0.0, 0.0), &cfg).unwrap();
        // Composite midpoint rule with 200 000 panels; the bump is flat at both ends
        // so the error is far below 1e-12.
        let n = 200_000;
        let h = 1.0 / n as f64;
        let oracle: f64 = (0..n).map(|i| phi.eval(0.5 + (i as f64 + 0.5) * h) * h).sum();
        assert!((v.re - oracle).abs() < 1e-11, "{} vs {oracle}", v.re);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn sign_sides() {
        assert_eq!(TestFunction::bump(2.0, 0.5).unwrap().sign_side(), Some(SignSide::PositiveSupport));
        assert_eq!(TestFunction::bump(-2.0, 0.5).unwrap().sign_side(), Some(SignSide::NegativeSupport));
        assert_eq!(TestFunction::bump(0.2, 0.5).unwrap().sign_side(), Some(SignSide::StraddlesZero));
        assert_eq!(TestFunction::zero().sign_side(), None);
        assert!(TestFunction::bump(1.0, 0.0).is_err());
        assert!(TestFunction::gaussian(1.0, 0.1, 5.0).is_err());
    }

    #[test]
    fn weil_term_refinement_oracle() {
        let cfg = PrecisionConfig::default();
        let midpoint = |f: &dyn Fn(f64) -> f64, a: f64, b: f64| {
            let n = 200_000;
            let h = (b - a) / n as f64;
            (0..n).map(|i| f(a + (i as f64 + 0.5) * h) * h).sum::<f64>()
        };
        let phi = TestFunction::bump(2.0, 0.5).unwrap();
        let v = weil_term(&phi, WeilTermParams::REAL, &cfg).unwrap();
        let o = midpoint(&|t| phi.eval(t) / (1.0 - (-2.0 * t).exp()), 1.5, 2.5);
        assert!((v - o).abs() < 1e-11);

        let phi = TestFunction::bump(-2.0, 0.5).unwrap();
        let v = weil_term(&phi, WeilTermParams::COMPLEX, &cfg).unwrap();
        let o = midpoint(&|t| phi.eval(t) * t.exp() / (1.0 - (-t.abs()).exp()), -2.5, -1.5);
        assert!((v - o).abs() < 1e-11);

        let phi = TestFunction::bump(0.0, 0.5).unwrap();
        assert_eq!(weil_term(&phi, WeilTermParams::REAL, &cfg), Err(Error::UnsupportedPrincipalValue));
        assert!(WeilTermParams::new(-3).is_err());
    }

    #[test]
    fn prime_side_examples() {
        let q = NumberFieldData::rational();
        let below = TestFunction::bump(0.3, 0.3).unwrap();
        assert_eq!(prime_side(&below, &q, 2.0).unwrap().value, 0.0);

        let ln2 = 2f64.ln();
        let phi = TestFunction::bump(ln2, 0.2).unwrap();
        let v = prime_side(&phi, &q, 3.0).unwrap().value;
        assert!((v - ln2 * phi.eval(ln2)).abs() < 1e-15);

        let mirror = phi.reflected();
        let v = prime_side(&mirror, &q, 3.0).unwrap().value;
        assert!((v - 0.5 * ln2 * mirror.eval(-ln2)).abs() < 1e-15);

        assert!(matches!(prime_side(&phi, &q, 2.0), Err(Error::Truncation(_))));
    }

    #[test]
    fn prime_side_exact_truncation_is_bit_identical() {
        let q = NumberFieldData::rational();
        let phi = TestFunction::bump(2.0, 0.7).unwrap();
        let base = prime_side(&phi, &q, 15.0).unwrap().value;
        for cutoff in [20.0, 45.0, 1000.0] {
            assert_eq!(prime_side(&phi, &q, cutoff).unwrap().value.to_bits(), base.to_bits());
        }
    }

    #[test]
    fn gaussian_integers_prime_ideals_match_enumeration() {
        // Count ideals of Z[i] of each norm below 50 by enumerating generators
        // a + bi with a > 0, b ≥ 0, and compare with the Dirichlet coefficients
        // of Π (1 − N𝔭^{-s})^{-1} built from the prime ideal list.
        let bound = 49u64;
        let mut by_enum = vec![0u64; bound as usize + 1];
        for a in 1..8i64 {
            for b in 0..8i64 {
                let n = (a * a + b * b) as u64;
                if n <= bound {
                    by_enum[n as usize] += 1;
                }
            }
        }
        let field = NumberFieldData::quadratic(-4).unwrap();
        let mut exact = vec![0u64; bound as usize + 1];
        exact[1] = 1;
        for ideal in field.prime_ideals(bound) {
            for _ in 0..ideal.count {
                let prev = exact.clone();
                for n in 1..=bound as usize {
                    let mut m = ideal.norm as usize;
                    while m <= n {
                        if n % m == 0 {
                            exact[n] += prev[n / m];
                        }
                        m *= ideal.norm as usize;
                    }
                }
            }
        }
        assert_eq!(&exact[1..], &by_enum[1..]);
    }

    #[test]
    fn field_constructors() {
        assert!(NumberFieldData::quadratic(-4).is_ok());
        assert!(NumberFieldData::quadratic(5).is_ok());
        assert!(NumberFieldData::quadratic(8).is_ok());
        assert!(NumberFieldData::quadratic(12).is_ok());
        assert!(NumberFieldData::quadratic(-3).is_ok());
        assert!(NumberFieldData::quadratic(4).is_err());
        assert!(NumberFieldData::quadratic(-8 * 4).is_err());
        assert!(NumberFieldData::quadratic(1).is_err());
        let q = NumberFieldData::rational();
        assert_eq!((q.r1(), q.r2(), q.discriminant()), (1, 0, 1));
    }

    #[test]
    fn geometric_side_for_rationals_has_no_discriminant_term() {
        let cfg = PrecisionConfig::default();
        let phi = TestFunction::bump(2.0, 0.7).unwrap();
        let g = geometric_side(&phi, &NumberFieldData::rational(), 15.0, &cfg).unwrap();
        assert_eq!(g.discriminant_term, 0.0);
        assert_eq!(geometric_side(&TestFunction::zero(), &NumberFieldData::rational(), 15.0, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn spectral_side_basics() {
        let cfg = PrecisionConfig::default();
        let q = NumberFieldData::rational();
        let list = zeros(&[14.134725, 21.022040]);
        let s = spectral_side(&TestFunction::zero(), &list, &q, false, &cfg).unwrap();
        assert_eq!(s.value, Complex64::new(0.0, 0.0));
        let phi = TestFunction::gaussian(2.0, 0.3, 6.0).unwrap();
        let s = spectral_side(&phi, &list, &q, false, &cfg).unwrap();
        assert!(s.value.im.abs() < 1e-12);
        assert!(spectral_side(&phi, &zeros(&[]), &q, false, &cfg).is_err());
        assert!(spectral_side(&phi, &zeros(&[]), &q, true, &cfg).is_ok());
        let labelled =
            ZeroList::new(vec![10.0], ZeroSource::File { path: String::new(), field_label: Some(String::from("disc:-4")) })
                .unwrap();
        assert!(spectral_side(&phi, &labelled, &q, false, &cfg).is_err());
    }

    #[test]
    fn zero_function_residual_is_zero() {
        let cfg = PrecisionConfig::default();
        let r = check_explicit_formula(&TestFunction::zero(), &NumberFieldData::rational(), &zeros(&[14.1]), 10.0, &cfg)
            .unwrap();
        assert_eq!(r.residual, 0.0);
    }
}
