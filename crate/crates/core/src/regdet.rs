//! Zeta-regularized determinants of spectral ladders and the per-place
//! Euler-factor identities.
//!
//! A ladder is a symbolic eigenvalue multiset: a finite list, a half-line
//! progression `{γ(z+ν) : ν ≥ 0}`, or a bilateral progression
//! `{γ(z+ν) : ν ∈ ℤ}`. The spectral zeta function uses the principal
//! argument of every eigenvalue. Half-line ladders are reduced to
//! `γ^{-s} ζ(s, z)` plus an exact correction for the finitely many `ν` where
//! `Arg γ(z+ν) ≠ Arg γ + Arg(z+ν)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// f64 math methods for no_std builds; std builds resolve them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::numerics::{
    gamma_fn, hurwitz_zeta, hurwitz_zeta_s_derivative_at_0, is_nonpositive_integer, CompensatedSum,
    PrecisionConfig, TWO_PI,
};

const MAX_BRANCH_CORRECTIONS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralLadder {
    /// Eigenvalues with multiplicities.
    FiniteSet(Vec<(Complex64, u32)>),
    /// `{γ(z+ν) : ν = 0, 1, 2, …}`.
    HalfLine { gamma: Complex64, z: Complex64 },
    /// `{γ(z+ν) : ν ∈ ℤ}`.
    Bilateral { gamma: Complex64, z: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaceSpec {
    Finite { norm: u64 },
    RealArchimedean,
    ComplexArchimedean,
}

impl PlaceSpec {
    pub fn finite(norm: u64) -> Result<Self> {
        if norm < 2 {
            return Err(domain("a finite place needs norm >= 2"));
        }
        Ok(PlaceSpec::Finite { norm })
    }
}

impl SpectralLadder {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpectralLadder::FiniteSet(eigs) => {
                if eigs.iter().any(|&(_, m)| m == 0) {
                    return Err(domain("finite-set multiplicities must be >= 1"));
                }
                Ok(())
            }
            SpectralLadder::HalfLine { gamma, .. } => check_gamma(*gamma),
            SpectralLadder::Bilateral { gamma, .. } => {
                check_gamma(*gamma)?;
                // -γ enters through ζ_{-γ}(s, -z), so it must avoid the negative axis too.
                check_gamma(-*gamma)
            }
        }
    }

    pub fn contains_zero(&self) -> bool {
        match self {
            SpectralLadder::FiniteSet(eigs) => eigs.iter().any(|&(l, _)| l == Complex64::new(0.0, 0.0)),
            SpectralLadder::HalfLine { z, .. } => is_nonpositive_integer(*z),
            SpectralLadder::Bilateral { z, .. } => z.im == 0.0 && libm::floor(z.re) == z.re,
        }
    }
}

fn check_gamma(gamma: Complex64) -> Result<()> {
    if gamma == Complex64::new(0.0, 0.0) || !gamma.re.is_finite() || !gamma.im.is_finite() {
        return Err(domain("ladder step gamma must be finite and nonzero"));
    }
    if gamma.im == 0.0 && gamma.re < 0.0 {
        return Err(domain("ladder step gamma must not be a negative real number"));
    }
    Ok(())
}

/// `ν` values at which the principal argument of `γ(z+ν)` differs from
/// `Arg γ + Arg(z+ν)`. The list is finite because `Arg(z+ν) → 0`.
fn nonprincipal_indices(gamma: Complex64, z: Complex64) -> Result<Vec<u64>> {
    let arg_g = gamma.arg();
    let mut out = Vec::new();
    for nu in 0..MAX_BRANCH_CORRECTIONS as u64 {
        let w = z + nu as f64;
        let arg_w = w.arg();
        if w.re > 0.0 && arg_w.abs() + arg_g.abs() < PI {
            return Ok(out);
        }
        let sum = arg_g + arg_w;
        if sum > PI || sum <= -PI {
            out.push(nu);
        }
    }
    Err(domain("gamma too close to the negative real axis for branch bookkeeping"))
}

fn half_line_zeta(gamma: Complex64, z: Complex64, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let ln_g = gamma.ln();
    let mut acc = CompensatedSum::new();
    acc.add((-s * ln_g).exp() * hurwitz_zeta(s, z, cfg)?);
    for nu in nonprincipal_indices(gamma, z)? {
        let w = z + nu as f64;
        acc.add((-s * (gamma * w).ln()).exp() - (-s * (ln_g + w.ln())).exp());
    }
    Ok(acc.value())
}

fn half_line_zeta_prime_at_0(gamma: Complex64, z: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let ln_g = gamma.ln();
    let mut acc = CompensatedSum::new();
    // ∂_s [γ^{-s} ζ(s,z)] at 0, with ζ(0,z) = 1/2 - z.
    acc.add(-ln_g * (Complex64::new(0.5, 0.0) - z));
    acc.add(hurwitz_zeta_s_derivative_at_0(z, cfg)?);
    for nu in nonprincipal_indices(gamma, z)? {
        let w = z + nu as f64;
        acc.add(-(gamma * w).ln() + ln_g + w.ln());
    }
    Ok(acc.value())
}

/// Spectral zeta function `Σ α^{-s}` of the ladder, continued in `s`.
pub fn spectral_zeta(ladder: &SpectralLadder, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    ladder.validate()?;
    if ladder.contains_zero() {
        return Err(Error::ZeroEigenvalue);
    }
    match ladder {
        SpectralLadder::FiniteSet(eigs) => Ok(eigs
            .iter()
            .map(|&(l, m)| (-s * l.ln()).exp() * m as f64)
            .collect::<CompensatedSum>()
            .value()),
        SpectralLadder::HalfLine { gamma, z } => half_line_zeta(*gamma, *z, s, cfg),
        SpectralLadder::Bilateral { gamma, z } => {
            // Σ_{ν∈ℤ} (γ(z+ν))^{-s} = ζ_γ(s,z) + ζ_{-γ}(s,-z) - (γz)^{-s}
            let mut acc = CompensatedSum::new();
            acc.add(half_line_zeta(*gamma, *z, s, cfg)?);
            acc.add(half_line_zeta(-*gamma, -*z, s, cfg)?);
            acc.add(-(-s * (*gamma * *z).ln()).exp());
            Ok(acc.value())
        }
    }
}

/// `∂_s ζ_Θ(0)` for the ladder, computed from the Euler–Maclaurin derivative.
pub fn spectral_zeta_derivative_at_0(ladder: &SpectralLadder, cfg: &PrecisionConfig) -> Result<Complex64> {
    ladder.validate()?;
    if ladder.contains_zero() {
        return Err(Error::ZeroEigenvalue);
    }
    match ladder {
        SpectralLadder::FiniteSet(eigs) => Ok(eigs
            .iter()
            .map(|&(l, m)| -l.ln() * m as f64)
            .collect::<CompensatedSum>()
            .value()),
        SpectralLadder::HalfLine { gamma, z } => half_line_zeta_prime_at_0(*gamma, *z, cfg),
        SpectralLadder::Bilateral { gamma, z } => {
            let mut acc = CompensatedSum::new();
            acc.add(half_line_zeta_prime_at_0(*gamma, *z, cfg)?);
            acc.add(half_line_zeta_prime_at_0(-*gamma, -*z, cfg)?);
            acc.add((*gamma * *z).ln());
            Ok(acc.value())
        }
    }
}

/// Closed form `γ^{1/2-z} (Γ(z)/√(2π))^{-1}` of the half-line determinant.
pub fn half_line_closed_form(gamma: Complex64, z: Complex64) -> Result<Complex64> {
    check_gamma(gamma)?;
    if is_nonpositive_integer(z) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let power = ((Complex64::new(0.5, 0.0) - z) * gamma.ln()).exp();
    Ok(power * TWO_PI.sqrt() / gamma_fn(z)?)
}

/// Closed form of the bilateral determinant: `1 - e^{-2πiz}` when
/// `Im γ > 0`, `1 - e^{2πiz}` when `Im γ < 0`.
pub fn bilateral_closed_form(gamma: Complex64, z: Complex64) -> Result<Complex64> {
    check_gamma(gamma)?;
    check_gamma(-gamma)?;
    let phase = Complex64::new(0.0, TWO_PI) * z;
    let one = Complex64::new(1.0, 0.0);
    Ok(if gamma.im > 0.0 { one - (-phase).exp() } else { one - phase.exp() })
}

/// Zeta-regularized determinant `exp(-ζ'_Θ(0))`, or 0 if 0 is an eigenvalue.
///
/// Finite sets give the ordinary product. Half-line ladders go through the
/// numerical `∂_s ζ(0, z)`; bilateral ladders use their closed form.
pub fn regdet(ladder: &SpectralLadder, cfg: &PrecisionConfig) -> Result<Complex64> {
    ladder.validate()?;
    if ladder.contains_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    match ladder {
        SpectralLadder::FiniteSet(eigs) => {
            let mut prod = Complex64::new(1.0, 0.0);
            for &(l, m) in eigs {
                for _ in 0..m {
                    prod *= l;
                }
            }
            Ok(prod)
        }
        SpectralLadder::HalfLine { .. } => Ok((-spectral_zeta_derivative_at_0(ladder, cfg)?).exp()),
        SpectralLadder::Bilateral { gamma, z } => bilateral_closed_form(*gamma, *z),
    }
}

/// The ladder of `(1/2π)(s - Θ)` on the space attached to `place`.
pub fn place_ladder(place: PlaceSpec, s: Complex64) -> Result<SpectralLadder> {
    Ok(match place {
        PlaceSpec::Finite { norm } => {
            if norm < 2 {
                return Err(domain("a finite place needs norm >= 2"));
            }
            let ln_n = (norm as f64).ln();
            SpectralLadder::Bilateral {
                gamma: Complex64::new(0.0, 1.0 / ln_n),
                z: s * ln_n / Complex64::new(0.0, TWO_PI),
            }
        }
        PlaceSpec::RealArchimedean => SpectralLadder::HalfLine { gamma: Complex64::new(1.0 / PI, 0.0), z: s * 0.5 },
        PlaceSpec::ComplexArchimedean => SpectralLadder::HalfLine { gamma: Complex64::new(1.0 / TWO_PI, 0.0), z: s },
    })
}

/// `det_∞((1/2π)(s - Θ) | R_𝔭)`, which should equal `ζ_𝔭(s)^{-1}`.
pub fn euler_factor_via_regdet(place: PlaceSpec, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    regdet(&place_ladder(place, s)?, cfg)
}

/// `ζ_𝔭(s)^{-1}` from the defining formulas of the local factors.
pub fn euler_factor_direct(place: PlaceSpec, s: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    match place {
        PlaceSpec::Finite { norm } => {
            if norm < 2 {
                return Err(domain("a finite place needs norm >= 2"));
            }
            Ok(one - (-s * (norm as f64).ln()).exp())
        }
        PlaceSpec::RealArchimedean => {
            // (2^{-1/2} π^{-s/2} Γ(s/2))^{-1}
            let pow = (s * 0.5 * PI.ln()).exp();
            Ok(pow * core::f64::consts::SQRT_2 / gamma_fn(s * 0.5)?)
        }
        PlaceSpec::ComplexArchimedean => Ok((s * TWO_PI.ln()).exp() / gamma_fn(s)?),
    }
}
