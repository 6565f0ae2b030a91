//! Leafwise cohomology of the Kronecker foliation of `T²` by lines of slope
//! `α`, in Fourier coordinates.
//!
//! Leaves are parametrized as `t ↦ (x + tα, t)`, so the leafwise derivative
//! multiplies the mode `(m, n)` by `2πi(mα + n)`. The reduced class of a
//! leafwise 1-form `g` is its mean `c₀₀`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math methods for no_std builds; std builds resolve them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::numerics::TWO_PI;

/// Default threshold below which `|mα + n|` is flagged.
pub const DEFAULT_MIN_DIVISOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeParam {
    alpha: f64,
}

impl SlopeParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(domain("slope must be finite"));
        }
        Ok(SlopeParam { alpha })
    }

    /// `(1 + √5)/2`.
    pub fn golden() -> Self {
        SlopeParam { alpha: 0.5 * (1.0 + 5f64.sqrt()) }
    }

    pub fn sqrt2() -> Self {
        SlopeParam { alpha: core::f64::consts::SQRT_2 }
    }

    /// `Σ_{k=1}^{terms} base^{−k!}`.
    pub fn liouville(base: u32, terms: u32) -> Result<Self> {
        if base < 2 || terms == 0 {
            return Err(domain("Liouville slope needs base >= 2 and at least one term"));
        }
        let mut alpha = 0.0;
        let mut factorial = 1i32;
        for k in 1..=terms as i32 {
            factorial = factorial.saturating_mul(k);
            alpha += (base as f64).powi(-factorial);
        }
        Ok(SlopeParam { alpha })
    }

    /// `2^{−1} + 2^{−2} + 2^{−6} + 2^{−24}`, exact in binary floating point.
    ///
    /// Its mode `m = 64` sits within `64·2^{−24} ≈ 3.8·10⁻⁶` of an integer.
    pub fn liouville_like() -> Self {
        SlopeParam { alpha: 0.5 + 0.25 + 2f64.powi(-6) + 2f64.powi(-24) }
    }

    pub fn value(&self) -> f64 {
        self.alpha
    }

    /// `mα + n`.
    pub fn divisor(&self, m: i64, n: i64) -> f64 {
        m as f64 * self.alpha + n as f64
    }
}

/// Coefficients `c_{mn}` for `|m|, |n| ≤ M`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierFunction2D {
    cutoff: usize,
    coeffs: Vec<Complex64>,
}

impl FourierFunction2D {
    pub fn zeros(cutoff: usize) -> Self {
        let side = 2 * cutoff + 1;
        FourierFunction2D { cutoff, coeffs: vec![Complex64::new(0.0, 0.0); side * side] }
    }

    pub fn constant(cutoff: usize, value: Complex64) -> Self {
        let mut f = Self::zeros(cutoff);
        f.set(0, 0, value);
        f
    }

    pub fn from_fn(cutoff: usize, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let mut out = Self::zeros(cutoff);
        for (m, n) in out.modes() {
            out.set(m, n, f(m, n));
        }
        out
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// All modes in row-major order, `m` outer.
    pub fn modes(&self) -> impl Iterator<Item = (i64, i64)> {
        let c = self.cutoff as i64;
        (-c..=c).flat_map(move |m| (-c..=c).map(move |n| (m, n)))
    }

    fn index(&self, m: i64, n: i64) -> Option<usize> {
        let c = self.cutoff as i64;
        if m.abs() > c || n.abs() > c {
            return None;
        }
        Some(((m + c) * (2 * c + 1) + (n + c)) as usize)
    }

    /// Coefficient `c_{mn}`; zero outside the grid.
    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        self.index(m, n).map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn set(&mut self, m: i64, n: i64, value: Complex64) {
        let i = self.index(m, n).expect("mode outside the grid");
        self.coeffs[i] = value;
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |c_{−m,−n} − conj(c_{mn})|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.modes().map(|(m, n)| (self.get(-m, -n) - self.get(m, n).conj()).norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.hermitian_defect() <= 64.0 * f64::EPSILON * scale
    }
}

/// `c_{mn} ↦ 2πi(mα + n) c_{mn}`.
pub fn leafwise_derivative(f: &FourierFunction2D, alpha: SlopeParam) -> FourierFunction2D {
    let mut out = FourierFunction2D::zeros(f.cutoff());
    for (m, n) in f.modes() {
        let factor = Complex64::new(0.0, TWO_PI * alpha.divisor(m, n));
        out.set(m, n, factor * f.get(m, n));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CohomologicalSolution {
    pub h: FourierFunction2D,
    /// `g₀₀`, the part of `g` no leafwise derivative can reach.
    pub obstruction: Complex64,
    /// `min |mα + n|` over active modes (`g_{mn} ≠ 0`, `(m, n) ≠ (0, 0)`).
    pub smallest_divisor: f64,
    /// Active modes with `|mα + n| < min_divisor`.
    pub flagged: Vec<(i64, i64)>,
}

impl CohomologicalSolution {
    pub fn small_divisor_flag(&self) -> bool {
        !self.flagged.is_empty()
    }
}

/// Solves `leafwise_derivative(h) = g − g₀₀` on the grid.
///
/// Small divisors are reported in `flagged`; the solve itself always
/// completes unless some active mode is exactly resonant.
pub fn solve_cohomological(
    g: &FourierFunction2D,
    alpha: SlopeParam,
    min_divisor: f64,
) -> Result<CohomologicalSolution> {
    if !(min_divisor >= 0.0) {
        return Err(domain("min_divisor must be >= 0"));
    }
    let mut h = FourierFunction2D::zeros(g.cutoff());
    let mut smallest = f64::INFINITY;
    let mut flagged = Vec::new();
    for (m, n) in g.modes() {
        let c = g.get(m, n);
        if (m, n) == (0, 0) || c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let d = alpha.divisor(m, n);
        if d == 0.0 {
            return Err(domain(format!("slope is rational on the grid: mode ({m}, {n}) is resonant")));
        }
        smallest = smallest.min(d.abs());
        if d.abs() < min_divisor {
            flagged.push((m, n));
        }
        h.set(m, n, c / Complex64::new(0.0, TWO_PI * d));
    }
    Ok(CohomologicalSolution { h, obstruction: g.get(0, 0), smallest_divisor: smallest, flagged })
}

/// As [`solve_cohomological`], but small divisors are an error.
pub fn solve_cohomological_strict(
    g: &FourierFunction2D,
    alpha: SlopeParam,
    min_divisor: f64,
) -> Result<CohomologicalSolution> {
    let sol = solve_cohomological(g, alpha, min_divisor)?;
    if sol.small_divisor_flag() {
        return Err(Error::SmallDivisor { modes: sol.flagged, smallest: sol.smallest_divisor });
    }
    Ok(sol)
}

/// Reduced class of `g`, read off as `Re c₀₀`.
pub fn harmonic_projection(g: &FourierFunction2D) -> Result<f64> {
    if !g.is_hermitian() {
        return Err(domain(format!(
            "coefficients are not Hermitian (defect {:e}); g is not real-valued",
            g.hermitian_defect()
        )));
    }
    Ok(g.get(0, 0).re)
}

/// `min |mα + n|` over `|m|, |n| ≤ M`, `(m, n) ≠ (0, 0)`, with a minimizing mode.
pub fn min_divisor(alpha: SlopeParam, cutoff: usize) -> (f64, (i64, i64)) {
    let c = cutoff as i64;
    let mut best = (f64::INFINITY, (0, 0));
    for m in -c..=c {
        let nearest = -libm::round(m as f64 * alpha.value());
        let candidates = [nearest - 1.0, nearest, nearest + 1.0, -(c as f64), c as f64];
        for n in candidates {
            let n = n as i64;
            if n.abs() > c || (m, n) == (0, 0) {
                continue;
            }
            let d = alpha.divisor(m, n).abs();
            if d < best.0 {
                best = (d, (m, n));
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiophantineRow {
    pub cutoff: usize,
    pub min_divisor: f64,
    pub argmin: (i64, i64),
    /// `M · min |mα + n|`.
    pub scaled_min: f64,
    /// `‖h‖₂/‖g‖₂` for `g` with every coefficient 1.
    pub amplification: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiophantineReport {
    pub alpha: f64,
    pub rows: Vec<DiophantineRow>,
}

impl DiophantineReport {
    /// `min_M M·min|mα+n|` over the table: the fitted constant `c` in
    /// `min ≥ c/M`.
    pub fn fitted_constant(&self) -> f64 {
        self.rows.iter().map(|r| r.scaled_min).fold(f64::INFINITY, f64::min)
    }
}

/// Divisor minima and amplification for every cutoff `1..=M`.
pub fn diophantine_report(alpha: SlopeParam, cutoff: usize) -> Result<DiophantineReport> {
    diophantine_report_at(alpha, &(1..=cutoff).collect::<Vec<_>>())
}

/// Divisor minima and amplification at the listed cutoffs.
pub fn diophantine_report_at(alpha: SlopeParam, cutoffs: &[usize]) -> Result<DiophantineReport> {
    if cutoffs.is_empty() || cutoffs.contains(&0) {
        return Err(domain("cutoffs must be >= 1"));
    }
    let mut rows = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let (min, argmin) = min_divisor(alpha, cutoff);
        if min == 0.0 {
            return Err(domain(format!("slope is rational on the grid: mode {argmin:?} is resonant")));
        }
        let g = FourierFunction2D::from_fn(cutoff, |_, _| Complex64::new(1.0, 0.0));
        let sol = solve_cohomological(&g, alpha, 0.0)?;
        rows.push(DiophantineRow {
            cutoff,
            min_divisor: min,
            argmin,
            scaled_min: min * cutoff as f64,
            amplification: sol.h.l2_norm() / g.l2_norm(),
        });
    }
    Ok(DiophantineReport { alpha: alpha.value(), rows })
}
