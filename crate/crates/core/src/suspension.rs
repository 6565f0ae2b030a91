//! Suspension flows over a base map with period `l`, described entirely by
//! closed-orbit counts and by the ladders of the flow generator on
//! `H⁰, H¹, H²`.
//!
//! For an ordinary elliptic curve `E/𝔽_p` the suspension of Frobenius has
//! `l = log p`, and the trace formula
//!
//! ```text
//! Σ_{n=0}^{2} (−1)^n Σ_{λ ∈ Spⁿ} Φ(λ) = χ(M)·l·φ(0)
//!     + Σ_γ l(γ) Σ_{k≠0} ε_γ(k) w_k φ(k l(γ))
//! ```
//!
//! with `w_k = 1` for `k ≥ 1` and `w_k = e^{α k l(γ)}` for `k ≤ −1` reduces
//! by Poisson summation to the explicit formula of `ζ_E`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math methods for no_std builds; std builds resolve them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::distribution::{DiracComb, ExponentialSum};
use crate::error::{domain, Error, Result};
use crate::explicit::{Profile, SignSide, TestFunction};
use crate::numerics::{divisors, integrate_real, is_prime, mobius, CompensatedSum, PrecisionConfig, TWO_PI};

/// Largest iterate for which point counts are computed.
pub const MAX_ITERATE: u32 = 60;

/// Tolerance of the Weil-number check.
pub const WEIL_TOLERANCE: f64 = 1e-12;

/// Largest distance from an integer accepted when rounding floating traces.
pub const ROUNDING_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticCurveData {
    p: u64,
    a_p: i64,
    pi: Complex64,
    pi_bar: Complex64,
}

impl EllipticCurveData {
    /// Ordinary curve over `𝔽_p` with Frobenius trace `a_p`.
    pub fn new(p: u64, a_p: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        if a_p.unsigned_abs() % p == 0 {
            return Err(Error::NotOrdinary { p, a_p });
        }
        let a = a_p as f64;
        let disc = 4.0 * p as f64 - a * a;
        if (a_p as i128) * (a_p as i128) > 4 * p as i128 {
            return Err(domain(format!("|a_p| = {} exceeds the Hasse bound 2√{p}", a_p.unsigned_abs())));
        }
        let half_im = 0.5 * disc.sqrt();
        let pi = Complex64::new(0.5 * a, half_im);
        Ok(EllipticCurveData { p, a_p, pi, pi_bar: pi.conj() })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a_p(&self) -> i64 {
        self.a_p
    }

    /// `log p`.
    pub fn period(&self) -> f64 {
        (self.p as f64).ln()
    }
}

/// Roots `(π, π̄)` of `X² − a_p X + p`, `π` in the upper half plane.
pub fn frobenius_eigenvalues(curve: &EllipticCurveData) -> (Complex64, Complex64) {
    (curve.pi, curve.pi_bar)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeilReport {
    /// `max(||π| − √p|, ||π̄| − √p|)`.
    pub modulus_error: f64,
    /// `|π|/√p − 1`: deviation of the rotation part from `SO(2)`.
    pub rotation_error: f64,
    pub product_error: f64,
    pub sum_error: f64,
    pub passed: bool,
}

pub fn weil_number_check(curve: &EllipticCurveData) -> WeilReport {
    weil_number_check_values(curve.pi, curve.pi_bar, curve.p, curve.a_p)
}

/// Weil-number check on explicit eigenvalues, which need not come from a curve.
pub fn weil_number_check_values(pi: Complex64, pi_bar: Complex64, p: u64, a_p: i64) -> WeilReport {
    let root = (p as f64).sqrt();
    let modulus_error = (pi.norm() - root).abs().max((pi_bar.norm() - root).abs());
    let rotation_error = (pi.norm() / root - 1.0).abs().max((pi_bar.norm() / root - 1.0).abs());
    let product_error = (pi * pi_bar - p as f64).norm();
    let sum_error = (pi + pi_bar - a_p as f64).norm();
    let scale = p as f64;
    let passed = modulus_error <= WEIL_TOLERANCE
        && rotation_error <= WEIL_TOLERANCE
        && product_error <= WEIL_TOLERANCE * scale
        && sum_error <= WEIL_TOLERANCE * scale;
    WeilReport { modulus_error, rotation_error, product_error, sum_error, passed }
}

fn check_iterate(n: u32) -> Result<()> {
    if n == 0 || n > MAX_ITERATE {
        return Err(domain(format!("iterate {n} outside 1..={MAX_ITERATE}")));
    }
    Ok(())
}

fn overflow(what: &str, n: u32) -> Error {
    Error::Precision(format!("{what} overflows 128-bit integers at n = {n}"))
}

/// `t_n = πⁿ + π̄ⁿ` by the recurrence `t_n = a_p t_{n−1} − p t_{n−2}`.
pub fn frobenius_trace(curve: &EllipticCurveData, n: u32) -> Result<i128> {
    check_iterate(n)?;
    let (a, p) = (curve.a_p as i128, curve.p as i128);
    let (mut prev, mut cur) = (2i128, a);
    for k in 2..=n {
        let next = a
            .checked_mul(cur)
            .and_then(|x| p.checked_mul(prev).and_then(|y| x.checked_sub(y)))
            .ok_or_else(|| overflow("Frobenius trace", k))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `N_n = pⁿ + 1 − πⁿ − π̄ⁿ` in exact integer arithmetic.
pub fn point_counts(curve: &EllipticCurveData, n: u32) -> Result<i128> {
    let t = frobenius_trace(curve, n)?;
    let pn = (curve.p as i128).checked_pow(n).ok_or_else(|| overflow("p^n", n))?;
    pn.checked_add(1).and_then(|x| x.checked_sub(t)).ok_or_else(|| overflow("point count", n))
}

/// `N_n` from floating powers of `π`, rounded under [`ROUNDING_GUARD`].
pub fn point_counts_via_powers(curve: &EllipticCurveData, n: u32) -> Result<i128> {
    check_iterate(n)?;
    let t = curve.pi.powu(n) + curve.pi_bar.powu(n);
    let exact_limit = 2f64.powi(52);
    if t.re.abs() >= exact_limit {
        return Err(Error::Precision(format!("π^{n} + π̄^{n} exceeds the exact range of f64")));
    }
    let rounded = libm::round(t.re);
    let miss = (t.re - rounded).abs().max(t.im.abs());
    if miss >= ROUNDING_GUARD {
        return Err(Error::Precision(format!("π^{n} + π̄^{n} is {miss:e} from an integer")));
    }
    let pn = (curve.p as i128).checked_pow(n).ok_or_else(|| overflow("p^n", n))?;
    Ok(pn + 1 - rounded as i128)
}

/// `ε_γ(k)` for every orbit in a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitSign {
    #[default]
    Positive,
    Negative,
    /// `(−1)^k`.
    Alternating,
}

impl OrbitSign {
    pub fn at(self, k: i64) -> f64 {
        match self {
            OrbitSign::Positive => 1.0,
            OrbitSign::Negative => -1.0,
            OrbitSign::Alternating => {
                if k.rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Weight of the `k ≤ −1` iterates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegativeWeight {
    /// `e^{α k l(γ)}`.
    #[default]
    Conformal,
    /// `1`.
    Unit,
}

/// `count` primitive closed orbits of length `n·l`, all with the same sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitClass {
    pub n: u32,
    pub count: u64,
    pub sign: OrbitSign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    classes: Vec<OrbitClass>,
    pub negative_weight: NegativeWeight,
}

impl OrbitData {
    /// Orbit counts `(n, m_n)` with positive signs; `n` strictly increasing from 1.
    pub fn from_counts(counts: &[(u32, u64)]) -> Result<Self> {
        let mut classes = Vec::with_capacity(counts.len());
        let mut last = 0u32;
        for &(n, count) in counts {
            if n == 0 {
                return Err(domain("orbit period n must be >= 1"));
            }
            if n <= last {
                return Err(domain(format!("orbit periods must increase strictly (n = {n} after {last})")));
            }
            last = n;
            classes.push(OrbitClass { n, count, sign: OrbitSign::Positive });
        }
        Ok(OrbitData { classes, negative_weight: NegativeWeight::Conformal })
    }

    pub fn with_sign(mut self, n: u32, sign: OrbitSign) -> Self {
        for c in &mut self.classes {
            if c.n == n {
                c.sign = sign;
            }
        }
        self
    }

    pub fn classes(&self) -> &[OrbitClass] {
        &self.classes
    }

    pub fn count(&self, n: u32) -> u64 {
        self.classes.iter().find(|c| c.n == n).map_or(0, |c| c.count)
    }

    pub fn max_period(&self) -> u32 {
        self.classes.last().map_or(0, |c| c.n)
    }

    /// `N_n = Σ_{d|n} d·m_d` for `n = 1..=max_period`.
    pub fn fixed_point_counts(&self) -> Vec<i128> {
        (1..=self.max_period())
            .map(|n| {
                divisors(n as u64).iter().map(|&d| d as i128 * self.count(d as u32) as i128).sum()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitSource {
    Elliptic(EllipticCurveData),
    UserOrbits(OrbitData),
    /// Degree-`q` covering of the circle, `N_n = qⁿ − 1`.
    CoveringDegree(u64),
}

impl OrbitSource {
    fn fixed_points(&self, n: u32) -> Result<i128> {
        match self {
            OrbitSource::Elliptic(e) => point_counts(e, n),
            OrbitSource::CoveringDegree(q) => {
                check_iterate(n)?;
                (*q as i128).checked_pow(n).map(|x| x - 1).ok_or_else(|| overflow("q^n", n))
            }
            OrbitSource::UserOrbits(o) => {
                Ok(divisors(n as u64).iter().map(|&d| d as i128 * o.count(d as u32) as i128).sum())
            }
        }
    }

    /// `log ρ` with `N_n ≤ ρⁿ` for every `n`.
    ///
    /// For user orbits the bound is extrapolated from the listed periods.
    fn log_growth(&self) -> f64 {
        match self {
            OrbitSource::Elliptic(e) => 2.0 * ((e.p as f64).sqrt() + 1.0).ln(),
            OrbitSource::CoveringDegree(q) => (*q as f64).ln(),
            OrbitSource::UserOrbits(o) => o
                .fixed_point_counts()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (c as f64).ln() / (i + 1) as f64)
                .fold(0.0, f64::max),
        }
    }
}

/// Primitive orbit counts `m_n = (1/n) Σ_{d|n} μ(n/d) N_d` for `n ≤ n_max`.
pub fn closed_orbit_counts(source: &OrbitSource, n_max: u32) -> Result<OrbitData> {
    if let OrbitSource::UserOrbits(o) = source {
        return Ok(o.clone());
    }
    check_iterate(n_max)?;
    let mut fixed = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        fixed.push(source.fixed_points(n)?);
    }
    let mut counts = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let total: i128 = divisors(n as u64)
            .iter()
            .map(|&d| mobius(n as u64 / d) as i128 * fixed[d as usize - 1])
            .sum();
        if total < 0 || total % n as i128 != 0 {
            return Err(Error::Consistency(format!(
                "Möbius inversion gives {total}/{n} primitive orbits of period {n}"
            )));
        }
        let m = u64::try_from(total / n as i128)
            .map_err(|_| Error::Consistency(format!("orbit count at n = {n} exceeds 64 bits")))?;
        counts.push((n, m));
    }
    OrbitData::from_counts(&counts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuspensionSpec {
    l: f64,
    alpha: f64,
    euler_char: i64,
    source: OrbitSource,
}

impl SuspensionSpec {
    pub fn new(l: f64, alpha: f64, euler_char: i64, source: OrbitSource) -> Result<Self> {
        if !(l > 0.0) || !l.is_finite() {
            return Err(domain("base period l must be finite and > 0"));
        }
        if !alpha.is_finite() {
            return Err(domain("conformal weight must be finite"));
        }
        match &source {
            OrbitSource::Elliptic(e) => {
                if (l - e.period()).abs() > 1e-12 * e.period() {
                    return Err(domain("an elliptic suspension needs l = log p"));
                }
                if euler_char != 0 {
                    return Err(domain("an elliptic suspension has a torus base, χ(M) = 0"));
                }
                if alpha != 1.0 {
                    return Err(domain("an elliptic suspension has conformal weight 1"));
                }
            }
            OrbitSource::CoveringDegree(q) => {
                if *q < 2 {
                    return Err(domain("covering degree must be >= 2"));
                }
            }
            OrbitSource::UserOrbits(_) => {}
        }
        Ok(SuspensionSpec { l, alpha, euler_char, source })
    }

    /// `l = log p`, `α = 1`, `χ(M) = 0`.
    pub fn elliptic(curve: EllipticCurveData) -> Self {
        SuspensionSpec { l: curve.period(), alpha: 1.0, euler_char: 0, source: OrbitSource::Elliptic(curve) }
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn euler_char(&self) -> i64 {
        self.euler_char
    }

    pub fn source(&self) -> &OrbitSource {
        &self.source
    }

    /// `χ_Co = χ(M)·l`.
    pub fn foliated_euler_char(&self) -> f64 {
        self.euler_char as f64 * self.l
    }
}

/// `{(base + 2πik)/l : k ∈ ℤ}` entering the alternating trace with `sign`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderFamily {
    pub degree: u8,
    pub base: Complex64,
    pub sign: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLadderSet {
    l: f64,
    families: Vec<LadderFamily>,
}

impl SpectralLadderSet {
    /// Ladders of the elliptic suspension with principal `log π`.
    pub fn new(spec: &SuspensionSpec) -> Result<Self> {
        Self::with_branch(spec, 0)
    }

    /// Same ladders with `log π` and `log π̄` taken on branch `branch`.
    pub fn with_branch(spec: &SuspensionSpec, branch: i64) -> Result<Self> {
        let OrbitSource::Elliptic(curve) = spec.source() else {
            return Err(domain("spectral ladders are only known for the elliptic source"));
        };
        let shift = Complex64::new(0.0, TWO_PI * branch as f64);
        let families = alloc::vec![
            LadderFamily { degree: 0, base: Complex64::new(0.0, 0.0), sign: 1.0 },
            LadderFamily { degree: 1, base: curve.pi.ln() + shift, sign: -1.0 },
            LadderFamily { degree: 1, base: curve.pi_bar.ln() + shift, sign: -1.0 },
            LadderFamily { degree: 2, base: Complex64::new(spec.alpha() * spec.l(), 0.0), sign: 1.0 },
        ];
        Ok(SpectralLadderSet { l: spec.l(), families })
    }

    pub fn families(&self) -> &[LadderFamily] {
        &self.families
    }

    pub fn eigenvalue(&self, family: usize, k: i64) -> Complex64 {
        (self.families[family].base + Complex64::new(0.0, TWO_PI * k as f64)) / self.l
    }

    /// `Φ(λ)` summed over `|k| ≤ k_max` with alternating signs.
    pub fn distribution(&self, k_max: u32) -> ExponentialSum {
        let mut sum = ExponentialSum::new();
        for (f, fam) in self.families.iter().enumerate() {
            for k in -(k_max as i64)..=k_max as i64 {
                sum.push(self.eigenvalue(f, k), Complex64::new(fam.sign, 0.0));
            }
        }
        sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSide {
    pub value: f64,
    pub imaginary: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

fn truncation_check(side: TraceSide, what: &str, cfg: &PrecisionConfig) -> Result<TraceSide> {
    if side.tail_bound > cfg.target_abs_error {
        return Err(Error::Truncation(format!(
            "{what} tail bound {:e} exceeds the target {:e}",
            side.tail_bound, cfg.target_abs_error
        )));
    }
    Ok(side)
}

/// `log Σ |c_i| |profile_i(t)|`, or `−∞` where every profile vanishes.
fn log_envelope(phi: &TestFunction, t: f64) -> f64 {
    let mut best = f64::NEG_INFINITY;
    let mut logs = Vec::with_capacity(phi.terms().len());
    for &(c, p) in phi.terms() {
        let v = match p {
            Profile::Gaussian { center, sigma, .. } => {
                let u = (t - center) / sigma;
                c.abs().ln() - 0.5 * u * u
            }
            Profile::Bump { .. } => {
                let e = p.eval(t);
                if e > 0.0 {
                    c.abs().ln() + e.ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
        };
        best = best.max(v);
        logs.push(v);
    }
    if best == f64::NEG_INFINITY {
        return best;
    }
    best + logs.iter().map(|v| (v - best).exp()).sum::<f64>().ln()
}

/// `Σ_{n>n0} l ρⁿ (|φ(nl)| + e^{−αnl}|φ(−nl)|)`.
fn orbit_tail(phi: &TestFunction, l: f64, alpha: f64, log_growth: f64, n0: u32) -> f64 {
    let Some((a, b)) = phi.support() else {
        return 0.0;
    };
    let reach = a.abs().max(b.abs());
    let mut sum = 0.0;
    let mut n = n0 as f64 + 1.0;
    loop {
        let x = n * l;
        let pos = (n * log_growth + log_envelope(phi, x)).exp();
        let neg = (n * log_growth - alpha * x + log_envelope(phi, -x)).exp();
        let term = l * (pos + neg);
        sum += term;
        if (x > reach && term < 1e-300) || n > n0 as f64 + 1e5 {
            break;
        }
        n += 1.0;
    }
    sum
}

/// The closed-orbit side as a Dirac comb.
pub fn geometric_comb(spec: &SuspensionSpec, orbits: &OrbitData, k_max: u32) -> DiracComb {
    let mut comb = DiracComb::new();
    comb.push(0.0, spec.foliated_euler_char());
    for class in orbits.classes() {
        if class.count == 0 {
            continue;
        }
        let length = class.n as f64 * spec.l();
        let weight = class.count as f64 * length;
        for k in 1..=k_max as i64 {
            let x = k as f64 * length;
            comb.push(x, weight * class.sign.at(k));
            let w = match orbits.negative_weight {
                NegativeWeight::Conformal => (-spec.alpha() * x).exp(),
                NegativeWeight::Unit => 1.0,
            };
            comb.push(-x, weight * class.sign.at(-k) * w);
        }
    }
    comb
}

/// `χ(M)·l·φ(0) + Σ_γ l(γ)[Σ_{1≤k≤k_max} ε φ(k l(γ)) + Σ_{−k_max≤k≤−1} ε e^{αk l(γ)} φ(k l(γ))]`.
pub fn geometric_distribution(
    phi: &TestFunction,
    spec: &SuspensionSpec,
    orbits: &OrbitData,
    k_max: u32,
    cfg: &PrecisionConfig,
) -> Result<TraceSide> {
    if k_max == 0 {
        return Err(domain("k_max must be >= 1"));
    }
    let comb = geometric_comb(spec, orbits, k_max);
    let value = comb.pair(phi);
    let n0 = k_max.min(orbits.max_period());
    let alpha = match orbits.negative_weight {
        NegativeWeight::Conformal => spec.alpha(),
        NegativeWeight::Unit => 0.0,
    };
    let tail_bound = orbit_tail(phi, spec.l(), alpha, spec.source().log_growth(), n0);
    truncation_check(TraceSide { value, imaginary: 0.0, terms: comb.len(), tail_bound }, "orbit sum", cfg)
}

/// `log p · Σ_{n≤n_max} N_n [φ(n log p) + p^{−n} φ(−n log p)]`.
pub fn nweighted_geometric(
    phi: &TestFunction,
    curve: &EllipticCurveData,
    n_max: u32,
    cfg: &PrecisionConfig,
) -> Result<TraceSide> {
    check_iterate(n_max)?;
    let l = curve.period();
    let p = curve.p as f64;
    let mut acc = CompensatedSum::new();
    for n in 1..=n_max {
        let count = point_counts(curve, n)? as f64;
        let x = n as f64 * l;
        acc.add_real(l * count * phi.eval(x));
        acc.add_real(l * count * p.powi(-(n as i32)) * phi.eval(-x));
    }
    let growth = OrbitSource::Elliptic(*curve).log_growth();
    let tail_bound = orbit_tail(phi, l, 1.0, growth, n_max);
    truncation_check(
        TraceSide { value: acc.real(), imaginary: 0.0, terms: 2 * n_max as usize, tail_bound },
        "point-count sum",
        cfg,
    )
}

/// Bound on `Σ_{|k|>k_max} |Φ(λ_k)|` for one ladder.
fn ladder_tail(phi: &TestFunction, base: Complex64, l: f64, k_max: u32, cfg: &PrecisionConfig) -> Result<f64> {
    let a = base.re / l;
    let step = TWO_PI / l;
    let mut total = 0.0;
    for &(c, p) in phi.terms() {
        total += c.abs()
            * match p {
                Profile::Gaussian { center, sigma, .. } => {
                    // |Φ(a + iy)| = √(2π)σ e^{ac + σ²(a² − y²)/2}
                    let amp = TWO_PI.sqrt() * sigma * (a * center + 0.5 * sigma * sigma * a * a).exp();
                    let mut sum = 0.0;
                    for side in [1.0, -1.0] {
                        let mut k = k_max as f64 + 1.0;
                        loop {
                            let y = (base.im + side * TWO_PI * k) / l;
                            let term = amp * (-0.5 * sigma * sigma * y * y).exp();
                            sum += term;
                            if term < 1e-300 || k > k_max as f64 + 1e6 {
                                break;
                            }
                            k += 1.0;
                        }
                    }
                    sum
                }
                Profile::Bump { halfwidth, .. } => {
                    // Estimate: the last retained modulus times the number of
                    // ladder steps in one e-fold of the decay exp(−√(w|y|)).
                    let mut sum = 0.0;
                    for side in [1.0, -1.0] {
                        let y = (base.im + side * TWO_PI * k_max as f64) / l;
                        let edge = p.transform(Complex64::new(a, y), cfg)?.norm();
                        sum += edge * (1.0 + 2.0 * (y.abs() / halfwidth).sqrt() / step);
                    }
                    sum
                }
            };
    }
    Ok(total)
}

/// `Σ_{n=0}^{2} (−1)^n Σ_{|k|≤k_max} Φ(λ_{n,k})` over the elliptic ladders.
pub fn spectral_distribution(
    phi: &TestFunction,
    spec: &SuspensionSpec,
    k_max: u32,
    cfg: &PrecisionConfig,
) -> Result<TraceSide> {
    let ladders = SpectralLadderSet::new(spec)?;
    let dist = ladders.distribution(k_max);
    let value = dist.pair(phi, cfg)?;
    let mut tail_bound = 0.0;
    if !phi.is_zero() {
        for fam in ladders.families() {
            tail_bound += ladder_tail(phi, fam.base, spec.l(), k_max, cfg)?;
        }
    }
    truncation_check(
        TraceSide { value: value.re, imaginary: value.im, terms: dist.len(), tail_bound },
        "ladder sum",
        cfg,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    pub spectral: TraceSide,
    pub geometric: TraceSide,
    /// Möbius-resummed point-count form of the orbit side.
    pub nweighted: TraceSide,
    pub residual: f64,
    pub orbits: OrbitData,
}

pub fn check_trace_formula(
    phi: &TestFunction,
    spec: &SuspensionSpec,
    k_max: u32,
    n_max: u32,
    cfg: &PrecisionConfig,
) -> Result<TraceReport> {
    let OrbitSource::Elliptic(curve) = spec.source() else {
        return Err(domain("the trace formula check needs the elliptic source"));
    };
    let orbits = closed_orbit_counts(spec.source(), n_max)?;
    let spectral = spectral_distribution(phi, spec, k_max, cfg)?;
    let geometric = geometric_distribution(phi, spec, &orbits, k_max, cfg)?;
    let nweighted = nweighted_geometric(phi, curve, n_max, cfg)?;
    let residual = Complex64::new(spectral.value - geometric.value, spectral.imaginary).norm();
    Ok(TraceReport { spectral, geometric, nweighted, residual, orbits })
}

/// Fixed-point kernel `ε |1 − e^{κt}|^{−1}` on the positive side and
/// `ε e^t |1 − e^{κ|t|}|^{−1}` on the negative side.
pub fn weil_like_wx(t: f64, eps: f64, kappa: f64, side: SignSide) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::Pole("fixed-point kernel at t = 0"));
    }
    match side {
        SignSide::PositiveSupport => Ok(eps / (1.0 - (kappa * t).exp()).abs()),
        SignSide::NegativeSupport => Ok(eps * t.exp() / (1.0 - (kappa * t.abs()).exp()).abs()),
        SignSide::StraddlesZero => Err(Error::UnsupportedPrincipalValue),
    }
}

/// `∫ φ(t) W_x(t) dt` for `φ` supported on one side of 0.
pub fn weil_like_pairing(phi: &TestFunction, eps: f64, kappa: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let Some(side) = phi.sign_side() else {
        return Ok(0.0);
    };
    if side == SignSide::StraddlesZero {
        return Err(Error::UnsupportedPrincipalValue);
    }
    let mut acc = CompensatedSum::new();
    for &(c, profile) in phi.terms() {
        let (a, b) = profile.support();
        // Endpoints at t = 0 are never sampled by Gauss–Legendre nodes.
        let w = integrate_real(|t| profile.eval(t) * weil_like_wx(t, eps, kappa, side).unwrap_or(0.0), a, b, cfg)?;
        acc.add_real(c * w);
    }
    Ok(acc.real())
}

/// `Re(log π)/log p`, which equals `α/2 = 1/2` for a Weil number.
pub fn h1_real_part(curve: &EllipticCurveData) -> f64 {
    curve.pi.ln().re / curve.period()
}

/// Weight of the `k = 0` term on the spectral side, `1 − 1 − 1 + 1`.
pub fn spectral_delta_weight(ladders: &SpectralLadderSet) -> f64 {
    ladders.families().iter().map(|f| f.sign).sum()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit::{weil_term, WeilTermParams};
    use proptest::prelude::*;

    fn curve(p: u64, a: i64) -> EllipticCurveData {
        EllipticCurveData::new(p, a).unwrap()
    }

    #[test]
    fn frobenius_roots() {
        let (pi, pi_bar) = frobenius_eigenvalues(&curve(5, 2));
        assert!((pi - Complex64::new(1.0, 2.0)).norm() < 1e-15);
        assert!((pi_bar - Complex64::new(1.0, -2.0)).norm() < 1e-15);
        let (pi, _) = frobenius_eigenvalues(&curve(2, 1));
        assert!((pi - Complex64::new(0.5, 7f64.sqrt() / 2.0)).norm() < 1e-15);
        assert_eq!(EllipticCurveData::new(5, 5), Err(Error::NotOrdinary { p: 5, a_p: 5 }));
        assert_eq!(EllipticCurveData::new(5, 0), Err(Error::NotOrdinary { p: 5, a_p: 0 }));
        assert!(matches!(EllipticCurveData::new(5, 6), Err(Error::Domain(_))));
        assert!(matches!(EllipticCurveData::new(6, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn weil_numbers() {
        for (p, a) in [(5, 2), (7, 3), (2, 1), (101, -17)] {
            let r = weil_number_check(&curve(p, a));
            assert!(r.passed, "{p} {a}: {r:?}");
        }
        let e = curve(5, 2);
        let (pi, pi_bar) = frobenius_eigenvalues(&e);
        let r = weil_number_check_values(pi + 0.1, pi_bar, 5, 2);
        assert!(!r.passed);
        assert!((h1_real_part(&e) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn point_count_examples() {
        let e = curve(5, 2);
        assert_eq!(point_counts(&e, 1).unwrap(), 4);
        assert_eq!(point_counts(&e, 2).unwrap(), 32);
        assert!(point_counts(&e, 0).is_err());
        assert!(point_counts(&e, 61).is_err());
        // 2^60 fits in i128; 5^60 does not.
        assert!(point_counts(&curve(2, 1), 60).is_ok());
        assert!(matches!(point_counts(&e, 60), Err(Error::Precision(_))));
    }

    #[test]
    fn powers_match_recurrence() {
        for (p, a) in [(5, 2), (7, 3), (2, 1), (13, -5), (101, 7)] {
            let e = curve(p, a);
            // keep 2·p^{n/2} well inside the range where f64 powers round correctly
            for n in (1..=12).filter(|&n| (p as f64).powf(n as f64 / 2.0) < 1e8) {
                assert_eq!(point_counts_via_powers(&e, n).unwrap(), point_counts(&e, n).unwrap(), "{p} {a} {n}");
            }
        }
        assert!(matches!(point_counts_via_powers(&curve(5, 2), 60), Err(Error::Precision(_))));
    }

    #[test]
    fn orbit_counts() {
        let o = closed_orbit_counts(&OrbitSource::Elliptic(curve(5, 2)), 12).unwrap();
        assert_eq!(o.count(1), 4);
        assert_eq!(o.count(2), 14);
        let c = closed_orbit_counts(&OrbitSource::CoveringDegree(2), 6).unwrap();
        assert_eq!(c.count(1), 1);
        assert_eq!(c.count(2), 1);
        assert_eq!(c.count(3), 2);
        assert_eq!(c.count(6), 9);
    }

    #[test]
    fn mobius_consistency() {
        for (p, a) in [(5, 2), (7, 3), (2, 1), (3, 1), (3, -2), (11, 4), (13, -5)] {
            let e = curve(p, a);
            let o = closed_orbit_counts(&OrbitSource::Elliptic(e), 12).unwrap();
            let n = o.fixed_point_counts();
            for k in 1..=12u32 {
                assert_eq!(n[k as usize - 1], point_counts(&e, k).unwrap());
            }
        }
    }

    #[test]
    fn user_orbits_validation() {
        assert!(OrbitData::from_counts(&[(0, 1)]).is_err());
        assert!(OrbitData::from_counts(&[(2, 1), (1, 1)]).is_err());
        let o = OrbitData::from_counts(&[(1, 2), (3, 1)]).unwrap();
        assert_eq!(o.fixed_point_counts(), alloc::vec![2, 2, 5]);
    }

    #[test]
    fn spec_validation() {
        let e = curve(5, 2);
        assert!(SuspensionSpec::new(e.period(), 1.0, 0, OrbitSource::Elliptic(e)).is_ok());
        assert!(SuspensionSpec::new(1.0, 1.0, 0, OrbitSource::Elliptic(e)).is_err());
        assert!(SuspensionSpec::new(e.period(), 1.0, 2, OrbitSource::Elliptic(e)).is_err());
        assert!(SuspensionSpec::new(0.0, 1.0, 0, OrbitSource::CoveringDegree(2)).is_err());
        assert!(SuspensionSpec::new(1.0, 1.0, 0, OrbitSource::CoveringDegree(1)).is_err());
    }

    #[test]
    fn zero_function_gives_zero() {
        let cfg = PrecisionConfig::default();
        let spec = SuspensionSpec::elliptic(curve(5, 2));
        let r = check_trace_formula(&TestFunction::zero(), &spec, 50, 12, &cfg).unwrap();
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.geometric.value, 0.0);
        assert_eq!(r.nweighted.value, 0.0);
    }

    #[test]
    fn support_between_orbits_sees_nothing() {
        let cfg = PrecisionConfig::default();
        let spec = SuspensionSpec::elliptic(curve(5, 2));
        let l = spec.l();
        let orbits = closed_orbit_counts(spec.source(), 12).unwrap();
        let phi = TestFunction::bump(l / 2.0, l / 4.0).unwrap();
        assert_eq!(geometric_distribution(&phi, &spec, &orbits, 20, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn negative_side_enumeration() {
        let cfg = PrecisionConfig::default();
        let e = curve(5, 2);
        let l = e.period();
        let phi = TestFunction::bump(-1.25 * l, 0.75 * l).unwrap();
        let v = nweighted_geometric(&phi, &e, 12, &cfg).unwrap().value;
        let direct = l * 4.0 / 5.0 * phi.eval(-l) + l * 32.0 / 25.0 * phi.eval(-2.0 * l);
        assert!((v - direct).abs() < 1e-15);
        assert!(phi.eval(-2.0 * l) == 0.0);
    }

    #[test]
    fn orbit_and_point_count_forms_agree() {
        let cfg = PrecisionConfig::default();
        for (p, a) in [(5, 2), (7, 3)] {
            let e = curve(p, a);
            let spec = SuspensionSpec::elliptic(e);
            let l = spec.l();
            let orbits = closed_orbit_counts(spec.source(), 12).unwrap();
            for phi in [
                TestFunction::gaussian(l, 0.1, 6.0).unwrap(),
                TestFunction::bump(1.5 * l, 0.8 * l).unwrap(),
                TestFunction::gaussian(-l, 0.2, 6.0).unwrap().plus(&TestFunction::bump(2.0 * l, 0.3).unwrap()),
            ] {
                let g = geometric_distribution(&phi, &spec, &orbits, 12, &cfg).unwrap();
                let n = nweighted_geometric(&phi, &e, 12, &cfg).unwrap();
                assert!((g.value - n.value).abs() < 1e-10, "{} vs {}", g.value, n.value);
            }
        }
    }

    #[test]
    fn trace_formula_gaussian() {
        let cfg = PrecisionConfig::default();
        for (p, a) in [(5, 2), (7, 3)] {
            let spec = SuspensionSpec::elliptic(curve(p, a));
            let phi = TestFunction::gaussian(spec.l(), 0.15, 6.0).unwrap();
            let r = check_trace_formula(&phi, &spec, 400, 12, &cfg).unwrap();
            assert!(r.residual < 1e-6, "{r:?}");
            assert!((r.nweighted.value - r.geometric.value).abs() < 1e-10);
            assert!(r.spectral.imaginary.abs() < 1e-12);
        }
    }

    #[test]
    fn ladder_truncation_is_stable() {
        let cfg = PrecisionConfig::default();
        let spec = SuspensionSpec::elliptic(curve(5, 2));
        let phi = TestFunction::gaussian(spec.l(), 0.15, 6.0).unwrap();
        let a = spectral_distribution(&phi, &spec, 100, &cfg).unwrap();
        let b = spectral_distribution(&phi, &spec, 200, &cfg).unwrap();
        assert!((a.value - b.value).abs() <= a.tail_bound + 1e-13);
        assert!(matches!(spectral_distribution(&phi, &spec, 2, &cfg), Err(Error::Truncation(_))));
    }

    #[test]
    fn delta_weight_vanishes() {
        let spec = SuspensionSpec::elliptic(curve(5, 2));
        assert_eq!(spectral_delta_weight(&SpectralLadderSet::new(&spec).unwrap()), 0.0);
        assert_eq!(spec.foliated_euler_char(), 0.0);
    }

    #[test]
    fn branch_independence() {
        let spec = SuspensionSpec::elliptic(curve(7, 3));
        let principal = SpectralLadderSet::new(&spec).unwrap();
        for branch in [-3i64, 1, 5] {
            let other = SpectralLadderSet::with_branch(&spec, branch).unwrap();
            for f in 0..4 {
                for k in -20i64..=20 {
                    let shift = if principal.families()[f].degree == 1 { branch } else { 0 };
                    let d = other.eigenvalue(f, k) - principal.eigenvalue(f, k + shift);
                    assert!(d.norm() < 1e-12);
                }
            }
        }
        for f in principal.families().iter().filter(|f| f.degree == 1) {
            assert!((f.base.re / spec.l() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn spectral_side_needs_elliptic_source() {
        let cfg = PrecisionConfig::default();
        let spec = SuspensionSpec::new(2f64.ln(), 1.0, 0, OrbitSource::CoveringDegree(2)).unwrap();
        let phi = TestFunction::gaussian(1.0, 0.1, 6.0).unwrap();
        assert!(spectral_distribution(&phi, &spec, 10, &cfg).is_err());
        let orbits = closed_orbit_counts(spec.source(), 20).unwrap();
        assert!(geometric_distribution(&phi, &spec, &orbits, 20, &cfg).is_ok());
    }

    #[test]
    fn fixed_point_kernel_matches_weil_term() {
        let cfg = PrecisionConfig::default();
        for phi in [TestFunction::bump(1.5, 0.6).unwrap(), TestFunction::bump(-2.0, 1.0).unwrap()] {
            for (kappa, params) in [(-1.0, WeilTermParams::COMPLEX), (-2.0, WeilTermParams::REAL)] {
                let a = weil_like_pairing(&phi, 1.0, kappa, &cfg).unwrap();
                let b = weil_term(&phi, params, &cfg).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
        assert!(weil_like_wx(0.0, 1.0, -1.0, SignSide::PositiveSupport).is_err());
        assert_eq!(
            weil_like_pairing(&TestFunction::bump(0.0, 1.0).unwrap(), 1.0, -1.0, &cfg),
            Err(Error::UnsupportedPrincipalValue)
        );
    }

    proptest! {
        #[test]
        fn orbit_counts_invert(p_idx in 0usize..8, a_seed in any::<i64>()) {
            let p = [2u64, 3, 5, 7, 11, 13, 17, 19][p_idx];
            let bound = (2.0 * (p as f64).sqrt()).floor() as i64;
            let a = a_seed.rem_euclid(2 * bound + 1) - bound;
            prop_assume!(a % p as i64 != 0);
            let e = curve(p, a);
            let o = closed_orbit_counts(&OrbitSource::Elliptic(e), 12).unwrap();
            let n = o.fixed_point_counts();
            for k in 1..=12u32 {
                prop_assert_eq!(n[k as usize - 1], point_counts(&e, k).unwrap());
            }
        }
    }
}
