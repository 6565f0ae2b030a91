use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::cos;
use num_complex::Complex64;

use super::{CompensatedSum, PrecisionConfig};
use crate::error::{domain, Error, Result};

const GL_ORDER: usize = 16;

/// Values that adaptive quadrature can accumulate.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, k: f64) -> Self;
    fn magnitude(self) -> f64;
    fn to_complex(self) -> Complex64;
    fn from_complex(z: Complex64) -> Self;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn from_complex(z: Complex64) -> Self {
        z.re
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn from_complex(z: Complex64) -> Self {
        z
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton on `P_n`).
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn apply<V: QuadValue>(&self, f: &impl Fn(f64) -> V, lo: f64, hi: f64) -> V {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = CompensatedSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(mid + half * x).to_complex() * *w);
        }
        V::from_complex(acc.value() * half)
    }
}

/// Adaptive Gauss–Legendre quadrature of `f` over `[a, b]`.
///
/// Each panel is accepted when the 16-point rule on the panel and on its two
/// halves agree to within the panel's share of `target_abs_error` (or to a
/// few ulps of the panel value). Panels are summed left to right.
pub fn integrate<V: QuadValue>(f: &impl Fn(f64) -> V, a: f64, b: f64, cfg: &PrecisionConfig) -> Result<V> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain("integration bounds must satisfy a < b"));
    }
    let (nodes, weights) = gauss_legendre(GL_ORDER);
    let rule = Rule { nodes, weights };
    let total_len = b - a;
    let mut stack = Vec::new();
    stack.push((a, b, rule.apply(f, a, b), 0usize));
    let mut total = CompensatedSum::new();
    let mut unresolved = 0.0f64;
    while let Some((lo, hi, coarse, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.apply(f, lo, mid);
        let right = rule.apply(f, mid, hi);
        let fine = left.add(right);
        let err = fine.add(coarse.scale(-1.0)).magnitude();
        let tol = (cfg.target_abs_error * (hi - lo) / total_len).max(64.0 * f64::EPSILON * fine.magnitude());
        if err <= tol {
            total.add(fine.to_complex());
        } else if depth + 1 >= cfg.quadrature_max_depth {
            total.add(fine.to_complex());
            unresolved += err;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    if !total.value().re.is_finite() || !total.value().im.is_finite() {
        return Err(domain("integrand produced a non-finite value"));
    }
    if unresolved > cfg.target_abs_error {
        return Err(Error::Convergence { estimate: total.value(), error: unresolved });
    }
    Ok(V::from_complex(total.value()))
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real(f: impl Fn(f64) -> f64, a: f64, b: f64, cfg: &PrecisionConfig) -> Result<f64> {
    integrate(&f, a, b, cfg)
}
