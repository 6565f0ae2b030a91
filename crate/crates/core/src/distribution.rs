//! Distributions on `ℝ` of the two shapes that appear in trace and explicit
//! formulas, paired against test functions.
//!
//! * [`ExponentialSum`]: `Σ w·e^{λt}`, paired as `Σ w·Φ(λ)`.
//! * [`DiracComb`]: `Σ w·δ_x`, paired as `Σ w·φ(x)`.
//!
//! Pairings accumulate terms in insertion order with compensated summation.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Result;
use crate::explicit::{transform, TestFunction};
use crate::numerics::{CompensatedSum, PrecisionConfig};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExponentialSum {
    terms: Vec<(Complex64, Complex64)>,
}

impl ExponentialSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `weight · e^{exponent·t}`.
    pub fn push(&mut self, exponent: Complex64, weight: Complex64) {
        self.terms.push((exponent, weight));
    }

    pub fn terms(&self) -> &[(Complex64, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pair(&self, phi: &TestFunction, cfg: &PrecisionConfig) -> Result<Complex64> {
        let mut acc = CompensatedSum::new();
        if phi.is_zero() {
            return Ok(acc.value());
        }
        for &(exponent, weight) in &self.terms {
            acc.add(weight * transform(phi, exponent, cfg)?);
        }
        Ok(acc.value())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiracComb {
    terms: Vec<(f64, f64)>,
}

impl DiracComb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `weight · δ_position`.
    pub fn push(&mut self, position: f64, weight: f64) {
        self.terms.push((position, weight));
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pair(&self, phi: &TestFunction) -> f64 {
        let mut acc = CompensatedSum::new();
        for &(x, w) in &self.terms {
            acc.add_real(w * phi.eval(x));
        }
        acc.real()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comb_pairs_pointwise() {
        let phi = TestFunction::gaussian(0.0, 1.0, 8.0).unwrap();
        let mut comb = DiracComb::new();
        comb.push(0.0, 2.0);
        comb.push(1.0, -1.0);
        let expect = 2.0 - (-0.5f64).exp();
        assert!((comb.pair(&phi) - expect).abs() < 1e-15);
    }

    #[test]
    fn exponential_sum_pairs_with_transform() {
        let cfg = PrecisionConfig::default();
        let phi = TestFunction::gaussian(1.0, 0.5, 8.0).unwrap();
        let mut sum = ExponentialSum::new();
        sum.push(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        sum.push(Complex64::new(1.0, 0.0), Complex64::new(-3.0, 0.0));
        let expect = transform(&phi, Complex64::new(0.0, 0.0), &cfg).unwrap()
            - transform(&phi, Complex64::new(1.0, 0.0), &cfg).unwrap() * 3.0;
        assert!((sum.pair(&phi, &cfg).unwrap() - expect).norm() < 1e-15);
        assert_eq!(sum.pair(&TestFunction::zero(), &cfg).unwrap(), Complex64::new(0.0, 0.0));
    }
}
