use libm::{ceil, log10};

use crate::error::{domain, Result};

/// Accuracy knobs shared by the series and quadrature routines.
///
/// Cutoffs grow monotonically as `target_abs_error` shrinks; use
/// [`PrecisionConfig::for_target`] rather than filling the fields by hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    pub target_abs_error: f64,
    /// Number of Bernoulli correction terms in Euler–Maclaurin tails.
    pub euler_maclaurin_terms: usize,
    /// Terms summed directly before switching to the Euler–Maclaurin tail.
    pub series_cutoff: usize,
    /// Maximum bisection depth of adaptive quadrature.
    pub quadrature_max_depth: usize,
}

impl PrecisionConfig {
    pub const DEFAULT_TARGET: f64 = 1e-12;
    /// Largest number of Bernoulli terms we carry coefficients for.
    pub const MAX_EULER_MACLAURIN_TERMS: usize = 15;

    pub fn for_target(target_abs_error: f64) -> Result<Self> {
        if !(target_abs_error > 0.0 && target_abs_error < 1.0) {
            return Err(domain("target_abs_error must lie in (0, 1)"));
        }
        let digits = -log10(target_abs_error);
        let em = ceil(8.0 * digits / 12.0) as usize;
        let cutoff = ceil(50.0 * digits / 12.0) as usize;
        let depth = ceil(2.5 * digits) as usize;
        Ok(PrecisionConfig {
            target_abs_error,
            euler_maclaurin_terms: em.clamp(2, Self::MAX_EULER_MACLAURIN_TERMS),
            series_cutoff: cutoff.max(10),
            quadrature_max_depth: depth.max(4),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_error > 0.0) {
            return Err(domain("target_abs_error must be positive"));
        }
        if self.euler_maclaurin_terms < 2 || self.euler_maclaurin_terms > Self::MAX_EULER_MACLAURIN_TERMS {
            return Err(domain("euler_maclaurin_terms must lie in 2..=15"));
        }
        if self.series_cutoff < 10 {
            return Err(domain("series_cutoff must be at least 10"));
        }
        if self.quadrature_max_depth < 4 {
            return Err(domain("quadrature_max_depth must be at least 4"));
        }
        Ok(())
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            target_abs_error: Self::DEFAULT_TARGET,
            euler_maclaurin_terms: 8,
            series_cutoff: 50,
            quadrature_max_depth: 30,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_matches_target_1e12() {
        assert_eq!(PrecisionConfig::for_target(1e-12).unwrap(), PrecisionConfig::default());
    }

    #[test]
    fn cutoffs_monotone_in_target() {
        let targets = [1e-3, 1e-6, 1e-9, 1e-12, 1e-14];
        for pair in targets.windows(2) {
            let loose = PrecisionConfig::for_target(pair[0]).unwrap();
            let tight = PrecisionConfig::for_target(pair[1]).unwrap();
            assert!(tight.series_cutoff >= loose.series_cutoff);
            assert!(tight.euler_maclaurin_terms >= loose.euler_maclaurin_terms);
            assert!(tight.quadrature_max_depth >= loose.quadrature_max_depth);
            tight.validate().unwrap();
        }
    }

    #[test]
    fn rejects_nonpositive_target() {
        assert!(PrecisionConfig::for_target(0.0).is_err());
        assert!(PrecisionConfig::for_target(-1.0).is_err());
    }
}
