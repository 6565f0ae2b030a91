//! Cross-module properties that need several modules or a zero list.

use std::sync::OnceLock;

use proptest::prelude::*;
use zrl_core::explicit::{
    check_explicit_formula, geometric_side, spectral_side, ExplicitFormulaDistribution, NumberFieldData, TestFunction,
};
use zrl_core::suspension::{
    geometric_distribution, nweighted_geometric, spectral_distribution, EllipticCurveData, NegativeWeight,
    OrbitData, OrbitSource, SuspensionSpec,
};
use zrl_core::zeros::{find_zeros, ZeroList};
use zrl_core::PrecisionConfig;

fn zeros_to_200() -> &'static ZeroList {
    static ZEROS: OnceLock<ZeroList> = OnceLock::new();
    ZEROS.get_or_init(|| find_zeros(200.0, &PrecisionConfig::default()).unwrap())
}

#[test]
fn higher_zeros_do_not_move_a_gaussian_spectral_side() {
    let cfg = PrecisionConfig::default();
    let q = NumberFieldData::rational();
    let phi = TestFunction::gaussian(2.0, 0.3, 6.0).unwrap();
    let all = zeros_to_200();
    let low = all.truncated(100.0);
    assert_eq!(low.len(), 29);
    let a = spectral_side(&phi, &low, &q, false, &cfg).unwrap();
    let b = spectral_side(&phi, all, &q, false, &cfg).unwrap();
    assert!((a.value - b.value).norm() < 1e-12);
    assert!(a.tail_estimate < 1e-12);
}

#[test]
fn distribution_pairing_reproduces_both_sides() {
    let cfg = PrecisionConfig::default();
    let q = NumberFieldData::rational();
    let zeros = zeros_to_200().truncated(100.0);
    for phi in [TestFunction::gaussian(2.0, 0.3, 6.0).unwrap(), TestFunction::bump(2.0, 0.7).unwrap()] {
        let dist = ExplicitFormulaDistribution::new(&q, &zeros, 45.0).unwrap();
        let spectral = dist.pair_spectral(&phi, &cfg).unwrap();
        assert_eq!(spectral, spectral_side(&phi, &zeros, &q, false, &cfg).unwrap().value);
        let (d, p, wr, wc) = dist.pair_geometric(&phi, &cfg).unwrap();
        let g = geometric_side(&phi, &q, 45.0, &cfg).unwrap();
        assert_eq!((d, p, wr, wc), (g.discriminant_term, g.prime_term, g.weil_real, g.weil_complex));
    }
}

#[test]
fn quadratic_field_geometric_side_uses_split_and_inert_primes() {
    let cfg = PrecisionConfig::default();
    let qi = NumberFieldData::quadratic(-4).unwrap();
    // Support (1.5, 2.5) holds log 5 (split), log 8 (cube of the ramified prime over 2)
    // and log 9 (inert 3).
    let phi = TestFunction::bump(2.0, 0.5).unwrap();
    let g = geometric_side(&phi, &qi, 13.0, &cfg).unwrap();
    let expect = 2.0 * 5f64.ln() * phi.eval(5f64.ln())
        + 2f64.ln() * phi.eval(8f64.ln())
        + 9f64.ln() * phi.eval(9f64.ln());
    assert!((g.prime_term - expect).abs() < 1e-14, "{} vs {}", g.prime_term, expect);
    assert_eq!(g.weil_real, 0.0);
    assert!(g.weil_complex > 0.0);
}

#[test]
fn user_orbits_reproduce_the_elliptic_orbit_side() {
    let cfg = PrecisionConfig::default();
    let curve = EllipticCurveData::new(5, 2).unwrap();
    let spec = SuspensionSpec::elliptic(curve);
    let computed = zrl_core::suspension::closed_orbit_counts(spec.source(), 12).unwrap();
    let counts: Vec<(u32, u64)> = computed.classes().iter().map(|c| (c.n, c.count)).collect();
    let user = OrbitData::from_counts(&counts).unwrap();
    let phi = TestFunction::gaussian(spec.l(), 0.15, 6.0).unwrap();
    let a = geometric_distribution(&phi, &spec, &computed, 12, &cfg).unwrap();
    let user_spec = SuspensionSpec::new(spec.l(), 1.0, 0, OrbitSource::UserOrbits(user.clone())).unwrap();
    let b = geometric_distribution(&phi, &user_spec, &user, 12, &cfg).unwrap();
    assert_eq!(a.value, b.value);
    let n = nweighted_geometric(&phi, &curve, 12, &cfg).unwrap();
    assert!((a.value - n.value).abs() < 1e-10);
    let s = spectral_distribution(&phi, &spec, 400, &cfg).unwrap();
    assert!((s.value - a.value).abs() < 1e-6);
}

#[test]
fn unit_negative_weights_break_the_trace_formula() {
    // The conformal weight e^{αkl} on k ≤ −1 is what matches the ladder side.
    let cfg = PrecisionConfig::default();
    let spec = SuspensionSpec::elliptic(EllipticCurveData::new(5, 2).unwrap());
    let mut orbits = zrl_core::suspension::closed_orbit_counts(spec.source(), 12).unwrap();
    let phi = TestFunction::gaussian(-spec.l(), 0.15, 6.0).unwrap();
    let s = spectral_distribution(&phi, &spec, 400, &cfg).unwrap();
    let conformal = geometric_distribution(&phi, &spec, &orbits, 12, &cfg).unwrap();
    orbits.negative_weight = NegativeWeight::Unit;
    let unit = geometric_distribution(&phi, &spec, &orbits, 12, &cfg);
    assert!((s.value - conformal.value).abs() < 1e-6);
    if let Ok(unit) = unit {
        assert!((s.value - unit.value).abs() > 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn explicit_formula_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let cfg = PrecisionConfig::default();
        let q = NumberFieldData::rational();
        let zeros = zeros_to_200().truncated(100.0);
        let f1 = TestFunction::gaussian(2.0, 0.3, 6.0).unwrap();
        let f2 = TestFunction::gaussian(2.4, 0.25, 6.0).unwrap();
        let r1 = check_explicit_formula(&f1, &q, &zeros, 60.0, &cfg).unwrap();
        let r2 = check_explicit_formula(&f2, &q, &zeros, 60.0, &cfg).unwrap();
        let mix = f1.scaled(a).plus(&f2.scaled(b));
        let r = check_explicit_formula(&mix, &q, &zeros, 60.0, &cfg).unwrap();
        let expect = a * r1.difference + b * r2.difference;
        prop_assert!((r.difference - expect).abs() < 1e-12 * (1.0 + a.abs() + b.abs()) * 10.0, "{:e}", (r.difference - expect).abs());
        let spec_expect = r1.spectral.value * a + r2.spectral.value * b;
        prop_assert!((r.spectral.value - spec_expect).norm() < 1e-11 * (1.0 + a.abs() + b.abs()));
        prop_assert!(r.spectral.value.im.abs() < 1e-12 * (1.0 + a.abs() + b.abs()));
    }
}
