//! Lefschetz numbers at the level of data: fixed infinite places of a field
//! automorphism, and signed sums of local traces at fixed points of a flow.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::numerics::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub kind: PlaceKind,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitePlaceSet {
    places: Vec<Place>,
}

impl InfinitePlaceSet {
    pub fn new(places: Vec<Place>) -> Self {
        InfinitePlaceSet { places }
    }

    /// `r1` real places followed by `r2` complex places.
    pub fn from_signature(r1: u32, r2: u32) -> Self {
        let real = (0..r1).map(|i| Place { kind: PlaceKind::Real, label: format!("real{i}") });
        let complex = (0..r2).map(|i| Place { kind: PlaceKind::Complex, label: format!("complex{i}") });
        InfinitePlaceSet { places: real.chain(complex).collect() }
    }

    /// As [`from_signature`](Self::from_signature), checking `r1 + 2 r2 = degree`.
    pub fn with_degree(r1: u32, r2: u32, degree: u32) -> Result<Self> {
        if r1 + 2 * r2 != degree {
            return Err(domain(format!("signature ({r1}, {r2}) does not match degree {degree}")));
        }
        Ok(Self::from_signature(r1, r2))
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn r1(&self) -> u32 {
        self.places.iter().filter(|p| p.kind == PlaceKind::Real).count() as u32
    }

    pub fn r2(&self) -> u32 {
        self.places.iter().filter(|p| p.kind == PlaceKind::Complex).count() as u32
    }
}

/// `r1 + r2`.
pub fn euler_characteristic_infinite(places: &InfinitePlaceSet) -> i64 {
    places.len() as i64
}

/// A permutation of places together with an exponent `N` with `σ^N = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismAction {
    perm: Vec<usize>,
    order: u32,
}

/// Smallest `N ≥ 1` with `σ^N = 1`, or `None` if `perm` is not a permutation.
pub fn permutation_order(perm: &[usize]) -> Option<u64> {
    let n = perm.len();
    let mut seen = alloc::vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return None;
        }
        seen[p] = true;
    }
    let mut visited = alloc::vec![false; n];
    let mut order = 1u64;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = perm[i];
            len += 1;
        }
        order = lcm(order, len);
    }
    Some(order)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl AutomorphismAction {
    /// `perm[i]` is the image of place `i`.
    pub fn new(perm: Vec<usize>, order: u32, places: &InfinitePlaceSet) -> Result<Self> {
        if perm.len() != places.len() {
            return Err(domain(format!("permutation has {} entries for {} places", perm.len(), places.len())));
        }
        let Some(true_order) = permutation_order(&perm) else {
            return Err(domain("action is not a permutation of the places"));
        };
        if order == 0 || order as u64 % true_order != 0 {
            return Err(domain(format!("σ^{order} is not the identity (σ has order {true_order})")));
        }
        for (i, &j) in perm.iter().enumerate() {
            if places.places[i].kind != places.places[j].kind {
                return Err(domain(format!("σ sends place {i} to place {j} of a different kind")));
            }
        }
        Ok(AutomorphismAction { perm, order })
    }

    /// The permutation with its exact order.
    pub fn from_permutation(perm: Vec<usize>, places: &InfinitePlaceSet) -> Result<Self> {
        let order = permutation_order(&perm).ok_or_else(|| domain("action is not a permutation of the places"))?;
        let order = u32::try_from(order).map_err(|_| domain("permutation order exceeds 32 bits"))?;
        Self::new(perm, order, places)
    }

    pub fn identity(places: &InfinitePlaceSet) -> Self {
        AutomorphismAction { perm: (0..places.len()).collect(), order: 1 }
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `σ^j`, keeping `N` as its exponent.
    pub fn power(&self, j: u32) -> AutomorphismAction {
        let mut perm: Vec<usize> = (0..self.perm.len()).collect();
        for _ in 0..j % self.order {
            perm = perm.iter().map(|&i| self.perm[i]).collect();
        }
        AutomorphismAction { perm, order: self.order }
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.perm.iter().enumerate().filter(|(i, &j)| *i == j).map(|(i, _)| i)
    }

    pub fn orbit_count(&self) -> usize {
        let mut visited = alloc::vec![false; self.perm.len()];
        let mut orbits = 0;
        for start in 0..self.perm.len() {
            if visited[start] {
                continue;
            }
            orbits += 1;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.perm[i];
            }
        }
        orbits
    }
}

/// `Σ_{σx = x} ε_x(σ)` over infinite places, with `ε_x = +1`.
pub fn arithmetic_lefschetz(places: &InfinitePlaceSet, action: &AutomorphismAction) -> Result<i64> {
    // Re-validate: the action may have been built for a different place set.
    AutomorphismAction::new(action.perm.clone(), action.order, places)?;
    Ok(action.fixed_points().count() as i64)
}

/// `(Σ_{j<N} L(σ^j), N · #orbits)`; the two agree by Burnside's lemma.
pub fn burnside_check(places: &InfinitePlaceSet, action: &AutomorphismAction) -> Result<(i64, i64)> {
    let mut total = 0;
    for j in 0..action.order {
        total += arithmetic_lefschetz(places, &action.power(j))?;
    }
    Ok((total, action.order as i64 * action.orbit_count() as i64))
}

/// Local data at a fixed point: `Tr(e_x | F_x)` and `ε_x(σ) = ±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointDatum {
    local_trace: f64,
    epsilon: i8,
}

impl FixedPointDatum {
    pub fn new(local_trace: f64, epsilon: i8) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(domain(format!("ε must be ±1, got {epsilon}")));
        }
        if !local_trace.is_finite() {
            return Err(domain("local trace must be finite"));
        }
        Ok(FixedPointDatum { local_trace, epsilon })
    }

    pub fn local_trace(&self) -> f64 {
        self.local_trace
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }
}

/// `Σ_x Tr(e_x | F_x) ε_x(σ)`.
pub fn dynamical_lefschetz(fixed_points: &[FixedPointDatum]) -> f64 {
    fixed_points.iter().map(|d| d.local_trace * d.epsilon as f64).collect::<CompensatedSum>().real()
}

/// Trace on compactly supported cohomology of a fixed-point-free flow.
///
/// With `orbit_only` the flow has no fixed points, so supplying any data is
/// an error and the result is 0. Otherwise the plain fixed-point sum is returned.
pub fn compact_support_vanishing_check(orbit_only: bool, fixed_points: &[FixedPointDatum]) -> Result<f64> {
    if orbit_only && !fixed_points.is_empty() {
        return Err(domain("a fixed-point-free flow cannot carry fixed-point data"));
    }
    Ok(dynamical_lefschetz(fixed_points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn infinite_euler_characteristic() {
        assert_eq!(euler_characteristic_infinite(&InfinitePlaceSet::from_signature(1, 0)), 1);
        assert_eq!(euler_characteristic_infinite(&InfinitePlaceSet::from_signature(0, 1)), 1);
        assert_eq!(euler_characteristic_infinite(&InfinitePlaceSet::from_signature(2, 0)), 2);
        assert!(InfinitePlaceSet::with_degree(1, 1, 3).is_ok());
        assert!(InfinitePlaceSet::with_degree(1, 1, 2).is_err());
    }

    #[test]
    fn field_automorphisms() {
        let q_sqrt2 = InfinitePlaceSet::from_signature(2, 0);
        let swap = AutomorphismAction::from_permutation(vec![1, 0], &q_sqrt2).unwrap();
        assert_eq!(swap.order(), 2);
        assert_eq!(arithmetic_lefschetz(&q_sqrt2, &swap).unwrap(), 0);

        let q_i = InfinitePlaceSet::from_signature(0, 1);
        let conj = AutomorphismAction::new(vec![0], 2, &q_i).unwrap();
        assert_eq!(arithmetic_lefschetz(&q_i, &conj).unwrap(), 1);

        let mixed = InfinitePlaceSet::from_signature(1, 1);
        assert!(AutomorphismAction::from_permutation(vec![1, 0], &mixed).is_err());
        assert!(AutomorphismAction::new(vec![1, 0], 3, &q_sqrt2).is_err());
        assert!(AutomorphismAction::new(vec![0, 0], 1, &q_sqrt2).is_err());
        assert!(arithmetic_lefschetz(&mixed, &swap).is_err());
    }

    #[test]
    fn identity_counts_every_place() {
        for (r1, r2) in [(1, 0), (0, 1), (2, 0), (1, 1), (3, 2)] {
            let places = InfinitePlaceSet::from_signature(r1, r2);
            let id = AutomorphismAction::identity(&places);
            assert_eq!(arithmetic_lefschetz(&places, &id).unwrap(), (r1 + r2) as i64);
        }
    }

    #[test]
    fn dynamical_examples() {
        assert_eq!(dynamical_lefschetz(&[]), 0.0);
        let d = |t, e| FixedPointDatum::new(t, e).unwrap();
        assert_eq!(dynamical_lefschetz(&[d(1.0, 1), d(1.0, 1)]), 2.0);
        assert_eq!(dynamical_lefschetz(&[d(1.0, 1), d(2.0, -1)]), -1.0);
        assert!(FixedPointDatum::new(1.0, 0).is_err());
        assert_eq!(compact_support_vanishing_check(true, &[]).unwrap(), 0.0);
        assert!(compact_support_vanishing_check(true, &[d(1.0, 1)]).is_err());
        assert_eq!(compact_support_vanishing_check(false, &[d(1.0, 1), d(2.0, -1)]).unwrap(), -1.0);
    }

    #[test]
    fn permutation_orders() {
        assert_eq!(permutation_order(&[1, 2, 0, 4, 3]), Some(6));
        assert_eq!(permutation_order(&[]), Some(1));
        assert_eq!(permutation_order(&[0, 0]), None);
    }

    fn shuffled(seed: &[u64], n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for (i, s) in seed.iter().enumerate().take(n) {
            let j = i + (*s as usize) % (n - i);
            perm.swap(i, j);
        }
        perm
    }

    proptest! {
        #[test]
        fn burnside(n in 1usize..9, seed in proptest::collection::vec(any::<u64>(), 9), multiple in 1u32..3) {
            let places = InfinitePlaceSet::from_signature(n as u32, 0);
            let perm = shuffled(&seed, n);
            let order = permutation_order(&perm).unwrap() as u32 * multiple;
            let action = AutomorphismAction::new(perm, order, &places).unwrap();
            let (lhs, rhs) = burnside_check(&places, &action).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn relabeling_invariance(n in 1usize..9, seed in proptest::collection::vec(any::<u64>(), 9), relabel in proptest::collection::vec(any::<u64>(), 9)) {
            let places = InfinitePlaceSet::from_signature(n as u32, 0);
            let perm = shuffled(&seed, n);
            let tau = shuffled(&relabel, n);
            let mut tau_inv = vec![0; n];
            for (i, &t) in tau.iter().enumerate() {
                tau_inv[t] = i;
            }
            // τ σ τ⁻¹
            let conj: Vec<usize> = (0..n).map(|i| tau[perm[tau_inv[i]]]).collect();
            let a = AutomorphismAction::from_permutation(perm, &places).unwrap();
            let b = AutomorphismAction::from_permutation(conj, &places).unwrap();
            prop_assert_eq!(arithmetic_lefschetz(&places, &a).unwrap(), arithmetic_lefschetz(&places, &b).unwrap());
            prop_assert_eq!(a.orbit_count(), b.orbit_count());
        }
    }
}
