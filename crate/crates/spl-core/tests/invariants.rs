//! Randomized invariants tying the independent implementations together.

use proptest::collection::btree_set;
use proptest::prelude::*;

use spl_core::arith::{rat, rat_pow, Rat};
use spl_core::energy::{self, Method};
use spl_core::ground::WeightFn;
use spl_core::padic;
use spl_core::poly::{PolyQ, PolyVec};
use spl_core::structure;
use spl_core::GroundSet;

fn set_from(v: &std::collections::BTreeSet<i64>) -> GroundSet {
    GroundSet::from_ints(v.iter().copied())
}

fn pos_set() -> impl Strategy<Value = GroundSet> {
    btree_set(1i64..40, 2..7).prop_map(|v| set_from(&v))
}

fn pos_poly() -> impl Strategy<Value = PolyQ> {
    proptest::collection::vec(1i64..4, 2..4).prop_map(PolyQ::from_ints)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_equals_split(a in pos_set(), phi in pos_poly(), s in 2u32..3) {
        let w = WeightFn::ones(&a);
        let phis = PolyVec::uniform(phi, s);
        for (oracle, split) in [
            (energy::energy_e(&a, &w, &phis, Method::Oracle).unwrap().value,
             energy::energy_e(&a, &w, &phis, Method::Split).unwrap().value),
            (energy::energy_m(&a, &w, &phis, Method::Oracle).unwrap().value,
             energy::energy_m(&a, &w, &phis, Method::Split).unwrap().value),
            (energy::energy_j(&a, &w, &phis, Method::Oracle).unwrap().value,
             energy::energy_j(&a, &w, &phis, Method::Split).unwrap().value),
        ] {
            prop_assert_eq!(oracle, split);
        }
    }

    #[test]
    fn diagonal_gives_energy_floor(a in pos_set(), phi in pos_poly()) {
        // every permutation-paired tuple solves the balance equations
        let s = 2u32;
        let w = WeightFn::ones(&a);
        let phis = PolyVec::uniform(phi, s);
        let floor = rat_pow(&rat(a.len() as i64), s);
        prop_assert!(energy::energy_e(&a, &w, &phis, Method::Auto).unwrap().value >= floor);
        prop_assert!(energy::energy_m(&a, &w, &phis, Method::Auto).unwrap().value >= floor);
    }

    #[test]
    fn coupled_energy_is_dilation_invariant(a in pos_set(), lambda in 1i64..6) {
        // conjugating x ↦ λx turns solutions for A into solutions for λA
        let s = 2u32;
        let phi = PolyQ::identity();
        let w = WeightFn::ones(&a);
        let b = a.dilate(&rat(lambda));
        let wb = WeightFn::ones(&b);
        let phis = PolyVec::uniform(phi, s);
        let ja = energy::energy_j(&a, &w, &phis, Method::Auto).unwrap().value;
        let jb = energy::energy_j(&b, &wb, &phis, Method::Auto).unwrap().value;
        prop_assert_eq!(ja, jb);
    }

    #[test]
    fn fibers_partition_and_recombine(a in pos_set(), p_idx in 0usize..3) {
        let p = [2u64, 3, 5][p_idx];
        let fib = padic::fiber(&a, p).unwrap();
        let mut union = GroundSet::empty();
        for (_, g) in fib.fibers() {
            prop_assert!(union.is_disjoint_from(g));
            union = union.union(g);
        }
        prop_assert_eq!(union, a);
    }

    #[test]
    fn greedy_strategy_is_valid_and_no_shallower_than_exact(a in pos_set()) {
        let (q, exact) = structure::query_complexity_exact(&a).unwrap();
        let (g, greedy) = structure::query_complexity_greedy(&a).unwrap();
        structure::validate_strategy(&a, &exact).unwrap();
        structure::validate_strategy(&a, &greedy).unwrap();
        prop_assert!(g >= q);
        let vv = structure::valuation_vectors(&a).unwrap();
        let d_star = structure::skew_dimension(&vv.vectors()).unwrap();
        prop_assert!(q <= d_star + 1);
    }

    #[test]
    fn energy_is_monotone_under_supersets(a in pos_set(), extra in 40i64..60) {
        let s = 2u32;
        let bigger = a.union(&GroundSet::from_ints([extra]));
        prop_assert!(energy::plain_energy_e(&bigger, s) >= energy::plain_energy_e(&a, s));
        prop_assert!(energy::plain_energy_m(&bigger, s) >= energy::plain_energy_m(&a, s));
    }

    #[test]
    fn weight_scaling_scales_energy(a in pos_set(), c in 1i64..5) {
        // all weights scaled by c multiply a 2s-fold sum by c^(2s)
        let s = 2u32;
        let phis = PolyVec::identity(s);
        let ones = WeightFn::ones(&a);
        let scaled = WeightFn::new(a.iter().map(|x| (x.clone(), rat(c)))).unwrap();
        let base = energy::energy_e(&a, &ones, &phis, Method::Auto).unwrap().value;
        let big = energy::energy_e(&a, &scaled, &phis, Method::Auto).unwrap().value;
        prop_assert_eq!(big, rat_pow(&rat(c), 2 * s) * base);
    }

    #[test]
    fn quotient_set_symmetry(a in pos_set()) {
        // r ∈ A^{(s)}/A^{(s)} iff 1/r is
        let q = energy::quotient_set(&a, 2).unwrap();
        for r in q.iter() {
            prop_assert!(q.contains(&(Rat::from_integer(1.into()) / r)));
        }
    }
}
