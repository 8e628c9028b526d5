mod common;

use common::field;
use drinfeld_core::eigencoeff::{
    b_sigma, b_sigma_sum, is_symmetric, multiset_of, specialize_solution, u_set_count, universal_solution,
    vanishing_predicate, Multiset,
};
use drinfeld_core::{Error, PolyA};
use itertools::Itertools;
use proptest::prelude::*;

fn arb_multiset(len: std::ops::RangeInclusive<usize>, max_entry: u32) -> impl Strategy<Value = Multiset> {
    proptest::collection::vec(0..=max_entry, len).prop_map(Multiset::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_and_index_round_trip(nu in arb_multiset(0..=4, 6), q in prop::sample::select(vec![3u32, 5, 7])) {
        let text = nu.to_string();
        prop_assert_eq!(text.parse::<Multiset>().unwrap(), nu.clone());
        prop_assert!(nu.entries().windows(2).all(|w| w[0] >= w[1]));
        let n = nu.index_of(q).unwrap();
        let expected = 1 + nu.entries().iter().map(|&e| (q as u64).pow(e)).sum::<u64>();
        prop_assert_eq!(n, expected);
        // Base-q digits sum to at most q − 1 exactly when ν is recoverable from n.
        if !nu.is_empty() && nu.len() < q as usize {
            prop_assert_eq!(multiset_of(n, q).unwrap(), nu);
        }
    }

    #[test]
    fn universal_solution_is_symmetric_and_translation_invariant(nu in arb_multiset(1..=3, 3)) {
        let f5 = field(5);
        let sol = universal_solution(f5, &nu).unwrap();
        prop_assert!(is_symmetric(&sol));
        prop_assert!(sol.d1().is_zero());
    }

    #[test]
    fn specialization_is_the_symmetrized_block_sum(nu in arb_multiset(1..=3, 3), n in arb_multiset(3..=3, 3), len in 1usize..=3) {
        let f5 = field(5);
        let nu = Multiset::new(nu.entries()[..len.min(nu.len())].to_vec());
        let n = Multiset::new(n.entries()[..nu.len()].to_vec());
        let sol = universal_solution(f5, &nu).unwrap();
        let lhs = specialize_solution(&sol, &n).unwrap();
        // Oracle: sum B^σ over all orderings, divided by ℓ!.
        let ell = nu.len();
        let mut total = PolyA::zero(f5);
        for sigma in (0..ell).permutations(ell) {
            total = &total + &b_sigma(f5, &nu, &n, &sigma).unwrap();
        }
        let inv_fact = f5.inv(f5.factorial(ell as u64)).unwrap();
        prop_assert_eq!(lhs, total.scale(inv_fact));
        prop_assert_eq!(total.is_zero(), vanishing_predicate(&nu, &n).unwrap());
        prop_assert_eq!(b_sigma_sum(f5, &nu, &n).unwrap(), total);
    }

    #[test]
    fn admissible_u_sets_are_prime_to_p(nu in arb_multiset(1..=4, 4), n in arb_multiset(4..=4, 4)) {
        let f5 = field(5);
        let n = Multiset::new(n.entries()[..nu.len()].to_vec());
        match u_set_count(f5, &nu, &n) {
            Ok(count) => {
                prop_assert!(!vanishing_predicate(&nu, &n).unwrap());
                prop_assert!(count % 5 != 0);
            }
            Err(_) => prop_assert!(vanishing_predicate(&nu, &n).unwrap()),
        }
    }
}

#[test]
fn length_limits() {
    let f3 = field(3);
    let nu: Multiset = "{1,1,1}".parse().unwrap();
    assert!(matches!(
        drinfeld_core::eigencoeff::closed_form_coeff(f3, &nu, &Multiset::zeros(3), &drinfeld_core::RatK::one(f3)),
        Err(Error::FactorialVanishes { .. })
    ));
    let short: Multiset = "{1}".parse().unwrap();
    assert!(matches!(b_sigma_sum(f3, &nu, &short), Err(Error::LengthMismatch(..))));
    assert!("{1,x}".parse::<Multiset>().is_err());
}

#[test]
fn repeated_entry_example() {
    // u_set_count for ν = N = {1,1}: both orderings of the blocks survive.
    let f5 = field(5);
    let m: Multiset = "{1,1}".parse().unwrap();
    assert_eq!(u_set_count(f5, &m, &m).unwrap(), 2);
}
