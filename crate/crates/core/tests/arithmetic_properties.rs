mod common;

use std::collections::BTreeSet;

use common::field;
use drinfeld_core::carlitz::{carlitz_rho, Carlitz};
use drinfeld_core::{binom_mod_p, PolyA, RatK, TSeries};
use proptest::prelude::*;

fn arb_poly(p: u32, len: usize) -> impl Strategy<Value = PolyA> {
    proptest::collection::vec(0..p, 0..len).prop_map(move |c| PolyA::from_residues(field(p), c))
}

fn arb_ratk(p: u32) -> impl Strategy<Value = RatK> {
    (arb_poly(p, 6), arb_poly(p, 5)).prop_map(move |(n, d)| {
        let d = if d.is_zero() { PolyA::one(field(p)) } else { d };
        RatK::new(n, d).unwrap()
    })
}

fn arb_series(p: u32, prec: usize) -> impl Strategy<Value = TSeries> {
    proptest::collection::vec((0..prec, arb_ratk(p)), 0..10)
        .prop_map(move |terms| TSeries::from_terms(field(p), prec, terms))
}

fn arb_monic(p: u32, max_deg: usize) -> impl Strategy<Value = PolyA> {
    (0..=max_deg).prop_flat_map(move |d| {
        proptest::collection::vec(0..p, d).prop_map(move |mut c| {
            c.push(1);
            PolyA::from_residues(field(p), c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_axioms(a in arb_ratk(3), b in arb_ratk(3), c in arb_ratk(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        // Canonical form: monic denominator, coprime parts, rebuilding is the identity.
        prop_assert!(a.den().is_monic());
        prop_assert!(a.num().gcd(a.den()).is_one() || a.is_zero());
        prop_assert_eq!(RatK::new(a.num().clone(), a.den().clone()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_ring_axioms(f in arb_series(3, 50), g in arb_series(3, 50), h in arb_series(3, 50)) {
        let fg = f.mul(&g).unwrap();
        prop_assert_eq!(fg.clone(), g.mul(&f).unwrap());
        prop_assert_eq!(fg.mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        let lhs = f.mul(&g.add(&h)).unwrap();
        let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap());
        prop_assert!(lhs.agrees_to(&rhs, lhs.prec().min(rhs.prec())));
        prop_assert_eq!(f.mul(&f).unwrap(), f.pow(2).unwrap());
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn unit_inverse_round_trip(f in arb_series(5, 40), c in 1u32..5) {
        let unit = f.shift(1).truncate(40).add(&TSeries::monomial(RatK::constant(field(5), c as i64), 0, 40));
        let inv = unit.inv().unwrap();
        prop_assert_eq!(unit.mul(&inv).unwrap(), TSeries::one(field(5), 40));
    }

    #[test]
    fn json_round_trip(f in arb_series(5, 30)) {
        let text = f.to_json_string();
        prop_assert_eq!(TSeries::from_json_str(&text).unwrap(), f.clone());
        prop_assert_eq!(TSeries::from_json_str(&text).unwrap().to_json_string(), text);
    }

    #[test]
    fn frobenius_is_additive(a in arb_poly(5, 10), b in arb_poly(5, 10)) {
        prop_assert_eq!((&a + &b).pow(5), &a.pow(5) + &b.pow(5));
    }

    #[test]
    fn carlitz_action_is_multiplicative(a in arb_monic(3, 3), b in arb_monic(3, 3)) {
        let lhs = carlitz_rho(&(&a * &b)).unwrap();
        let rhs = carlitz_rho(&a).unwrap().compose(&carlitz_rho(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn lucas_binomials_match_pascal_triangle() {
    for p in [2u32, 3, 5, 7, 11] {
        let f = field(p);
        let mut row = vec![1u32];
        for n in 0..=64u64 {
            for (k, &expected) in row.iter().enumerate() {
                assert_eq!(binom_mod_p(&f, n, k as u64), expected, "C({n},{k}) mod {p}");
            }
            let mut next = vec![1u32; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % p;
            }
            row = next;
        }
    }
}

#[test]
fn monic_enumeration_is_complete() {
    for p in [3u32, 5] {
        let f = field(p);
        for d in 0..=3 {
            let all = f.enumerate_monic(d);
            assert_eq!(all.len(), (p as usize).pow(d as u32));
            assert!(all.iter().all(|a| a.is_monic() && a.degree() == Some(d)));
            let distinct: BTreeSet<Vec<u32>> = all.iter().map(|a| a.coeffs().to_vec()).collect();
            assert_eq!(distinct.len(), all.len());
        }
    }
}

#[test]
fn goss_polynomial_invariants() {
    for p in [3u32, 5] {
        let f = field(p);
        let c = Carlitz::new(f);
        for n in 1..=30usize {
            let g = c.goss_poly(n).unwrap();
            assert_eq!(g.degree(), n);
            assert!(g.coeff(n).unwrap().is_one(), "G_{n} monic");
            assert!(g.coeff(0).is_none(), "G_{n} has no constant term");
            for (j, _) in g.terms() {
                assert_eq!((n - j) % (p as usize - 1), 0, "q = {p}: G_{n} has X^{j}");
            }
        }
        for n in 1..=6usize {
            let prec = p as usize * n + 1;
            let lhs = c.goss_poly(p as usize * n).unwrap().to_series(f, prec);
            let rhs = c.goss_poly(n).unwrap().to_series(f, prec).pow(p as u64).unwrap().truncate(prec);
            assert_eq!(lhs, rhs, "q = {p}: G_(pn) = G_n^p at n = {n}");
        }
    }
}

/// t_a for a = θ + c over F_5 by long division of t^5 / (1 + a t^4).
#[test]
fn t_a_against_long_division() {
    let f5 = field(5);
    let c = Carlitz::new(f5);
    for shift in 0..5i64 {
        let a = &PolyA::theta(f5) + &PolyA::constant(f5, shift);
        let prec = 60;
        let mut expected = Vec::new();
        let mut k = 0;
        while 5 + 4 * k < prec {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            expected.push((5 + 4 * k, RatK::from_poly(a.pow(k as u64).scale(f5.reduce(sign)))));
            k += 1;
        }
        assert_eq!(c.t_a_series(&a, prec).unwrap(), TSeries::from_terms(f5, prec, expected));
    }
}

/// Summing over one more degree of monic polynomials never changes the
/// coefficients already certified.
#[test]
fn a_expansion_truncation_is_safe() {
    for (p, n, w, prec) in [(3u32, 1usize, 3u64, 60usize), (3, 4, 18, 60), (5, 1, 5, 80), (5, 2, 8, 80)] {
        let c = Carlitz::new(field(p));
        let base = c.a_expansion(n, w, prec).unwrap();
        let mut d = 0;
        while (p as usize).pow(d as u32 + 1) < prec {
            d += 1;
        }
        let wider = c.a_expansion_to_degree(n, w, prec, d + 1).unwrap();
        assert_eq!(base, wider, "q = {p}, n = {n}, w = {w}");
    }
}
