mod common;

use common::{count_split_brute, exact_div, is_irreducible_brute, monic_polys, poly, trial_division};
use hecke_core::ffpoly::{
    count_split_polys, factor, irreducibility_certificate, is_totally_split, split_probability,
    squarefree_decomposition, FpPoly,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn any_poly(max_deg: usize) -> impl Strategy<Value = FpPoly> {
    (prop::sample::select(vec![2u64, 3, 5]), prop::collection::vec(any::<u64>(), 1..=max_deg + 1))
        .prop_map(|(p, c)| FpPoly::new(p, c).unwrap())
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn sorted_factors(f: &FpPoly, seed: u64) -> Vec<(Vec<u64>, u32)> {
    let mut v: Vec<(Vec<u64>, u32)> =
        factor(f, seed).unwrap().factors.iter().map(|(g, m)| (g.coeffs().to_vec(), *m)).collect();
    v.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn factor_round_trip_and_certificates(f in any_poly(14), seed in any::<u64>()) {
        let fac = factor(&f, seed).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        for (g, m) in &fac.factors {
            prop_assert!(*m >= 1);
            prop_assert!(g.is_monic() && g.degree().unwrap() >= 1);
            prop_assert!(irreducibility_certificate(g).unwrap());
        }
        // canonical order is strictly increasing
        for w in fac.factors.windows(2) {
            prop_assert_eq!(w[0].0.canonical_cmp(&w[1].0), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn factor_is_seed_independent(f in any_poly(12), s1 in any::<u64>(), s2 in any::<u64>()) {
        prop_assert_eq!(factor(&f, s1).unwrap(), factor(&f, s2).unwrap());
    }

    #[test]
    fn split_test_agrees_with_factor(f in any_poly(12)) {
        prop_assert_eq!(is_totally_split(&f).unwrap(), factor(&f, 1).unwrap().is_totally_split());
    }

    #[test]
    fn gcd_of_constructed_inputs(f in any_poly(5), g in any::<Vec<u64>>(), h in any::<Vec<u64>>()) {
        let p = f.modulus();
        let g = FpPoly::new(p, g.into_iter().take(5).collect()).unwrap();
        let h = FpPoly::new(p, h.into_iter().take(5).collect()).unwrap();
        prop_assume!(!g.is_zero() && !h.is_zero());
        prop_assume!(g.gcd(&h).unwrap().is_one());
        prop_assert_eq!(f.mul(&g).gcd(&f.mul(&h)).unwrap(), f.monic());
    }

    #[test]
    fn divrem_reconstructs(a in any_poly(10), b in any::<Vec<u64>>()) {
        let p = a.modulus();
        let b = FpPoly::new(p, b.into_iter().take(6).collect()).unwrap();
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn squarefree_parts_reconstruct(f in any_poly(12)) {
        let parts = squarefree_decomposition(&f).unwrap();
        let prod = parts.iter().fold(FpPoly::one(f.modulus()), |acc, (g, m)| acc.mul(&g.pow(*m as u64)));
        prop_assert_eq!(prod, f.monic());
        for (i, (g, _)) in parts.iter().enumerate() {
            prop_assert!(g.gcd(&g.derivative()).unwrap().is_one());
            for (h, _) in &parts[i + 1..] {
                prop_assert!(g.gcd(h).unwrap().is_one());
            }
        }
    }

    #[test]
    fn powmod_matches_repeated_multiplication(base in any_poly(4), e in 0u64..40, m in any_poly(5)) {
        let p = base.modulus();
        let m = FpPoly::new(p, m.coeffs().to_vec()).unwrap();
        prop_assume!(m.degree().unwrap_or(0) >= 1);
        let mut expected = FpPoly::one(p).rem(&m).unwrap();
        for _ in 0..e {
            expected = expected.mul(&base).rem(&m).unwrap();
        }
        prop_assert_eq!(base.powmod(&BigUint::from(e), &m).unwrap(), expected);
    }
}

#[test]
fn exhaustive_small_degrees_match_trial_division() {
    for (p, max_deg) in [(2u64, 6usize), (3, 4)] {
        for d in 1..=max_deg {
            for c in monic_polys(p, d) {
                let f = poly(p, &c);
                let mut oracle = trial_division(p, &c);
                oracle.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
                assert_eq!(sorted_factors(&f, 7), oracle, "p={p} f={f}");
                let fac = factor(&f, 7).unwrap();
                let brute_irreducible = is_irreducible_brute(p, &c);
                assert_eq!(fac.factors.len() == 1 && fac.factors[0].1 == 1, brute_irreducible, "p={p} f={f}");
            }
        }
    }
}

#[test]
fn worked_examples() {
    // x^2 + x = x (x + 1) over F_2
    let (q, r) = poly(2, &[0, 1, 1]).divrem(&poly(2, &[0, 1])).unwrap();
    assert_eq!((q, r), (poly(2, &[1, 1]), FpPoly::zero(2)));
    // x^3 + 2x + 1 = x (x^2 + 1) + (x + 1) over F_3
    let (q, r) = poly(3, &[1, 2, 0, 1]).divrem(&poly(3, &[1, 0, 1])).unwrap();
    assert_eq!((q, r), (poly(3, &[0, 1]), poly(3, &[1, 1])));
    assert_eq!(poly(2, &[0, 1, 1]).gcd(&poly(2, &[1, 0, 1])).unwrap(), poly(2, &[1, 1]));
    // (x + 1)^3 (x^2 + x + 1) over F_2
    let f = poly(2, &[1, 1]).pow(3).mul(&poly(2, &[1, 1, 1]));
    let parts = squarefree_decomposition(&f).unwrap();
    assert_eq!(parts, vec![(poly(2, &[1, 1, 1]), 1), (poly(2, &[1, 1]), 3)]);
    assert!(exact_div(2, &[0, 1, 1], &[1, 1]).is_some());
}

#[test]
fn split_counts_against_enumeration() {
    for (p, max_d) in [(2u64, 6usize), (3, 4), (5, 3)] {
        for d in 0..=max_d {
            assert_eq!(count_split_polys(p, d as u64).unwrap(), BigUint::from(count_split_brute(p, d)), "p={p} d={d}");
        }
    }
    for d in 0..=20u64 {
        assert_eq!(count_split_polys(2, d).unwrap(), BigUint::from(d + 1));
        assert_eq!(count_split_polys(3, d).unwrap(), BigUint::from((d + 1) * (d + 2) / 2));
    }
    assert!(count_split_polys(4, 2).is_err());
}

#[test]
fn split_probability_examples() {
    assert_eq!(split_probability(7, 0).unwrap(), BigRational::one());
    assert_eq!(split_probability(2, 1).unwrap(), BigRational::one());
    assert_eq!(split_probability(2, 7).unwrap(), BigRational::new(1.into(), 16.into()));
    for p in [2u64, 3, 5, 7] {
        let probs: Vec<BigRational> = (0..12).map(|d| split_probability(p, d).unwrap()).collect();
        assert!(probs.windows(2).all(|w| w[1] <= w[0]), "p={p}");
    }
}
