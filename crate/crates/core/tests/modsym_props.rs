use hecke_core::arith::primes_up_to;
use hecke_core::dimformulas::{dim_cusp_forms, weight_step, CharKind, QuadChar, SpaceLabel};
use hecke_core::exactlinalg::IntPoly;
use hecke_core::modsym::{charpoly_hecke, delta, eta_product_series, miller_charpoly, ModularSymbolSpace};
use hecke_core::RatMatrix;
use num_bigint::BigInt;

fn levels_up_to(n: u64) -> Vec<u64> {
    let mut v = vec![1, 4];
    v.extend(primes_up_to(n));
    v.sort_unstable();
    v
}

fn labels(max_level: u64, weights: std::ops::RangeInclusive<u32>) -> Vec<SpaceLabel> {
    let mut out = Vec::new();
    for n in levels_up_to(max_level) {
        for kind in [CharKind::Trivial, CharKind::Legendre] {
            let Ok(chi) = QuadChar::new(n, kind) else { continue };
            for k in weights.clone() {
                out.push(SpaceLabel::new(n, k, chi).unwrap());
            }
        }
    }
    out
}

#[test]
fn hecke_operators_commute() {
    for label in labels(30, 2..=6) {
        let space = ModularSymbolSpace::build(label).unwrap();
        let ts: Vec<(u64, RatMatrix)> = [2u64, 3, 5, 7].iter().map(|&l| (l, space.hecke_matrix(l).unwrap())).collect();
        for (i, (l, a)) in ts.iter().enumerate() {
            for (r, b) in &ts[i + 1..] {
                assert_eq!(a.mul(b), b.mul(a), "{label}: T_{l} T_{r}");
            }
        }
    }
}

#[test]
fn charpolys_are_monic_of_dimension_degree() {
    for label in labels(23, 2..=8) {
        let dim = dim_cusp_forms(&label).unwrap() as usize;
        for l in [2u64, 3, 5] {
            let f = charpoly_hecke(label, l).unwrap();
            assert!(f.is_monic(), "{label} l={l}");
            assert_eq!(f.degree(), Some(dim), "{label} l={l}");
        }
    }
}

#[test]
fn level_one_agrees_with_q_expansions() {
    for k in (12..=26).step_by(2) {
        for l in [2u64, 3, 5, 7] {
            let ms = charpoly_hecke(SpaceLabel::trivial(1, k).unwrap(), l).unwrap();
            assert_eq!(ms, miller_charpoly(k, l, 200).unwrap(), "k={k} l={l}");
        }
    }
}

#[test]
fn known_small_spaces() {
    let dim = |n, k| ModularSymbolSpace::build(SpaceLabel::trivial(n, k).unwrap()).unwrap().cuspidal_dimension();
    assert_eq!(dim(1, 12), 1);
    assert_eq!(dim(11, 2), 1);
    assert_eq!(dim(89, 2), 7);

    // tau(2) from Delta = (E4^3 - E6^2) / 1728
    let tau2 = delta(4)[2].clone();
    let s12 = ModularSymbolSpace::build(SpaceLabel::trivial(1, 12).unwrap()).unwrap();
    assert_eq!(s12.hecke_matrix(2).unwrap(), RatMatrix::from_rows(vec![vec![tau2.clone().into()]]));

    // a_2 of eta(z)^2 eta(11z)^2 = q prod (1 - q^n)^2 (1 - q^(11n))^2
    let a2 = eta_product_series(&[(1, 2), (11, 2)], 4)[1].clone();
    assert_eq!(a2, BigInt::from(-2));
    let s2 = ModularSymbolSpace::build(SpaceLabel::trivial(11, 2).unwrap()).unwrap();
    assert_eq!(s2.hecke_matrix(2).unwrap(), RatMatrix::from_rows(vec![vec![a2.clone().into()]]));
    assert_eq!(charpoly_hecke(SpaceLabel::trivial(11, 2).unwrap(), 2).unwrap(), IntPoly::linear(a2));

    // parity mismatch and small weight give the empty product
    assert_eq!(charpoly_hecke(SpaceLabel::trivial(11, 3).unwrap(), 2).unwrap(), IntPoly::one());
    assert_eq!(charpoly_hecke(SpaceLabel::trivial(1, 10).unwrap(), 5).unwrap(), IntPoly::one());
}

#[test]
fn weight_ladders_divide_where_expected() {
    // reductions mod p at weight k divide those at k + q, for p >= 5 always and
    // for p = 2, 3 away from dimension drops and from p = 3, N = 1 mod 3
    for n in levels_up_to(30).into_iter().filter(|&n| n != 4) {
        let chi = QuadChar::trivial(n);
        for p in [2u64, 3, 5, 7] {
            if n % p == 0 || (p == 3 && n % 3 == 1 && n > 1) {
                continue;
            }
            let q = weight_step(p);
            for k in 2..=10 {
                let lo = SpaceLabel::new(n, k, chi).unwrap();
                let hi = SpaceLabel::new(n, k + q, chi).unwrap();
                if dim_cusp_forms(&hi).unwrap() < dim_cusp_forms(&lo).unwrap() {
                    continue;
                }
                for l in [2u64, 3, 5, 7] {
                    let a = charpoly_hecke(lo, l).unwrap().reduce_mod(p).unwrap();
                    let b = charpoly_hecke(hi, l).unwrap().reduce_mod(p).unwrap();
                    assert!(a.divides(&b).unwrap(), "N={n} p={p} l={l} k={k}: {a} does not divide {b}");
                }
            }
        }
    }
}

#[test]
fn mod_three_ladder_counterexample_at_level_seven() {
    // S_6(7) has T_2 polynomial (x + 10)(x^2 - 9x + 6) and S_8(7) has
    // x^3 + 9x^2 - 196x - 1284; mod 3 these are x^2 (x + 1) and x (x + 1) (x + 2)
    let lo = charpoly_hecke(SpaceLabel::trivial(7, 6).unwrap(), 2).unwrap();
    let hi = charpoly_hecke(SpaceLabel::trivial(7, 8).unwrap(), 2).unwrap();
    assert_eq!(hi, IntPoly::from_i64(&[-1284, -196, 9, 1]));
    let (a, b) = (lo.reduce_mod(3).unwrap(), hi.reduce_mod(3).unwrap());
    assert!(!a.divides(&b).unwrap());
}

#[test]
fn star_and_boundary_are_consistent() {
    for label in labels(13, 2..=5) {
        let full = ModularSymbolSpace::build_full(label).unwrap();
        let s = full.star_matrix();
        assert_eq!(s.mul(&s), RatMatrix::identity(full.dimension()), "{label}");
        // the full cuspidal space is twice the plus part
        let plus = ModularSymbolSpace::build(label).unwrap();
        assert_eq!(full.cuspidal_dimension(), 2 * plus.cuspidal_dimension(), "{label}");
    }
}
