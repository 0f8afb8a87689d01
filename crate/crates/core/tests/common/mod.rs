//! Brute-force oracles shared by the integration tests. They use their own
//! plain-vector polynomial arithmetic rather than the library's.

#![allow(dead_code)]

use hecke_core::ffpoly::FpPoly;

/// Every monic polynomial of degree `d` over F_p, ascending coefficients.
pub fn monic_polys(p: u64, d: usize) -> Vec<Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(idx % p);
                idx /= p;
            }
            c.push(1);
            c
        })
        .collect()
}

/// `a / b` for monic `b` when the division is exact.
pub fn exact_div(p: u64, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] % p;
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p * p - c * bj % p) % p;
        }
    }
    r.iter().all(|&x| x % p == 0).then_some(q)
}

pub fn is_irreducible_brute(p: u64, f: &[u64]) -> bool {
    let d = f.len() - 1;
    (1..=d / 2).all(|e| monic_polys(p, e).iter().all(|g| exact_div(p, f, g).is_none()))
}

/// Factorization of a monic `f` into (monic irreducible, multiplicity) by
/// trial division over all monic polynomials in increasing degree.
pub fn trial_division(p: u64, f: &[u64]) -> Vec<(Vec<u64>, u32)> {
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.len() > 1 {
        if 2 * d > rest.len() - 1 {
            // what is left has no factor of degree <= half its own, so it is irreducible
            out.push((rest.clone(), 1));
            break;
        }
        for g in monic_polys(p, d) {
            let mut mult = 0;
            while let Some(q) = exact_div(p, &rest, &g) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    out
}

/// Number of monic degree-d polynomials over F_p with only linear factors,
/// by enumeration.
pub fn count_split_brute(p: u64, d: usize) -> u64 {
    monic_polys(p, d)
        .iter()
        .filter(|f| trial_division(p, f).iter().all(|(g, _)| g.len() == 2))
        .count() as u64
}

pub fn poly(p: u64, c: &[u64]) -> FpPoly {
    FpPoly::new(p, c.to_vec()).unwrap()
}
