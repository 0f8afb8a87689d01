use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::FpPoly;
use crate::error::{Error, Result};

/// `unit * prod(factor^mult)`, factors monic irreducible and canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub p: u64,
    pub unit: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::constant(self.p, self.unit), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    pub fn is_totally_split(&self) -> bool {
        self.factors.iter().all(|(g, _)| g.degree() == Some(1))
    }

    /// First factor of degree at least 2 in canonical order.
    pub fn first_nonlinear(&self) -> Option<&FpPoly> {
        self.factors.iter().map(|(g, _)| g).find(|g| g.degree().unwrap_or(0) >= 2)
    }
}

/// Squarefree decomposition of `monic(f)`: pairwise coprime squarefree parts
/// with distinct multiplicities, sorted by multiplicity.
pub fn squarefree_decomposition(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out)?;
    out.sort_by_key(|(_, m)| *m);
    Ok(out)
}

fn sqf_rec(f: &FpPoly, scale: u32, out: &mut Vec<(FpPoly, u32)>) -> Result<()> {
    let p = f.modulus();
    if f.degree() == Some(0) {
        return Ok(());
    }
    let df = f.derivative();
    let mut c = f.gcd(&df)?;
    let mut w = f.div_exact(&c)?.expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let fac = w.div_exact(&y)?.expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.div_exact(&w)?.expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        // what remains is a p-th power; coefficients are fixed by Frobenius
        let root: Vec<u64> = c.coeffs().iter().step_by(p as usize).copied().collect();
        sqf_rec(&FpPoly::from_raw(p, root), scale * p as u32, out)?;
    }
    Ok(())
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &FpPoly) -> Result<Vec<(FpPoly, usize)>> {
    let p = f.modulus();
    let x = FpPoly::x(p);
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((rest.clone(), deg));
            }
            break;
        }
        d += 1;
        h = h.powmod_u64(p, &rest)?;
        let g = h.sub(&x).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?.expect("gcd divides");
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    Ok(out)
}

fn random_poly(p: u64, below: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    FpPoly::from_raw(p, (0..below).map(|_| rng.gen_range(0..p)).collect())
}

/// Splits `f`, a product of distinct monic irreducibles of degree `d`.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) -> Result<()> {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return Ok(());
    }
    let p = f.modulus();
    let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) / 2u32;
    loop {
        let a = random_poly(p, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let candidate = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1)) lands in F_2 on each component
            let mut t = a.clone();
            let mut sq = a;
            for _ in 1..d {
                sq = sq.mulmod(&sq, f)?;
                t = t.add(&sq);
            }
            t
        } else {
            a.powmod(&exponent, f)?.sub(&FpPoly::one(p))
        };
        if candidate.is_zero() {
            continue;
        }
        let g = candidate.gcd(f)?;
        let dg = g.degree().expect("nonzero");
        if dg > 0 && dg < n {
            let h = f.div_exact(&g)?.expect("gcd divides");
            equal_degree(&g, d, rng, out)?;
            equal_degree(&h, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Complete factorisation over F_p: squarefree, then distinct-degree, then
/// randomised equal-degree splitting. The output does not depend on `seed`.
pub fn factor(f: &FpPoly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for (block, d) in distinct_degree(&part)? {
            let mut irreducibles = Vec::new();
            equal_degree(&block, d, &mut rng, &mut irreducibles)?;
            factors.extend(irreducibles.into_iter().map(|g| (g, mult)));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| a.canonical_cmp(b).then(ma.cmp(mb)));
    Ok(Factorization { p, unit: f.lead(), factors })
}

/// True iff every irreducible factor of `f` is linear, i.e. the radical of `f`
/// divides `x^p - x`.
pub fn is_totally_split(f: &FpPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.modulus();
    if f.degree() == Some(0) {
        return Ok(true);
    }
    let radical = squarefree_decomposition(f)?
        .iter()
        .fold(FpPoly::one(p), |acc, (g, _)| acc.mul(g));
    let x = FpPoly::x(p);
    let frob = x.powmod_u64(p, &radical)?;
    Ok(frob == x.rem(&radical)?)
}

/// Rabin's test: `g` of degree `d` is irreducible iff `g | x^(p^d) - x` and
/// `gcd(g, x^(p^e) - x) = 1` for every proper divisor `e` of `d`.
pub fn irreducibility_certificate(g: &FpPoly) -> Result<bool> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(false);
    }
    let p = g.modulus();
    let g = g.monic();
    let x = FpPoly::x(p);
    let mut frob = x.rem(&g)?;
    for e in 1..=d {
        frob = frob.powmod_u64(p, &g)?;
        let diff = frob.sub(&x);
        if e < d && d % e == 0 && !g.gcd(&diff)?.is_one() {
            return Ok(false);
        }
        if e == d {
            return Ok(diff.rem(&g)?.is_zero());
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let x = poly(2, &[0, 1]);
        assert_eq!(squarefree_decomposition(&x.mul(&x)).unwrap(), vec![(x.clone(), 2)]);

        let f = poly(5, &[1, 2, 0, 1]);
        let g = f.monic();
        assert_eq!(squarefree_decomposition(&f).unwrap(), vec![(g, 1)]);

        // (x+1)^3 (x^2+x+1) over F_2
        let a = poly(2, &[1, 1]);
        let b = poly(2, &[1, 1, 1]);
        let f = a.pow(3).mul(&b);
        assert_eq!(squarefree_decomposition(&f).unwrap(), vec![(b, 1), (a, 3)]);

        assert!(squarefree_decomposition(&FpPoly::zero(3)).is_err());
    }

    #[test]
    fn squarefree_handles_pth_powers() {
        // (x^2 + 1)^3 x^2 over F_3: the cube is invisible to the derivative
        let a = poly(3, &[1, 0, 1]);
        let x = poly(3, &[0, 1]);
        let f = a.pow(3).mul(&x).mul(&x);
        let parts = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts, vec![(x, 2), (a, 3)]);
    }

    #[test]
    fn factor_examples() {
        let f = poly(2, &[1, 0, 1]);
        let fac = factor(&f, 1).unwrap();
        assert_eq!(fac.unit, 1);
        assert_eq!(fac.factors, vec![(poly(2, &[1, 1]), 2)]);

        let g = poly(2, &[1, 1, 1]);
        assert_eq!(factor(&g, 9).unwrap().factors, vec![(g, 1)]);

        let h = poly(7, &[3, 5, 0, 2, 6, 1, 4]);
        let fh = factor(&h, 3).unwrap();
        assert_eq!(fh.expand(), h);
        assert_eq!(fh.unit, 4);
        assert!(factor(&FpPoly::zero(7), 0).is_err());
    }

    #[test]
    fn equal_degree_in_characteristic_two() {
        // the two irreducible cubics over F_2
        let a = poly(2, &[1, 1, 0, 1]);
        let b = poly(2, &[1, 0, 1, 1]);
        let f = a.mul(&b);
        for seed in 0..20 {
            let fac = factor(&f, seed).unwrap();
            assert_eq!(fac.factors, vec![(a.clone(), 1), (b.clone(), 1)]);
        }
    }

    #[test]
    fn split_examples() {
        assert!(is_totally_split(&poly(2, &[0, 1, 1])).unwrap());
        assert!(!is_totally_split(&poly(2, &[1, 1, 1])).unwrap());
        assert!(is_totally_split(&FpPoly::one(3)).unwrap());
        assert!(is_totally_split(&poly(3, &[1, 1]).pow(9)).unwrap());
        assert!(is_totally_split(&FpPoly::zero(3)).is_err());
    }

    #[test]
    fn certificate() {
        assert!(irreducibility_certificate(&poly(2, &[1, 1, 1])).unwrap());
        assert!(!irreducibility_certificate(&poly(2, &[1, 0, 1])).unwrap());
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2
        assert!(!irreducibility_certificate(&poly(2, &[1, 0, 1, 0, 1])).unwrap());
        let f = poly(3, &[2, 1, 0, 0, 1]);
        assert_eq!(irreducibility_certificate(&f).unwrap(), is_irreducible_brute(&f));
    }

    fn is_irreducible_brute(f: &FpPoly) -> bool {
        let p = f.modulus();
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            for code in 0..p.pow(d as u32) {
                let mut c = Vec::with_capacity(d + 1);
                let mut r = code;
                for _ in 0..d {
                    c.push(r % p);
                    r /= p;
                }
                c.push(1);
                if f.rem(&FpPoly::from_raw(p, c)).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
