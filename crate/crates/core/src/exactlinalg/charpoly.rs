use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, PrimeField, Rationals};
use super::intpoly::IntPoly;
use super::matrix::RatMatrix;
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Reduces a square matrix (given as rows) to upper Hessenberg form by
/// similarity transforms and returns its characteristic polynomial, ascending.
pub fn hessenberg_charpoly<F: Field>(field: &F, mut h: Vec<Vec<F::Elem>>) -> Vec<F::Elem> {
    let n = h.len();
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&i| !field.is_zero(&h[i][c])) else {
            continue;
        };
        if piv != c + 1 {
            h.swap(piv, c + 1);
            for row in h.iter_mut() {
                row.swap(piv, c + 1);
            }
        }
        let inv = field.inv(&h[c + 1][c]);
        // all row eliminations first, then the inverse column operations;
        // together they form one similarity transform
        let mut mults: Vec<(usize, F::Elem)> = Vec::new();
        for r in c + 2..n {
            if field.is_zero(&h[r][c]) {
                continue;
            }
            let u = field.mul(&h[r][c], &inv);
            let (top, bottom) = h.split_at_mut(r);
            let src = &top[c + 1];
            let dst = &mut bottom[0];
            for (x, s) in dst.iter_mut().zip(src).skip(c) {
                *x = field.sub(x, &field.mul(&u, s));
            }
            mults.push((r, u));
        }
        if mults.is_empty() {
            continue;
        }
        for row in h.iter_mut() {
            let mut acc = row[c + 1].clone();
            for (r, u) in &mults {
                acc = field.add(&acc, &field.mul(u, &row[*r]));
            }
            row[c + 1] = acc;
        }
    }

    // p[m] is the characteristic polynomial of the leading m x m block
    let mut polys: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![field.zero(); m + 1];
        let diag = &h[m - 1][m - 1];
        for (j, c) in prev.iter().enumerate() {
            next[j + 1] = field.add(&next[j + 1], c);
            next[j] = field.sub(&next[j], &field.mul(diag, c));
        }
        let mut t = field.one();
        for i in 1..m {
            t = field.mul(&t, &h[m - i][m - i - 1]);
            if field.is_zero(&t) {
                break;
            }
            let coef = field.mul(&t, &h[m - i - 1][m - 1]);
            if field.is_zero(&coef) {
                continue;
            }
            for (j, c) in polys[m - i - 1].iter().enumerate() {
                next[j] = field.sub(&next[j], &field.mul(&coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the empty product")
}

/// Characteristic polynomial with exact rational arithmetic throughout.
pub fn charpoly_rational(m: &RatMatrix) -> Result<Vec<BigRational>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(hessenberg_charpoly(&Rationals, m.to_rows()))
}

/// Integer characteristic polynomial `det(xI - m)`.
///
/// The computation is multimodular: Hessenberg reduction over several 62-bit
/// prime fields, CRT reconstruction up to a Hadamard-type bound on the
/// coefficients, and two further primes as a consistency check. A rational
/// (non-integral) characteristic polynomial is reported as `NonIntegral`.
pub fn charpoly(m: &RatMatrix) -> Result<IntPoly> {
    charpoly_with_root_bound(m, None)
}

/// As [`charpoly`], with an optional a priori bound on the absolute values of
/// the eigenvalues. When given, the coefficient bound used for reconstruction
/// is the smaller of the Hadamard-type bound and (1 + root_bound)^n.
pub fn charpoly_with_root_bound(m: &RatMatrix, root_bound: Option<&BigUint>) -> Result<IntPoly> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut bound = coefficient_bound(m);
    if let Some(b) = root_bound {
        let by_roots = (b + 1u32).pow(n as u32);
        if by_roots < bound {
            bound = by_roots;
        }
    }
    let target = &bound * 2u32 + 1u32;

    let scaled = ScaledMatrix::new(m);
    let mut primes = PrimeStream::new();
    let mut modulus = BigInt::one();
    let mut values = vec![BigInt::zero(); n + 1];
    while modulus.magnitude() <= &target {
        let q = primes.next_prime();
        let Some(res) = scaled.charpoly_mod(q) else { continue };
        crt_accumulate(&mut values, &mut modulus, &res, q);
    }
    let half = &modulus / 2;
    for v in values.iter_mut() {
        if *v > half {
            *v -= &modulus;
        }
    }
    if let Some(deg) = values.iter().position(|v| v.magnitude() > &bound) {
        return Err(Error::NonIntegral { degree: deg });
    }
    let mut checked = 0;
    while checked < 2 {
        let q = primes.next_prime();
        let Some(res) = scaled.charpoly_mod(q) else { continue };
        let field = PrimeField::new(q);
        for (deg, (v, r)) in values.iter().zip(&res).enumerate() {
            if field.to_u64(field.from_bigint(v)) != *r {
                return Err(Error::NonIntegral { degree: deg });
            }
        }
        checked += 1;
    }
    Ok(IntPoly::new(values))
}

/// The matrix scaled to integers by a common denominator, with entries kept
/// as little-endian 64-bit limbs for fast reduction modulo word primes.
struct ScaledMatrix {
    n: usize,
    den: Vec<u64>,
    entries: Vec<(bool, Vec<u64>)>,
}

impl ScaledMatrix {
    fn new(m: &RatMatrix) -> Self {
        let den = m.entries().iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let entries = m
            .entries()
            .iter()
            .map(|e| {
                let scaled = e.numer() * (&den / e.denom());
                (scaled.sign() == num_bigint::Sign::Minus, scaled.magnitude().to_u64_digits())
            })
            .collect();
        ScaledMatrix { n: m.nrows(), den: den.magnitude().to_u64_digits(), entries }
    }

    /// Residues (in standard form) of the characteristic polynomial of the
    /// original matrix modulo `q`, or `None` if the denominator vanishes mod `q`.
    fn charpoly_mod(&self, q: u64) -> Option<Vec<u64>> {
        let field = PrimeField::new(q);
        let den = field.from_u64(limbs_mod(&self.den, q));
        if den == 0 {
            return None;
        }
        let rows: Vec<Vec<u64>> = self
            .entries
            .chunks(self.n)
            .map(|row| {
                row.iter()
                    .map(|(neg, limbs)| {
                        let r = field.from_u64(limbs_mod(limbs, q));
                        if *neg {
                            field.neg(&r)
                        } else {
                            r
                        }
                    })
                    .collect()
            })
            .collect();
        let cp = hessenberg_charpoly(&field, rows);
        // det(xI - A/D) = D^-n det(D x I - A): coefficient i picks up D^-(n-i)
        let inv = field.inv(&den);
        let mut scale = field.one();
        let mut out = vec![0; self.n + 1];
        for i in (0..=self.n).rev() {
            out[i] = field.to_u64(field.mul(&cp[i], &scale));
            scale = field.mul(&scale, &inv);
        }
        Some(out)
    }
}

fn limbs_mod(limbs: &[u64], q: u64) -> u64 {
    limbs.iter().rev().fold(0u64, |r, &d| ((((r as u128) << 64) | d as u128) % q as u128) as u64)
}

fn crt_accumulate(values: &mut [BigInt], modulus: &mut BigInt, residues: &[u64], q: u64) {
    let qb = BigInt::from(q);
    let m_mod_q = modulus.mod_floor(&qb);
    let m_inv = m_mod_q.modpow(&BigInt::from(q - 2), &qb);
    for (v, &r) in values.iter_mut().zip(residues) {
        let cur = v.mod_floor(&qb);
        let diff = (BigInt::from(r) - cur).mod_floor(&qb);
        let t = (diff * &m_inv).mod_floor(&qb);
        if !t.is_zero() {
            *v += t * &*modulus;
        }
    }
    *modulus *= qb;
}

/// Upper bound on |c_i| for every coefficient of `det(xI - m)`.
///
/// Each coefficient is a signed sum of principal minors; Hadamard bounds a
/// minor on rows S by the product of those rows' Euclidean norms, and summing
/// over all S gives prod_j (1 + |row_j|).
fn coefficient_bound(m: &RatMatrix) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m.nrows() {
        let row = m.row(i);
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
            .magnitude()
            .clone();
        let mut sq = BigUint::zero();
        for e in row {
            if e.is_zero() {
                continue;
            }
            let scaled = (e.numer().magnitude() * &lcm) / e.denom().magnitude();
            sq += &scaled * &scaled;
        }
        // ceil(sqrt(sq)) / lcm bounds the norm of the row
        let mut root = sq.sqrt();
        if &root * &root < sq {
            root += 1u32;
        }
        num *= &lcm + root;
        den *= lcm;
    }
    num.div_ceil(&den)
}

/// Descending stream of primes just below 2^62.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return c;
            }
        }
    }
}

/// Converts an exact rational polynomial with integral coefficients to `IntPoly`.
pub fn rational_to_intpoly(coeffs: &[BigRational]) -> Result<IntPoly> {
    let mut out = Vec::with_capacity(coeffs.len());
    for (deg, c) in coeffs.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegral { degree: deg });
        }
        out.push(c.to_integer());
    }
    Ok(IntPoly::new(out))
}
