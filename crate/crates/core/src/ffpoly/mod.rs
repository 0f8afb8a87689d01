//! Polynomials over prime fields F_p.
//!
//! Reduced Hecke polynomials live here, together with the complete
//! factorisation pipeline and the counting functions behind the random-model
//! splitting heuristic.

mod count;
mod factor;

pub use count::{count_split_polys, split_probability};
pub use factor::{
    factor, irreducibility_certificate, is_totally_split, squarefree_decomposition, Factorization,
};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{add_mod, inv_mod, is_prime, mul_mod, sub_mod};
use crate::error::{Error, Result};

/// A polynomial with coefficients in F_p, stored in ascending degree with
/// trailing zeros stripped. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds a polynomial from ascending coefficients, reducing each one mod `p`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::from_raw(p, coeffs.into_iter().map(|c| c % p).collect()))
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = p as i128;
        Ok(Self::from_raw(
            p,
            coeffs.iter().map(|&c| (c as i128).rem_euclid(m) as u64).collect(),
        ))
    }

    /// Reduction of an integer polynomial.
    pub fn from_bigints(p: u64, coeffs: &[BigInt]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = BigInt::from(p);
        let reduced = coeffs
            .iter()
            .map(|c| {
                let mut r = c % &m;
                if r < BigInt::zero() {
                    r += &m;
                }
                r.to_u64().expect("residue fits in u64")
            })
            .collect();
        Ok(Self::from_raw(p, reduced))
    }

    /// Caller guarantees `p` prime and all coefficients already reduced.
    pub(crate) fn from_raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1 % p] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::monomial(p, 1, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_raw(p, vec![c % p])
    }

    pub fn monomial(p: u64, c: u64, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c % p;
        Self::from_raw(p, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p).expect("nonzero residue mod prime");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        Self::from_raw(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        Self::from_raw(p, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                add_mod(a, b, p)
            })
            .collect();
        Self::from_raw(p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                sub_mod(a, b, p)
            })
            .collect();
        Self::from_raw(p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return Self::zero(p);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if p < (1 << 32) {
            // products fit in 64 bits, so a u128 accumulator never overflows
            let mut acc = vec![0u128; n];
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += (a * b) as u128;
                }
            }
            Self::from_raw(p, acc.into_iter().map(|c| (c % p as u128) as u64).collect())
        } else {
            let mut acc = vec![0u64; n];
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (j, &b) in other.coeffs.iter().enumerate() {
                    acc[i + j] = add_mod(acc[i + j], mul_mod(a, b, p), p);
                }
            }
            Self::from_raw(p, acc)
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        self.check_same(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv = inv_mod(b.lead(), p).expect("nonzero residue mod prime");
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + db], inv, p);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[i + j] = sub_mod(r[i + j], mul_mod(c, bj, p), p);
            }
        }
        r.truncate(db);
        Ok((Self::from_raw(p, q), Self::from_raw(p, r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Result<Option<Self>> {
        let (q, r) = self.divrem(b)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mulmod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul(other).rem(modulus)
    }

    /// `self^exponent mod modulus` by square-and-multiply.
    pub fn powmod(&self, exponent: &BigUint, modulus: &Self) -> Result<Self> {
        self.check_same(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let base = self.rem(modulus)?;
        let mut acc = Self::one(self.p).rem(modulus)?;
        for i in (0..exponent.bits()).rev() {
            acc = acc.mulmod(&acc, modulus)?;
            if exponent.bit(i) {
                acc = acc.mulmod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn powmod_u64(&self, exponent: u64, modulus: &Self) -> Result<Self> {
        self.powmod(&BigUint::from(exponent), modulus)
    }

    /// Canonical order: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
