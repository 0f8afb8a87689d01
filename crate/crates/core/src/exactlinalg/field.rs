//! Minimal field abstraction so that elimination and Hessenberg reduction can
//! run over both Q and word-sized prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// F_p for an odd prime p < 2^63, elements held in Montgomery form.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
    /// -p^{-1} mod 2^64
    p_neg_inv: u64,
    /// 2^128 mod p
    r2: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 63), "modulus must be odd and below 2^63");
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        PrimeField { p, p_neg_inv: inv.wrapping_neg(), r2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_neg_inv);
        let u = (t.wrapping_add((m as u128).wrapping_mul(self.p as u128)) >> 64) as u64;
        if u >= self.p {
            u.wrapping_sub(self.p)
        } else {
            u
        }
    }

    #[inline]
    pub fn from_u64(&self, a: u64) -> u64 {
        self.redc((a % self.p) as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let r = (a as i128).rem_euclid(self.p as i128) as u64;
        self.from_u64(r)
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits");
        self.from_u64(r)
    }

    /// Reduction of a rational, `None` if the denominator vanishes mod p.
    pub fn from_rational(&self, a: &BigRational) -> Option<u64> {
        let den = self.from_bigint(a.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(&self.from_bigint(a.numer()), &self.inv(&den)))
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        self.from_u64(1)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a.wrapping_add(*b);
        if s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let (d, borrow) = a.overflowing_sub(*b);
        if borrow {
            d.wrapping_add(self.p)
        } else {
            d
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.redc((*a as u128).wrapping_mul(*b as u128))
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_roundtrip() {
        let f = PrimeField::new(4_611_686_018_427_387_847);
        for a in [0u64, 1, 2, 12345, 4_611_686_018_427_387_846] {
            assert_eq!(f.to_u64(f.from_u64(a)), a);
        }
        let a = f.from_u64(123_456_789_012);
        let b = f.from_u64(987_654_321_098);
        let expect = (123_456_789_012u128 * 987_654_321_098u128 % 4_611_686_018_427_387_847u128) as u64;
        assert_eq!(f.to_u64(f.mul(&a, &b)), expect);
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.to_u64(f.from_i64(-1)), 4_611_686_018_427_387_846);
    }

    #[test]
    fn small_field() {
        let f = PrimeField::new(7);
        let three = f.from_u64(3);
        assert_eq!(f.to_u64(f.inv(&three)), 5);
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(f.to_u64(f.from_rational(&q).unwrap()), 5);
        let bad = BigRational::new(BigInt::from(1), BigInt::from(14));
        assert!(f.from_rational(&bad).is_none());
    }
}
