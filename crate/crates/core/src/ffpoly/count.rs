use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Number of monic degree-`d` polynomials over F_p that split into linear
/// factors: multisets of `d` roots drawn from `p` elements, C(p + d - 1, d).
pub fn count_split_polys(p: u64, d: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    // C(n, d) built incrementally; each partial product is itself a binomial
    let mut acc = BigUint::one();
    for i in 1..=d {
        acc = acc * BigUint::from(p - 1 + i) / BigUint::from(i);
    }
    Ok(acc)
}

/// Probability that a uniformly random monic polynomial of degree `d` over F_p
/// splits completely.
pub fn split_probability(p: u64, d: u64) -> Result<BigRational> {
    let count = count_split_polys(p, d)?;
    let total = BigUint::from(p).pow(d as u32);
    Ok(BigRational::new(BigInt::from(count), BigInt::from(total)))
}
