//! Closed-form dimensions of S_k(Gamma_0(N), chi) (Cohen-Oesterle), the
//! Sturm bound, and the degree bound M on the incremental factors.

mod character;

pub use character::{CharKind, QuadChar, SpaceLabel};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// [SL_2(Z) : Gamma_0(N)] = N prod_{r | N} (1 + 1/r).
pub fn gamma0_index(level: u64) -> u64 {
    factorize(level).iter().fold(level, |acc, &(r, _)| acc / r * (r + 1))
}

/// floor(k [SL_2(Z) : Gamma_0(N)] / 12)
pub fn sturm_bound(level: u64, weight: u32) -> u64 {
    weight as u64 * gamma0_index(level) / 12
}

/// q = p - 1 for odd p, q = 2 for p = 2.
pub fn weight_step(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        (p - 1) as u32
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn local_lambda(r: u32, s: u32, p: u64) -> i64 {
    let p = p as i64;
    if 2 * s <= r {
        if r.is_multiple_of(2) {
            let h = r / 2;
            p.pow(h) + p.pow(h - 1)
        } else {
            2 * p.pow((r - 1) / 2)
        }
    } else {
        2 * p.pow(r - s)
    }
}

fn gamma4(k: u32) -> BigRational {
    match k % 4 {
        2 => rat(-1, 4),
        0 => rat(1, 4),
        _ => BigRational::zero(),
    }
}

fn gamma3(k: u32) -> BigRational {
    match k % 3 {
        2 => rat(-1, 3),
        0 => rat(1, 3),
        _ => BigRational::zero(),
    }
}

/// dim_C S_k(Gamma_0(N), chi) for k >= 2.
pub fn dim_cusp_forms(label: &SpaceLabel) -> Result<u64> {
    let k = label.weight;
    if k < 2 {
        return Err(Error::WeightTooSmall(k));
    }
    if !label.parity_ok() {
        return Ok(0);
    }
    let n = label.level;
    let chi = label.chi;
    let cond = chi.conductor();

    let mut dim = rat((k - 1) as i64, 12) * BigInt::from(gamma0_index(n));

    let lambda: i64 = factorize(n)
        .iter()
        .map(|&(p, r)| {
            let s = factorize(cond).iter().find(|(q, _)| *q == p).map_or(0, |&(_, e)| e);
            local_lambda(r, s, p)
        })
        .product();
    dim -= rat(lambda, 2);

    let nn = n as i64;
    let sum4: i64 = (0..nn).filter(|x| (x * x + 1) % nn == 0).map(|x| chi.eval(x)).sum();
    let sum3: i64 = (0..nn).filter(|x| (x * x + x + 1) % nn == 0).map(|x| chi.eval(x)).sum();
    dim += gamma4(k) * BigInt::from(sum4);
    dim += gamma3(k) * BigInt::from(sum3);
    if k == 2 && chi.is_trivial() {
        dim += rat(1, 1);
    }
    assert!(dim.is_integer() && dim >= BigRational::zero(), "dimension formula produced {dim} for {label}");
    Ok(dim.to_integer().to_u64().expect("nonnegative dimension"))
}

/// M = max_k (dim S_{k+q} - dim S_k), evaluated on k in [2, 2 + 24q] and
/// checked against the following 12 weights.
pub fn bound_m(level: u64, chi: QuadChar, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if level.is_multiple_of(p) {
        return Err(Error::PrimeDividesLevel { p, level });
    }
    let q = weight_step(p);
    let label = |k: u32| SpaceLabel::new(level, k, chi);
    let step = |k: u32| -> Result<i64> {
        Ok(dim_cusp_forms(&label(k + q)?)? as i64 - dim_cusp_forms(&label(k)?)? as i64)
    };
    let end = 2 + 24 * q;
    let mut best = 0i64;
    for k in 2..=end {
        best = best.max(step(k)?);
    }
    for k in end + 1..=end + 12 {
        let d = step(k)?;
        if d > best {
            return Err(Error::BoundViolation(format!(
                "dimension step {d} at weight {k} exceeds the windowed maximum {best} for level {level}, p = {p}"
            )));
        }
    }
    Ok(best as u64)
}
