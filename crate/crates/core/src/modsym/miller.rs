//! Level-one q-expansion oracle, independent of modular symbols.
//!
//! S_k(SL_2(Z)) has the basis Delta^j E_{k-12j}, j = 1..dim, where E_w is a
//! monomial in E_4 and E_6 of weight w. Each basis element starts at q^j, so
//! the coefficients of q^1..q^dim determine a form uniquely.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dimformulas::{dim_cusp_forms, SpaceLabel};
use crate::error::{Error, Result};
use crate::exactlinalg::{charpoly_rational, rational_to_intpoly, IntPoly, RatMatrix};

pub type QSeries = Vec<BigInt>;

fn sigma(n: u64, power: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(power);
            if d * d != n {
                s += BigInt::from(n / d).pow(power);
            }
        }
        d += 1;
    }
    s
}

fn series_mul(a: &[BigInt], b: &[BigInt], prec: usize) -> QSeries {
    let mut out = vec![BigInt::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn series_pow(a: &[BigInt], e: u32, prec: usize) -> QSeries {
    let mut out = vec![BigInt::zero(); prec];
    out[0] = BigInt::one();
    for _ in 0..e {
        out = series_mul(&out, a, prec);
    }
    out
}

/// E_4 = 1 + 240 sum sigma_3(n) q^n
pub fn eisenstein_e4(prec: usize) -> QSeries {
    (0..prec).map(|n| if n == 0 { BigInt::one() } else { 240 * sigma(n as u64, 3) }).collect()
}

/// E_6 = 1 - 504 sum sigma_5(n) q^n
pub fn eisenstein_e6(prec: usize) -> QSeries {
    (0..prec).map(|n| if n == 0 { BigInt::one() } else { -504 * sigma(n as u64, 5) }).collect()
}

/// Delta = (E_4^3 - E_6^2) / 1728
pub fn delta(prec: usize) -> QSeries {
    let e4 = eisenstein_e4(prec);
    let e6 = eisenstein_e6(prec);
    let a = series_pow(&e4, 3, prec);
    let b = series_pow(&e6, 2, prec);
    a.iter()
        .zip(&b)
        .map(|(x, y)| {
            let d = x - y;
            debug_assert!((&d % 1728u32).is_zero());
            d / 1728u32
        })
        .collect()
}

/// prod_n prod_(d, e) (1 - q^(d n))^e, without the q^(sum d e / 24) prefactor.
pub fn eta_product_series(factors: &[(u64, u32)], prec: usize) -> QSeries {
    let mut out = vec![BigInt::zero(); prec];
    out[0] = BigInt::one();
    for &(d, e) in factors {
        for _ in 0..e {
            let mut n = d as usize;
            while n < prec {
                // multiply by (1 - q^n)
                for i in (n..prec).rev() {
                    let t = out[i - n].clone();
                    out[i] -= t;
                }
                n += d as usize;
            }
        }
    }
    out
}

/// Echelon-style basis Delta^j E_4^a E_6^b of S_k(SL_2(Z)).
pub fn cusp_basis_level_one(k: u32, prec: usize) -> Vec<QSeries> {
    let dim = dim_cusp_forms(&SpaceLabel::trivial(1, k).expect("weight >= 2")).unwrap_or(0) as u32;
    let e4 = eisenstein_e4(prec);
    let e6 = eisenstein_e6(prec);
    let d = delta(prec);
    (1..=dim)
        .map(|j| {
            let w = k - 12 * j;
            // w is 0 or at least 4; pick b in {0, 1} with 4a + 6b = w
            let b = if w.is_multiple_of(4) { 0 } else { 1 };
            let a = (w - 6 * b) / 4;
            let f = series_mul(&series_pow(&e4, a, prec), &series_pow(&e6, b, prec), prec);
            series_mul(&series_pow(&d, j, prec), &f, prec)
        })
        .collect()
}

/// Characteristic polynomial of T_l on S_k(SL_2(Z)) computed from
/// q-expansions, using a_n(T_l f) = a_(nl)(f) + l^(k-1) a_(n/l)(f).
pub fn miller_charpoly(k: u32, l: u64, precision: usize) -> Result<IntPoly> {
    if k < 2 {
        return Err(Error::WeightTooSmall(k));
    }
    if k % 2 == 1 {
        return Ok(IntPoly::one());
    }
    let dim = dim_cusp_forms(&SpaceLabel::trivial(1, k)?)? as usize;
    let need = l as usize * (dim + 1);
    if precision < need {
        return Err(Error::InsufficientPrecision { have: precision, need });
    }
    if dim == 0 {
        return Ok(IntPoly::one());
    }
    let basis = cusp_basis_level_one(k, precision);
    let lk = BigInt::from(l).pow(k - 1);
    let usable = (precision - 1) / l as usize;
    let hecke = |f: &QSeries| -> QSeries {
        (0..=usable)
            .map(|n| {
                let mut v = f[n * l as usize].clone();
                if n % l as usize == 0 {
                    v += &lk * &f[n / l as usize];
                }
                v
            })
            .collect()
    };
    // columns: coordinates of T_l f_j in the basis f_1..f_dim
    let mut m = RatMatrix::zero(dim, dim);
    for (j, f) in basis.iter().enumerate() {
        let mut g: Vec<BigRational> = hecke(f).into_iter().map(BigRational::from_integer).collect();
        for (i, b) in basis.iter().enumerate() {
            // b has leading term q^(i+1) with coefficient 1
            let c = g[i + 1].clone();
            if c.is_zero() {
                continue;
            }
            for (n, gn) in g.iter_mut().enumerate() {
                *gn -= &c * BigRational::from_integer(b[n].clone());
            }
            m.set(i, j, c);
        }
        if g.iter().any(|x| !x.is_zero()) {
            return Err(Error::Dimension(format!("T_{l} f_{} left the span of the weight {k} basis", j + 1)));
        }
    }
    rational_to_intpoly(&charpoly_rational(&m)?)
}
