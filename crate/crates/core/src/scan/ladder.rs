//! Weight ladders k0, k0 + q, k0 + 2q, ... and the incremental factors
//! f_j = T_(k0 + j q) / T_(k0 + (j - 1) q) over F_p.

use super::cache::{charpoly_mod_p, Cache};
use crate::dimformulas::{weight_step, QuadChar, SpaceLabel};
use crate::error::{Error, Result};
use crate::ffpoly::FpPoly;

/// Exact quotient `upper / lower` over F_p, or a `DivisibilityViolation`
/// naming both weights.
pub fn ladder_quotient(lower: &FpPoly, upper: &FpPoly, context: impl FnOnce() -> String) -> Result<FpPoly> {
    match upper.div_exact(lower)? {
        Some(q) => Ok(q),
        None => Err(Error::DivisibilityViolation(format!("{}: {lower} does not divide {upper}", context()))),
    }
}

/// `[f_0, f_1, ..., f_jmax]` with f_0 the reduced Hecke polynomial at weight
/// k0 and f_j the exact quotient of consecutive reduced polynomials.
pub fn incremental_factors(
    level: u64,
    chi: QuadChar,
    p: u64,
    ell: u64,
    k0: u32,
    j_max: usize,
    cache: &Cache,
) -> Result<Vec<FpPoly>> {
    let q = weight_step(p);
    let base = SpaceLabel::new(level, k0, chi)?;
    if !base.parity_ok() {
        return Err(Error::Dimension(format!("weight {k0} has the wrong parity for {chi}")));
    }
    let mut prev = charpoly_mod_p(base, ell, p, cache)?;
    let mut out = vec![prev.clone()];
    for j in 1..=j_max {
        let k = k0 + j as u32 * q;
        let next = charpoly_mod_p(base.with_weight(k)?, ell, p, cache)?;
        let f = ladder_quotient(&prev, &next, || {
            format!("N={level} chi={chi} p={p} l={ell}, weights {} -> {k}", k - q)
        })?;
        out.push(f);
        prev = next;
    }
    Ok(out)
}

/// Smallest s with `fs[j + s] == fs[j]` for every j in range, provided the
/// data holds at least two full periods.
pub fn detect_period<T: PartialEq>(fs: &[T]) -> Option<usize> {
    if fs.len() < 2 {
        return None;
    }
    (1..=fs.len() / 2).find(|&s| (0..fs.len() - s).all(|j| fs[j + s] == fs[j]))
}
