//! Weight-k boundary symbols for Gamma_0(N) with a quadratic character.
//!
//! A boundary symbol is attached to a primitive integer vector (a, c)
//! representing the cusp a/c. Under gamma in Gamma_0(N) with lower-right entry
//! w, [gamma v] = chi(w) [v], and [-v] = (-1)^k [v]. Cusp classes on which
//! these rules force a sign change vanish.

use crate::arith::{gcd, gcd_i64};
use crate::dimformulas::QuadChar;

#[derive(Clone, Debug)]
pub struct CuspList {
    level: u64,
    weight: u32,
    chi: QuadChar,
    reps: Vec<(i64, i64)>,
    vanishing: Vec<bool>,
}

impl CuspList {
    pub fn new(chi: QuadChar, weight: u32) -> Self {
        CuspList { level: chi.modulus(), weight, chi, reps: Vec::new(), vanishing: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, idx: usize) -> (i64, i64) {
        self.reps[idx]
    }

    pub fn is_vanishing(&self, idx: usize) -> bool {
        self.vanishing[idx]
    }

    /// Scalars s such that (a, c) = s * (a2, c2) in the boundary module,
    /// one per admissible sign/unit pair.
    fn relation_scalars(&self, a: i64, c: i64, a2: i64, c2: i64) -> Vec<i64> {
        let n = self.level as i64;
        let g = gcd_i64(c, n);
        let mut out = Vec::new();
        for eps in [1i64, -1] {
            for delta in 0..n.max(1) {
                if gcd(delta as u64, self.level) != 1 {
                    continue;
                }
                let lhs_c = (eps * c2 - delta * c).rem_euclid(n.max(1));
                if lhs_c != 0 {
                    continue;
                }
                if (eps * a2 * delta - a).rem_euclid(g.max(1)) != 0 {
                    continue;
                }
                let sign = if eps == -1 && self.weight % 2 == 1 { -1 } else { 1 };
                out.push(sign * self.chi.eval(delta));
            }
        }
        out
    }

    /// Class of the cusp vector (a, c): `(index, scalar)` with
    /// [(a, c)] = scalar * [rep(index)], scalar 0 on vanishing classes.
    pub fn classify(&mut self, a: i64, c: i64) -> (usize, i64) {
        debug_assert_eq!(gcd_i64(a, c), 1, "cusp vector must be primitive");
        for idx in 0..self.reps.len() {
            let (a2, c2) = self.reps[idx];
            let scalars = self.relation_scalars(a, c, a2, c2);
            if let Some(&s) = scalars.first() {
                return (idx, if self.vanishing[idx] { 0 } else { s });
            }
        }
        let self_scalars = self.relation_scalars(a, c, a, c);
        let vanishing = self_scalars.iter().any(|&s| s != 1);
        self.reps.push((a, c));
        self.vanishing.push(vanishing);
        (self.reps.len() - 1, if vanishing { 0 } else { 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_level_has_two_cusps() {
        let mut cl = CuspList::new(QuadChar::trivial(11), 2);
        for (a, c) in [(1, 0), (0, 1), (1, 11), (3, 7), (2, 1), (5, 22), (-1, 0)] {
            cl.classify(a, c);
        }
        assert_eq!(cl.len(), 2);
        assert!((0..2).all(|i| !cl.is_vanishing(i)));
    }

    #[test]
    fn level_four_character_kills_middle_cusp() {
        // cusps of Gamma_0(4): infinity, 0, 1/2; the odd character mod 4 kills 1/2 in odd weight
        let chi = QuadChar::legendre(4).unwrap();
        let mut cl = CuspList::new(chi, 3);
        let (half, _) = cl.classify(1, 2);
        let (inf, s) = cl.classify(1, 0);
        cl.classify(0, 1);
        assert_eq!(cl.len(), 3);
        assert!(cl.is_vanishing(half));
        assert!(!cl.is_vanishing(inf));
        assert_eq!(s, 1);
    }

    #[test]
    fn level_one_single_cusp() {
        let mut cl = CuspList::new(QuadChar::trivial(1), 12);
        for (a, c) in [(1, 0), (0, 1), (2, 3), (-1, 5)] {
            assert_eq!(cl.classify(a, c).0, 0);
        }
    }
}
