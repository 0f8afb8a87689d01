use crate::arith::gcd;
use crate::dimformulas::QuadChar;

/// The projective line P^1(Z/NZ) with a lookup table from every pair
/// (c, d) in (Z/N)^2 to its canonical representative.
///
/// The representative of a point is the lexicographically least pair in its
/// orbit under scaling by units, and `normalize` also returns the unit
/// `lambda` with `(c, d) = lambda * rep`.
#[derive(Clone, Debug)]
pub struct P1List {
    n: u64,
    points: Vec<(u64, u64)>,
    /// indexed by c * n + d
    table: Vec<Option<(u32, u64)>>,
    /// points whose stabiliser contains a unit with chi = -1
    killed: Vec<bool>,
}

impl P1List {
    pub fn new(chi: &QuadChar) -> Self {
        let n = chi.modulus();
        let units: Vec<u64> = (0..n).filter(|&x| gcd(x, n) == 1).collect();
        let mut table = vec![None; (n * n) as usize];
        let mut points = Vec::new();
        let mut killed = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if gcd(gcd(c, d), n) != 1 || table[(c * n + d) as usize].is_some() {
                    continue;
                }
                let idx = points.len() as u32;
                points.push((c, d));
                let mut dead = false;
                for &u in &units {
                    let (uc, ud) = (u * c % n, u * d % n);
                    let slot = &mut table[(uc * n + ud) as usize];
                    if slot.is_none() {
                        *slot = Some((idx, u));
                    }
                    if (uc, ud) == (c, d) && chi.eval(u as i64) == -1 {
                        dead = true;
                    }
                }
                killed.push(dead);
            }
        }
        P1List { n, points, table, killed }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, idx: usize) -> (u64, u64) {
        self.points[idx]
    }

    pub fn is_killed(&self, idx: usize) -> bool {
        self.killed[idx]
    }

    /// `(index, lambda)` with `(c, d) = lambda * point(index)` mod N, or `None`
    /// when gcd(c, d, N) > 1.
    pub fn normalize(&self, c: i64, d: i64) -> Option<(usize, u64)> {
        let n = self.n as i64;
        let c = c.rem_euclid(n) as u64;
        let d = d.rem_euclid(n) as u64;
        self.table[(c * self.n + d) as usize].map(|(i, u)| (i as usize, u))
    }
}
