//! Quotienting a free module by two-term relations (signed union-find) and by
//! general sparse relations (incremental Gauss-Jordan over Q).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Union-find for relations of the form `x_a = w x_b` with `w = +-1` and
/// `x_a = 0`.
#[derive(Clone, Debug)]
pub struct SignedUnionFind {
    parent: Vec<usize>,
    /// x_i = sign[i] * x_parent[i]
    sign: Vec<i8>,
    zero: Vec<bool>,
}

impl SignedUnionFind {
    pub fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), sign: vec![1; n], zero: vec![false; n] }
    }

    /// `(root, s)` with `x_a = s x_root`.
    pub fn find(&mut self, a: usize) -> (usize, i8) {
        let p = self.parent[a];
        if p == a {
            return (a, 1);
        }
        let (root, s) = self.find(p);
        self.parent[a] = root;
        self.sign[a] *= s;
        (root, self.sign[a])
    }

    /// Imposes `x_a = w x_b`.
    pub fn union(&mut self, a: usize, b: usize, w: i8) {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        let rel = sa * w * sb;
        if ra == rb {
            if rel == -1 {
                self.zero[ra] = true;
            }
            return;
        }
        self.parent[ra] = rb;
        self.sign[ra] = rel;
        if self.zero[ra] {
            self.zero[rb] = true;
        }
    }

    pub fn set_zero(&mut self, a: usize) {
        let (r, _) = self.find(a);
        self.zero[r] = true;
    }

    /// `Some((root, s))` with `x_a = s x_root`, or `None` if `x_a = 0`.
    pub fn resolve(&mut self, a: usize) -> Option<(usize, i8)> {
        let (r, s) = self.find(a);
        (!self.zero[r]).then_some((r, s))
    }
}

/// Sparse row: sorted `(column, value)` pairs with nonzero values.
pub type SparseRow = Vec<(usize, BigRational)>;

/// Reduced echelon basis of a growing relation space, kept fully reduced so
/// that no pivot column appears in any other row.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_of: HashMap<usize, usize>,
    /// column -> rows with a nonzero entry there (superset, cleaned lazily)
    occurs: HashMap<usize, Vec<usize>>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, ..Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// Adds a relation given as `(column, integer coefficient)` pairs.
    pub fn add_relation(&mut self, terms: &[(usize, BigInt)]) {
        let mut dense: HashMap<usize, BigRational> = HashMap::new();
        for (c, v) in terms {
            assert!(*c < self.ncols);
            let e = dense.entry(*c).or_insert_with(BigRational::zero);
            *e += BigRational::from_integer(v.clone());
        }
        dense.retain(|_, v| !v.is_zero());
        // eliminate existing pivots; rows are reduced so this does not cascade
        let hits: Vec<usize> = dense.keys().copied().filter(|c| self.pivot_of.contains_key(c)).collect();
        for c in hits {
            let Some(f) = dense.remove(&c) else { continue };
            let r = self.pivot_of[&c];
            for (col, v) in &self.rows[r] {
                if *col == c {
                    continue;
                }
                let e = dense.entry(*col).or_insert_with(BigRational::zero);
                *e -= &f * v;
                if e.is_zero() {
                    dense.remove(col);
                }
            }
        }
        if dense.is_empty() {
            return;
        }
        let pivot = choose_pivot(&dense);
        let inv = dense[&pivot].recip();
        let mut row: SparseRow = dense.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        row.sort_by_key(|(c, _)| *c);

        // clear the new pivot column from older rows
        let users = self.occurs.remove(&pivot).unwrap_or_default();
        for r in users {
            let Some(pos) = self.rows[r].iter().position(|(c, _)| *c == pivot) else {
                continue;
            };
            let f = self.rows[r][pos].1.clone();
            let merged = axpy(&self.rows[r], &row, &f);
            for (c, _) in &merged {
                if !self.rows[r].iter().any(|(c0, _)| c0 == c) {
                    self.occurs.entry(*c).or_default().push(r);
                }
            }
            self.rows[r] = merged;
        }
        let idx = self.rows.len();
        for (c, _) in &row {
            if *c != pivot {
                self.occurs.entry(*c).or_default().push(idx);
            }
        }
        self.pivot_of.insert(pivot, idx);
        self.rows.push(row);
    }

    /// For a pivot column, the expression `x_col = sum coeff * x_free`;
    /// `None` for free columns.
    pub fn solve_pivot(&self, col: usize) -> Option<SparseRow> {
        let r = *self.pivot_of.get(&col)?;
        Some(self.rows[r].iter().filter(|(c, _)| *c != col).map(|(c, v)| (*c, -v.clone())).collect())
    }
}

/// `a - f * b` for sparse rows sorted by column.
fn axpy(a: &SparseRow, b: &SparseRow, f: &BigRational) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Prefers a unit entry (keeps coefficients small), then the entry of least
/// height; ties broken by column for determinism.
fn choose_pivot(dense: &HashMap<usize, BigRational>) -> usize {
    let height = |v: &BigRational| -> BigInt { v.numer().abs().max(v.denom().clone()) };
    let mut best: Option<(BigInt, usize)> = None;
    for (c, v) in dense {
        let h = height(v);
        let better = match &best {
            None => true,
            Some((bh, bc)) => h < *bh || (h == *bh && c < bc),
        };
        if better {
            best = Some((h, *c));
        }
    }
    best.expect("nonempty row").1
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
