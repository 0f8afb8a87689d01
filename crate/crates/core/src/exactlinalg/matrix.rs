use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, Rationals};
use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major. Entries are always in lowest
/// terms with positive denominator (maintained by `BigRational`).
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

pub type RatVector = Vec<BigRational>;

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMatrix {
            rows,
            cols,
            data: entries.iter().map(|&e| BigRational::from_integer(BigInt::from(e))).collect(),
        }
    }

    pub fn from_rows(rows: Vec<RatVector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[RatVector], nrows: usize) -> Self {
        let mut m = Self::zero(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zero(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, BigRational::from_integer(BigInt::from(e)));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<RatVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> RatVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Reduced row echelon form and strictly increasing pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let (rows, pivots) = rref_rows(&Rationals, self.to_rows(), self.cols);
        let m = if rows.is_empty() {
            RatMatrix::zero(0, self.cols)
        } else {
            RatMatrix::from_rows(rows)
        };
        let mut full = RatMatrix::zero(self.rows, self.cols);
        for i in 0..m.rows {
            for j in 0..self.cols {
                full.set(i, j, m.get(i, j).clone());
            }
        }
        (full, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per non-pivot column.
    pub fn kernel(&self) -> Vec<RatVector> {
        let (e, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -e.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix of `operator` restricted to the invariant subspace spanned by
    /// `basis`, in the coordinates of that basis.
    pub fn restrict(operator: &RatMatrix, basis: &[RatVector]) -> Result<RatMatrix> {
        if !operator.is_square() {
            return Err(Error::NonSquare { rows: operator.rows, cols: operator.cols });
        }
        let n = operator.rows;
        let r = basis.len();
        if basis.iter().any(|b| b.len() != n) {
            return Err(Error::Dimension("basis vector length differs from operator size".into()));
        }
        if r == 0 {
            return Ok(RatMatrix::zero(0, 0));
        }
        // pick r coordinates on which the basis is independent
        let (_, pivots) = RatMatrix::from_rows(basis.to_vec()).rref();
        if pivots.len() != r {
            return Err(Error::Dimension("basis vectors are linearly dependent".into()));
        }
        let square = RatMatrix::from_rows(
            (0..r).map(|i| pivots.iter().map(|&pc| basis[i][pc].clone()).collect()).collect(),
        );
        // square[i][j] = basis_i[pivot_j]; coordinates c satisfy square^T c = w[pivots]
        let solver = square.transpose().inverse().expect("pivot minor is invertible");
        let mut out = RatMatrix::zero(r, r);
        for (j, b) in basis.iter().enumerate() {
            let w = operator.mul_vec(b);
            let rhs: RatVector = pivots.iter().map(|&pc| w[pc].clone()).collect();
            let coords = solver.mul_vec(&rhs);
            let mut recon = vec![BigRational::zero(); n];
            for (c, bv) in coords.iter().zip(basis) {
                if c.is_zero() {
                    continue;
                }
                for (acc, x) in recon.iter_mut().zip(bv) {
                    *acc += c * x;
                }
            }
            if recon != w {
                return Err(Error::NonInvariant);
            }
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug: Vec<RatVector> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let (rows, pivots) = rref_rows(&Rationals, aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(RatMatrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination over any field; returns the nonzero rows of the
/// reduced echelon form and their pivot columns.
pub fn rref_rows<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}
