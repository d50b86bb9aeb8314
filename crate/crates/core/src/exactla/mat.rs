//! Dense matrices with exact entries and deterministic elimination.
//!
//! All elimination is Gauss-Jordan to reduced row echelon form with
//! leftmost-first pivot selection. Dense storage is deliberate: every
//! instance this engine touches stays well below 2000 rows/columns.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use super::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<K: Field> {
    k: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// Result of reduction to reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Rref<K: Field> {
    pub rank: usize,
    /// Pivot column indices, strictly increasing (leftmost-first selection).
    pub pivots: Vec<usize>,
    pub reduced: Mat<K>,
}

impl<K: Field> Mat<K> {
    pub fn zeros(k: K, rows: usize, cols: usize) -> Self {
        let data = vec![k.zero(); rows * cols];
        Mat { k, rows, cols, data }
    }

    pub fn identity(k: K, n: usize) -> Self {
        let mut m = Mat::zeros(k, n, n);
        for i in 0..n {
            let one = m.k.one();
            m.set(i, i, one);
        }
        m
    }

    /// Builds a matrix from rows of i64 entries (test/setup convenience).
    pub fn from_i64_rows(k: K, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Mat::zeros(k, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                let e = m.k.from_i64(*v);
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn from_fn(k: K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { k, rows, cols, data }
    }

    pub fn field(&self) -> &K {
        &self.k
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &K::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.k.is_zero(e))
    }

    pub fn transpose(&self) -> Mat<K> {
        Mat::from_fn(self.k.clone(), self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Mat<K>) -> Mat<K> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let k = &self.k;
        let mut out = Mat::zeros(k.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.at(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(l, j);
                    if k.is_zero(b) {
                        continue;
                    }
                    let v = k.add(out.at(i, j), &k.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat<K>) -> Mat<K> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.k.clone(), self.rows, self.cols, |i, j| {
            self.k.add(self.at(i, j), other.at(i, j))
        })
    }

    pub fn sub(&self, other: &Mat<K>) -> Mat<K> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.k.clone(), self.rows, self.cols, |i, j| {
            self.k.sub(self.at(i, j), other.at(i, j))
        })
    }

    pub fn scale(&self, c: &K::Elem) -> Mat<K> {
        Mat::from_fn(self.k.clone(), self.rows, self.cols, |i, j| self.k.mul(self.at(i, j), c))
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.cols, "apply: length mismatch");
        let k = &self.k;
        let mut out = vec![k.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !k.is_zero(a) && !k.is_zero(&v[j]) {
                    out[i] = k.add(&out[i], &k.mul(a, &v[j]));
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat<K>) -> Mat<K> {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        Mat::from_fn(self.k.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { other.at(i, j - self.cols).clone() }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Mat<K>) -> Mat<K> {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        Mat::from_fn(self.k.clone(), self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self.at(i, j).clone() } else { other.at(i - self.rows, j).clone() }
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(k: K, len: usize, cols: &[Vec<K::Elem>]) -> Mat<K> {
        for c in cols {
            assert_eq!(c.len(), len, "from_columns: length mismatch");
        }
        Mat::from_fn(k, len, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn column(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<K::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Reduced row echelon form with leftmost-first pivots.
    pub fn rref(&self) -> Rref<K> {
        let k = self.k.clone();
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            // Leftmost column, first nonzero row at or below r.
            let mut sel = None;
            for i in r..a.rows {
                if !k.is_zero(a.at(i, c)) {
                    sel = Some(i);
                    break;
                }
            }
            let Some(i) = sel else { continue };
            a.swap_rows(r, i);
            let inv = k.inv(a.at(r, c));
            a.scale_row(r, &inv);
            for i in 0..a.rows {
                if i != r && !k.is_zero(a.at(i, c)) {
                    let f = a.at(i, c).clone();
                    a.row_sub_scaled(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: r, pivots, reduced: a }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, as the canonical RREF free-variable
    /// basis: one vector per free column, with a 1 in the free slot.
    pub fn kernel_basis(&self) -> Vec<Vec<K::Elem>> {
        let k = &self.k;
        let Rref { pivots, reduced, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![k.zero(); self.cols];
            v[f] = k.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(reduced.at(row, f));
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel as a matrix whose columns are the canonical basis vectors.
    pub fn kernel_mat(&self) -> Mat<K> {
        let b = self.kernel_basis();
        Mat::from_columns(self.k.clone(), self.cols, &b)
    }

    /// Deterministic particular solution of `self * x = b` (free variables
    /// set to zero), or `None` if the system is inconsistent. `b` may have
    /// several columns; they are solved simultaneously.
    pub fn solve(&self, b: &Mat<K>) -> Option<Mat<K>> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let k = &self.k;
        let aug = self.hstack(b);
        let Rref { pivots, reduced, .. } = aug.rref();
        // Inconsistent iff some pivot falls in the b-block.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(k.clone(), self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, reduced.at(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Indices of a maximal set of linearly independent columns (the pivot
    /// columns of the RREF), leftmost-first.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &K::Elem) {
        for j in 0..self.cols {
            let v = self.k.mul(self.at(r, j), c);
            self.set(r, j, v);
        }
    }

    /// row[i] -= f * row[r]
    fn row_sub_scaled(&mut self, i: usize, r: usize, f: &K::Elem) {
        for j in 0..self.cols {
            let v = self.k.sub(self.at(i, j), &self.k.mul(f, self.at(r, j)));
            self.set(i, j, v);
        }
    }
}

/// True iff the spans of the two vector lists coincide, checked by rank of
/// stacked matrices. Errors if the vectors do not all have the same length.
pub fn span_equal<K: Field>(k: &K, a: &[Vec<K::Elem>], b: &[Vec<K::Elem>]) -> Result<bool, Error> {
    let len = a.first().or_else(|| b.first()).map(|v| v.len()).unwrap_or(0);
    for v in a.iter().chain(b.iter()) {
        if v.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "span_equal: vector of length {} among vectors of length {}",
                v.len(),
                len
            )));
        }
    }
    let ma = Mat::from_columns(k.clone(), len, a);
    let mb = Mat::from_columns(k.clone(), len, b);
    let ra = ma.rank();
    let rb = mb.rank();
    if ra != rb {
        return Ok(false);
    }
    let stacked = ma.hstack(&mb);
    Ok(stacked.rank() == ra)
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, Rationals};
    use super::*;

    #[test]
    fn rref_identity() {
        let k = Rationals;
        let m = Mat::identity(k, 2);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced, m);
    }

    #[test]
    fn rref_zero_matrix() {
        let k = PrimeField::default_prime();
        let m = Mat::zeros(k, 3, 4);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        assert_eq!(r.reduced, m);
    }

    #[test]
    fn rref_rank_one() {
        // [[1,2],[2,4]] over Q: rank 1, pivots [0], reduced [[1,2],[0,0]].
        let k = Rationals;
        let m = Mat::from_i64_rows(k, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        let expect = Mat::from_i64_rows(Rationals, &[&[1, 2], &[0, 0]]);
        assert_eq!(r.reduced, expect);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = Rationals;
        let m = Mat::identity(k, 3);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_standard_basis() {
        let k = Rationals;
        let m = Mat::zeros(k, 2, 3);
        let b = m.kernel_basis();
        assert_eq!(b.len(), 3);
        for (j, v) in b.iter().enumerate() {
            for (i, e) in v.iter().enumerate() {
                assert_eq!(m.field().is_one(e), i == j);
                assert_eq!(m.field().is_zero(e), i != j);
            }
        }
    }

    #[test]
    fn kernel_canonical_normalization_gf5() {
        // x + y = 0 over GF(5): canonical kernel vector (-1, 1) = (4, 1).
        let k = PrimeField::new(5).unwrap();
        let m = Mat::from_i64_rows(k, &[&[1, 1]]);
        let b = m.kernel_basis();
        assert_eq!(b, vec![vec![4u64, 1u64]]);
    }

    #[test]
    fn span_equal_examples() {
        let k = Rationals;
        let e1 = vec![k.one(), k.zero()];
        let e2 = vec![k.zero(), k.one()];
        let two_e1 = vec![k.from_i64(2), k.zero()];
        let e1_plus_e2 = vec![k.one(), k.one()];
        assert!(span_equal(&k, &[e1.clone()], &[two_e1]).unwrap());
        assert!(!span_equal(&k, &[e1.clone()], &[e1.clone(), e2.clone()]).unwrap());
        assert!(span_equal(&k, &[e1_plus_e2, e2.clone()], &[e1, e2]).unwrap());
    }

    #[test]
    fn span_equal_length_mismatch_errors() {
        let k = Rationals;
        let a = vec![vec![k.one()]];
        let b = vec![vec![k.one(), k.zero()]];
        assert!(span_equal(&k, &a, &b).is_err());
    }

    #[test]
    fn solve_particular_and_inconsistent() {
        let k = Rationals;
        let a = Mat::from_i64_rows(k, &[&[1, 2], &[0, 0]]);
        let b = Mat::from_i64_rows(Rationals, &[&[3], &[0]]);
        let x = a.solve(&b).unwrap();
        // Deterministic: free variable set to zero.
        assert_eq!(x, Mat::from_i64_rows(Rationals, &[&[3], &[0]]));
        let bad = Mat::from_i64_rows(Rationals, &[&[0], &[1]]);
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let k = PrimeField::default_prime();
        let m = Mat::from_i64_rows(k, &[&[1, 2, 3], &[4, 5, 6]]);
        for v in m.kernel_basis() {
            assert!(m.apply(&v).iter().all(|e| m.field().is_zero(e)));
        }
    }
}
