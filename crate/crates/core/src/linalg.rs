//! Dense exact linear algebra over a [`Field`].
//!
//! Everything here is exact: rank decisions are decisions about zero, never
//! about tolerances.

use std::fmt;

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> =
                self.data[r * self.cols..(r + 1) * self.cols].iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &self.data).finish()
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Builds a `len x k` matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(len, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul_assign(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Concatenates matrices left to right (all with `rows` rows).
    pub fn hstack(rows: usize, parts: &[&Self]) -> Self {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for r in 0..rows {
                for c in 0..p.cols {
                    out.data[r * cols + off + c] = p.get(r, c).clone();
                }
            }
            off += p.cols;
        }
        out
    }

    /// Concatenates matrices top to bottom (all with `cols` columns).
    pub fn vstack(cols: usize, parts: &[&Self]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Matrix { rows, cols, data }
    }

    /// Block-diagonal matrix.
    pub fn block_diag(parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for r in 0..p.rows {
                for c in 0..p.cols {
                    out.data[(r0 + r) * cols + c0 + c] = p.get(r, c).clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        let cols = m.cols;
        for col in 0..cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            if p != row {
                for c in 0..cols {
                    m.data.swap(p * cols + c, row * cols + c);
                }
            }
            let inv = m.get(row, col).inv();
            if !inv.is_one() {
                for c in col..cols {
                    let v = m.get(row, c).mul(&inv);
                    m.data[row * cols + c] = v;
                }
            }
            let pivot_row: Vec<F> = m.row(row)[col..].to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let idx = r * cols + col + k;
                        m.data[idx] = m.data[idx].sub(&factor.mul(pv));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, as the columns of a `cols x k` matrix.
    pub fn nullspace(&self) -> Self {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, F::one());
            for (r, &p) in pivots.iter().enumerate() {
                out.set(p, k, matrix.get(r, f).neg());
            }
        }
        out
    }

    /// Solves `self * X = b`, returning `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows);
        let aug = Self::hstack(self.rows, &[self, b]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, matrix.get(r, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let x = self.solve(&Self::identity(self.rows))?;
        // A consistent square solve of rank < n is not an inverse.
        if self.rank() < self.rows {
            return None;
        }
        Some(x)
    }

    /// Indices of a maximal set of linearly independent columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }
}

/// Coordinates with respect to a fixed basis of a subspace.
///
/// The basis vectors are the columns of a full-column-rank matrix `B`; a set
/// of rows on which `B` is invertible is chosen once, so coordinates of a
/// vector known to lie in the span cost one small matrix-vector product.
#[derive(Clone, Debug)]
pub struct Coordinates<F> {
    basis: Matrix<F>,
    pivot_rows: Vec<usize>,
    inverse: Matrix<F>,
}

impl<F: Field> Coordinates<F> {
    /// `basis` must have linearly independent columns.
    pub fn new(basis: Matrix<F>) -> Self {
        let pivot_rows = basis.transpose().independent_columns();
        assert_eq!(pivot_rows.len(), basis.cols(), "basis columns are dependent");
        let inverse = basis.select_rows(&pivot_rows).inverse().expect("pivot rows give an invertible block");
        Coordinates { basis, pivot_rows, inverse }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    /// Coordinates of `v`, assumed to lie in the span.
    pub fn coords(&self, v: &[F]) -> Vec<F> {
        let picked: Vec<F> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        self.inverse.mul_vec(&picked)
    }

    /// Coordinates of each column of `m` (columns assumed in the span).
    pub fn coords_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        self.inverse.mul(&m.select_rows(&self.pivot_rows))
    }

    /// Coordinates if `v` lies in the span, `None` otherwise.
    pub fn try_coords(&self, v: &[F]) -> Option<Vec<F>> {
        let c = self.coords(v);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }
}

/// Incrementally built echelon basis of a subspace of `F^n`.
#[derive(Clone, Debug)]
pub struct Span<F> {
    n: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Span<F> {
    pub fn new(n: usize) -> Self {
        Span { n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Reduces `v` modulo the span in place.
    pub fn reduce(&self, v: &mut [F]) {
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[p].inv();
        for x in w.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push((p, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};

    fn m(rows: &[Vec<i64>]) -> Matrix<Q> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let n = a.nullspace();
        assert_eq!(n.cols(), 2);
        assert!(a.mul(&n).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[vec![2, 1], vec![7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(&[vec![1, 1], vec![2, 2]]);
        assert!(a.solve(&m(&[vec![1], vec![3]])).is_none());
        let x = a.solve(&m(&[vec![1], vec![2]])).unwrap();
        assert_eq!(a.mul(&x), m(&[vec![1], vec![2]]));
    }

    #[test]
    fn coordinates_recover_combination() {
        let b = m(&[vec![1, 0], vec![1, 1], vec![0, 2]]);
        let c = Coordinates::new(b.clone());
        let v = b.mul_vec(&[Q::from_i64(3), Q::from_i64(-2)]);
        assert_eq!(c.coords(&v), vec![Q::from_i64(3), Q::from_i64(-2)]);
        assert!(c.try_coords(&[Q::one(), Q::zero(), Q::zero()]).is_none());
    }

    #[test]
    fn span_tracks_rank() {
        let mut s = Span::<Fp>::new(3);
        assert!(s.insert(&[Fp::new(1), Fp::new(2), Fp::new(0)]));
        assert!(s.insert(&[Fp::new(0), Fp::new(1), Fp::new(1)]));
        assert!(!s.insert(&[Fp::new(1), Fp::new(3), Fp::new(1)]));
        assert_eq!(s.dim(), 2);
    }
}
