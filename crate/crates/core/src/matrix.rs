//! Dense and row-sparse matrices over a [`Scalar`].
//!
//! Generator matrices are block-sparse (each twist only touches one color
//! index), so word evaluation is done by repeatedly applying sparse factors to
//! a dense accumulator.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(ctx: S::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: S::Ctx, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one(ctx) } else { S::zero(ctx) })
    }

    pub fn diagonal(ctx: S::Ctx, diag: &[S]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { S::zero(ctx) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let zero = self.zero_like();
        let mut out = vec![zero; self.rows * rhs.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (o, b) in orow.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        o.mul_add_assign(a, b);
                    }
                }
            }
        }
        Matrix { rows: self.rows, cols: rhs.cols, data: out }
    }

    fn zero_like(&self) -> S {
        // a zero in the same field/level as our entries
        let x = &self.data[0];
        x.sub(x)
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn transpose(&self) -> Matrix<S> {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Matrix<S> {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn pow(&self, e: u32) -> Matrix<S> {
        assert!(self.is_square());
        let mut acc: Option<Matrix<S>> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap_or_else(|| {
            let one = unit_from(&self.data);
            let zero = self.zero_like();
            Matrix::from_fn(self.rows, self.cols, |i, j| if i == j { one.clone() } else { zero.clone() })
        })
    }

    /// Gauss–Jordan inverse, pivoting on the largest embedded magnitude.
    pub fn inverse(&self) -> Option<Matrix<S>> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let one = unit_from(&self.data);
        let zero = self.zero_like();
        let mut a = self.clone();
        let mut inv = Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() });
        for col in 0..n {
            let mut best: Option<(usize, f64)> = None;
            for row in col..n {
                let v = a.get(row, col);
                if !v.is_zero() {
                    let m = v.to_c64().norm();
                    if best.is_none_or(|(_, bm)| m > bm) {
                        best = Some((row, m));
                    }
                }
            }
            let (p, _) = best?;
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    inv.data.swap(p * n + j, col * n + j);
                }
            }
            let pinv = a.get(col, col).try_inv()?;
            for x in a.row_mut(col) {
                *x = x.mul(&pinv);
            }
            for x in inv.row_mut(col) {
                *x = x.mul(&pinv);
            }
            let prow_a = a.row(col).to_vec();
            let prow_i = inv.row(col).to_vec();
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = a.get(row, col).clone();
                if f.is_zero() {
                    continue;
                }
                let nf = f.neg();
                for (x, p) in a.row_mut(row).iter_mut().zip(&prow_a) {
                    if !p.is_zero() {
                        x.mul_add_assign(&nf, p);
                    }
                }
                for (x, p) in inv.row_mut(row).iter_mut().zip(&prow_i) {
                    if !p.is_zero() {
                        x.mul_add_assign(&nf, p);
                    }
                }
            }
        }
        Some(inv)
    }

    /// `Some(λ)` when the matrix is exactly λ·I (zero matrices included).
    pub fn as_scalar(&self) -> Option<S> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        let d0 = self.get(0, 0);
        for i in 1..self.rows {
            if !self.get(i, i).sub(d0).is_zero() {
                return None;
            }
        }
        Some(d0.clone())
    }

    /// Complex embedding of every entry.
    pub fn to_c64(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_iterator(self.rows, self.cols, self.data.iter().map(|x| x.to_c64()))
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

fn unit_from<S: Scalar>(data: &[S]) -> S {
    // every entry lives in the same field; a nonzero x gives 1 = x·x⁻¹
    data.iter()
        .find(|x| !x.is_zero())
        .and_then(|x| x.try_inv().map(|i| x.mul(&i)))
        .expect("cannot build 1 from an all-zero matrix")
}

/// Row-compressed sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn identity(ctx: S::Ctx, n: usize) -> Self {
        Self::from_diagonal((0..n).map(|_| S::one(ctx)).collect())
    }

    pub fn from_diagonal(diag: Vec<S>) -> Self {
        let n = diag.len();
        let entries = diag
            .into_iter()
            .enumerate()
            .map(|(i, d)| if d.is_zero() { Vec::new() } else { vec![(i, d)] })
            .collect();
        SparseMatrix { rows: n, cols: n, entries }
    }

    pub fn from_dense(m: &Matrix<S>) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to entry (i, j).
    pub fn add_entry(&mut self, i: usize, j: usize, v: S) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.entries[i];
        match row.iter().position(|(c, _)| *c == j) {
            Some(p) => {
                let s = row[p].1.add(&v);
                if s.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = s;
                }
            }
            None => {
                let p = row.partition_point(|(c, _)| *c < j);
                row.insert(p, (j, v));
            }
        }
    }

    pub fn row(&self, i: usize) -> &[(usize, S)] {
        &self.entries[i]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&S> {
        self.entries[i].iter().find(|(c, _)| *c == j).map(|(_, v)| v)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| row.iter().all(|(j, _)| *j == i))
    }

    pub fn to_dense(&self, ctx: S::Ctx) -> Matrix<S> {
        let mut m = Matrix::zeros(ctx, self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                m.set(i, j.to_owned(), v.clone());
            }
        }
        m
    }

    /// `self · m`
    pub fn mul_dense(&self, m: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, m.rows());
        let zero = m.zero_like();
        let mut out = vec![zero; self.rows * m.cols()];
        for (i, row) in self.entries.iter().enumerate() {
            let orow = &mut out[i * m.cols()..(i + 1) * m.cols()];
            for (k, a) in row {
                for (o, b) in orow.iter_mut().zip(m.row(*k)) {
                    if !b.is_zero() {
                        o.mul_add_assign(a, b);
                    }
                }
            }
        }
        Matrix::from_vec(self.rows, m.cols(), out)
    }

    /// `m · self`
    pub fn dense_mul(&self, m: &Matrix<S>) -> Matrix<S> {
        assert_eq!(m.cols(), self.rows);
        let zero = m.zero_like();
        let cols = self.cols;
        let mut out = vec![zero; m.rows() * cols];
        for i in 0..m.rows() {
            let mrow = m.row(i);
            let orow = &mut out[i * cols..(i + 1) * cols];
            for (k, x) in mrow.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, v) in &self.entries[k] {
                    orow[*j].mul_add_assign(x, v);
                }
            }
        }
        Matrix::from_vec(m.rows(), cols, out)
    }

    pub fn mul(&self, rhs: &SparseMatrix<S>) -> SparseMatrix<S> {
        assert_eq!(self.cols, rhs.rows);
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &rhs.entries[*k] {
                    out.add_entry(i, *j, a.mul(b));
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> SparseMatrix<S> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v.mul(s))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn to_c64(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.to_c64();
            }
        }
        m
    }

    /// Exact test `self · m == m · self` for a dense `m`.
    pub fn commutes_with(&self, m: &Matrix<S>) -> bool {
        let left = self.mul_dense(m);
        let right = self.dense_mul(m);
        left.sub(&right).is_zero()
    }
}

/// Largest singular value.
pub fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Relative distance of a float matrix from the nearest multiple of the
/// identity, measured against the largest entry.
pub fn scalar_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    if n == 0 {
        return 0.0;
    }
    let mean = (0..n).map(|i| m[(i, i)]).sum::<Complex64>() / n as f64;
    let scale = m.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1e-300);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..m.ncols() {
            let target = if i == j { mean } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{CycloNum, Level};
    use crate::scalar::RootCtx;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn float_inverse_and_product() {
        let ctx = RootCtx::<f64>::new(5);
        let m = Matrix::from_vec(2, 2, vec![c(2.0), c(1.0), c(1.0), c(1.0)]);
        let inv = m.inverse().unwrap();
        let id = m.mul(&inv);
        assert!((id.to_c64() - Matrix::<Complex64>::identity(ctx, 2).to_c64()).norm() < 1e-14);
        assert_eq!(m.pow(0), Matrix::identity(ctx, 2));
    }

    #[test]
    fn exact_inverse_of_vandermonde() {
        let l = Level::new(5).unwrap();
        let a = |e| CycloNum::monomial(l, e);
        let m = Matrix::from_fn(3, 3, |i, j| a((i * j) as i64 * 2));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(l, 3));
        assert_eq!(inv.mul(&m).as_scalar(), Some(CycloNum::one(l)));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_vec(2, 2, vec![c(1.0), c(2.0), c(2.0), c(4.0)]);
        // rounding may leave a tiny pivot; exact arithmetic must refuse
        let l = Level::new(3).unwrap();
        let e = m.map(|x| CycloNum::from_int(l, x.re as i64));
        assert!(e.inverse().is_none());
    }

    #[test]
    fn sparse_products_match_dense() {
        let l = Level::new(4).unwrap();
        let a = |e| CycloNum::monomial(l, e);
        let d = Matrix::from_fn(3, 3, |i, j| a((i + 2 * j) as i64));
        let mut s = SparseMatrix::new(3, 3);
        s.add_entry(0, 1, a(1));
        s.add_entry(2, 0, a(5));
        s.add_entry(2, 2, CycloNum::from_int(l, -3));
        let sd = s.to_dense(l);
        assert_eq!(s.mul_dense(&d), sd.mul(&d));
        assert_eq!(s.dense_mul(&d), d.mul(&sd));
        assert_eq!(s.mul(&s).to_dense(l), sd.mul(&sd));
        assert!(!s.commutes_with(&d));
        assert!(SparseMatrix::identity(l, 3).commutes_with(&d));
    }

    #[test]
    fn scalar_detection() {
        let l = Level::new(3).unwrap();
        let two = CycloNum::from_int(l, 2);
        let m = Matrix::diagonal(l, &[two.clone(), two.clone()]);
        assert_eq!(m.as_scalar(), Some(two));
        let m2 = Matrix::diagonal(l, &[CycloNum::one(l), CycloNum::from_int(l, -1)]);
        assert_eq!(m2.as_scalar(), None);
        assert!(scalar_defect(&m2.to_c64()) > 0.5);
    }

    #[test]
    fn spectral_norm_of_rotation_is_one() {
        let t = 0.3f64;
        let m = DMatrix::from_row_slice(2, 2, &[c(t.cos()), c(-t.sin()), c(t.sin()), c(t.cos())]);
        assert!((spectral_norm(&m) - 1.0).abs() < 1e-14);
    }
}
