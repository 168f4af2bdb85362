//! Dense exact matrices. Vectors are plain `Vec<F::Elem>`; modules act on row
//! vectors from the right, so most callers use [`Matrix::vec_mul`] and
//! [`Matrix::solve_left`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn from_i64(field: &F, rows: usize, cols: usize, vals: &[i64]) -> Result<Self> {
        let data = vals.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, rows, cols, data)
    }

    pub fn field(&self) -> &F {
        &self.field
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
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j] = out.data[base + j].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { data, ..self.clone() }
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: &F::Elem) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i).sub(lambda);
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, mut e: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> F::Elem {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in self.row(k).iter().enumerate() {
                if !b.is_zero() {
                    out[j] = out[j].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for r in r0..r1 {
            data.extend_from_slice(&self.row(r)[c0..c1]);
        }
        Matrix {
            field: self.field.clone(),
            rows: r1 - r0,
            cols: c1 - c0,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column count".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row count".into()));
        }
        let mut out = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    pub fn block_diag(field: &F, blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn push_row(&mut self, row: &[F::Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            let prow: Vec<F::Elem> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (k, pv) in prow.iter().enumerate() {
                    if !pv.is_zero() {
                        let v = m.get(i, c + k).sub(&f.mul(pv));
                        m.set(i, c + k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self * v = 0}`; vector `t` has a 1 in the `t`-th free
    /// column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = reduced.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    /// Free columns matching [`Matrix::kernel_basis`].
    pub fn kernel_free_columns(&self) -> Vec<usize> {
        let pivots = self.rref().pivots;
        (0..self.cols).filter(|c| !pivots.contains(c)).collect()
    }

    /// Basis of `{v : v * self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<F::Elem>> {
        self.transpose().kernel_basis()
    }

    /// Solves `self * x = b`, free variables set to zero.
    pub fn solve_linear(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (r, v) in b.iter().enumerate() {
            aug.set(r, self.cols, v.clone());
        }
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solves `x * self = b` for a row vector `x`.
    pub fn solve_left(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        self.transpose().solve_linear(b)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Self::identity(&self.field, n)).ok()?;
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.submatrix(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Nilpotent iff `self^n = 0`.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// Distinct eigenvalues lying in the field, in a deterministic order.
    pub fn eigenvalues(&self) -> Vec<F::Elem> {
        if !self.is_square() || self.rows == 0 {
            return Vec::new();
        }
        let cands = self.field.eigenvalue_candidates(self.rows, &self.data);
        if self.field.characteristic() != 0 {
            return cands;
        }
        cands
            .into_iter()
            .filter(|l| self.shift(l).rank() < self.rows)
            .collect()
    }

    /// Nonzero rows of the reduced echelon form.
    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_rows(self)
    }
}

/// A subspace of `F^n` stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_rows(m: &Matrix<F>) -> Self {
        let Rref { reduced, pivots, rank } = m.rref();
        Subspace {
            basis: reduced.submatrix(0, rank, 0, m.cols()),
            pivots,
        }
    }

    pub fn from_vecs(field: &F, ambient: usize, vecs: &[Vec<F::Elem>]) -> Self {
        Self::from_rows(&Matrix::from_rows(field, ambient, vecs).expect("vector length"))
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` lies outside.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let c: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.vec_mul(&c);
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::from_rows(&self.basis.vstack(&other.basis).expect("same ambient"))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let f = self.basis.field().clone();
        let n = self.ambient();
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(&f, n);
        }
        // x*B1 = y*B2  <=>  (x, y) in the left kernel of [B1; -B2]
        let stacked = self
            .basis
            .vstack(&other.basis.scale(&f.from_i64(-1)))
            .expect("same ambient");
        let vecs: Vec<Vec<F::Elem>> = stacked
            .left_kernel()
            .iter()
            .map(|k| self.basis.vec_mul(&k[..self.dim()]))
            .collect();
        Self::from_vecs(&f, n, &vecs)
    }

    /// Unit vectors at non-pivot positions; they span a complement.
    pub fn complement_units(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rref_identity_and_zero() {
        let q = Rationals;
        let i = Matrix::identity(&q, 3);
        let r = i.rref();
        assert_eq!(r.reduced, i);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        let z = Matrix::zeros(&q, 2, 4);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_hand_elimination() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, 2, 2, &[2, 4, 1, 2]).unwrap();
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(&q, 2, 2, &[1, 2, 0, 0]).unwrap());
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        assert!(Matrix::identity(&q, 4).kernel_basis().is_empty());
        let k = Matrix::zeros(&q, 2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64(&f2, 1, 2, &[1, 1]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![f2.one(), f2.one()]]);
        // exhaust F_2^2
        let sols: Vec<(i64, i64)> = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .filter(|&(a, b)| (a + b) % 2 == 0)
            .collect();
        assert_eq!(sols.len(), 1 << m.kernel_basis().len());
    }

    #[test]
    fn solve_examples() {
        let q = Rationals;
        let b = vec![q.from_i64(3), q.from_i64(-1)];
        assert_eq!(Matrix::identity(&q, 2).solve_linear(&b).unwrap(), Some(b.clone()));
        let a = Matrix::from_i64(&q, 2, 2, &[1, 0, 1, 0]).unwrap();
        assert_eq!(a.solve_linear(&[q.from_i64(1), q.from_i64(2)]).unwrap(), None);
        let a = Matrix::from_i64(&q, 1, 2, &[1, 1]).unwrap();
        assert_eq!(
            a.solve_linear(&[q.one()]).unwrap(),
            Some(vec![q.one(), q.zero()])
        );
        assert!(matches!(a.solve_linear(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_and_eigen() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_i64(&f, 2, 2, &[2, 1, 0, 3]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let ev = m.eigenvalues();
        assert_eq!(ev, vec![f.from_i64(2), f.from_i64(3)]);
        let n = Matrix::from_i64(&f, 2, 2, &[0, 1, 0, 0]).unwrap();
        assert!(n.is_nilpotent());
        assert!(n.inverse().is_none());
    }

    #[test]
    fn subspace_ops() {
        let q = Rationals;
        let a = Subspace::from_vecs(&q, 3, &[vec![q.one(), q.zero(), q.zero()], vec![q.zero(), q.one(), q.zero()]]);
        let b = Subspace::from_vecs(&q, 3, &[vec![q.zero(), q.one(), q.one()], vec![q.zero(), q.zero(), q.one()]]);
        assert_eq!(a.intersect(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.contains(&[q.from_i64(5), q.from_i64(-2), q.zero()]));
        assert!(!a.contains(&[q.zero(), q.zero(), q.one()]));
        assert_eq!(a.complement_units(), vec![2]);
    }
}
