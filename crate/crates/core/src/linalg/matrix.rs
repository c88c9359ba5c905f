//! Dense row-major matrices over an exact field.

use super::field::{Elem, Field};
use super::fpoly::{inv_u64, mulmod};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Elem>,
}

fn belongs(field: &Field, e: &Elem) -> bool {
    match (field, e) {
        (Field::Rationals, Elem::Q(_)) => true,
        (Field::Prime(p), Elem::P(x)) => x < p,
        (Field::Extension(x), Elem::E(c)) => c.len() == x.degree(),
        _ => false,
    }
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if !data.iter().all(|e| belongs(&field, e)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Elem>(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    pub fn from_i64(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    /// Columns given as vectors of length `rows`.
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vec<Elem>]) -> Matrix {
        Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        Matrix::from_fn(field, rows.len(), cols, |i, j| rows[i][j].clone())
    }

    pub fn column_vector(field: &Field, v: &[Elem]) -> Matrix {
        Matrix::from_fn(field, v.len(), 1, |i, _| v[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn residues(&self) -> Option<(u64, Vec<u64>)> {
        match self.field {
            Field::Prime(p) => Some((
                p,
                self.data
                    .iter()
                    .map(|e| if let Elem::P(x) = e { *x } else { 0 })
                    .collect(),
            )),
            _ => None,
        }
    }

    fn from_residues(field: &Field, rows: usize, cols: usize, v: Vec<u64>) -> Matrix {
        Matrix {
            rows,
            cols,
            field: field.clone(),
            data: v.into_iter().map(Elem::P).collect(),
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let (n, m, k) = (self.rows, other.cols, self.cols);
        if let (Some((p, a)), Some((_, b))) = (self.residues(), other.residues()) {
            let mut out = vec![0u64; n * m];
            for i in 0..n {
                for l in 0..k {
                    let x = a[i * k + l];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..m {
                        let y = b[l * m + j];
                        if y != 0 {
                            out[i * m + j] = (out[i * m + j] + mulmod(x, y, p)) % p;
                        }
                    }
                }
            }
            return Matrix::from_residues(&self.field, n, m, out);
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, n, m);
        for i in 0..n {
            for l in 0..k {
                let x = self.get(i, l);
                if f.is_zero(x) {
                    continue;
                }
                for j in 0..m {
                    let y = other.get(l, j);
                    if !f.is_zero(y) {
                        let t = f.mul(x, y);
                        let cur = &mut out.data[i * m + j];
                        *cur = f.add(cur, &t);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "matrix sum shape mismatch"
        );
        let f = &self.field;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f.clone(),
            data: self.data.iter().map(|a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, s: &Elem) -> Matrix {
        let f = &self.field;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f.clone(),
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field.clone(),
            data,
        }
    }

    pub fn vstack_all(field: &Field, cols: usize, parts: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, 0, cols);
        for p in parts {
            out = out.vstack(p);
        }
        out
    }

    pub fn hstack_all(field: &Field, rows: usize, parts: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, 0);
        for p in parts {
            out = out.hstack(p);
        }
        out
    }

    pub fn block_diag(field: &Field, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, r, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            out.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(&self.field, rows, cols, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, idx.len(), self.cols, |i, j| {
            self.get(idx[i], j).clone()
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        self.mul(&Matrix::column_vector(&self.field, v)).data
    }

    pub fn trace(&self) -> Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut r = Matrix::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Reduced row echelon form with leftmost-nonzero pivoting; returns the
    /// reduced matrix and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        if let Some((p, mut a)) = self.residues() {
            let piv = rref_fp(&mut a, self.rows, self.cols, p);
            return (
                Matrix::from_residues(&self.field, self.rows, self.cols, a),
                piv,
            );
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let t = f.mul(&factor, m.get(r, j));
                    let v = f.sub(m.get(i, j), &t);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the right kernel.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let f = &self.field;
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &pc) in piv.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Solves `self * x = b`; `None` when inconsistent, otherwise a particular
    /// solution (free variables zero) and a kernel basis.
    pub fn solve_affine(&self, b: &Matrix) -> Result<Option<(Matrix, Matrix)>> {
        if self.field != b.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "{} rows against {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let f = &self.field;
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (i, &pc) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some((x, self.kernel_basis())))
    }

    /// Unique solution of `self * x = b`, assuming the columns are independent.
    pub fn solve_unique(&self, b: &Matrix) -> Option<Matrix> {
        self.solve_affine(b).ok().flatten().map(|(x, _)| x)
    }

    /// Canonical basis of the column space (columns of the result are the
    /// transposed nonzero rows of the row echelon form of the transpose).
    pub fn column_space(&self) -> Matrix {
        let (r, piv) = self.transpose().rref();
        let k = piv.len();
        Matrix::from_fn(&self.field, self.rows, k, |i, j| r.get(j, i).clone())
    }

    /// Canonical basis of the row space, as rows.
    pub fn row_space(&self) -> Matrix {
        let (r, piv) = self.rref();
        r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(&self.field, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Flattened entries as a column vector.
    pub fn flatten(&self) -> Vec<Elem> {
        self.data.clone()
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, v: &[Elem]) -> Matrix {
        Matrix {
            rows,
            cols,
            field: field.clone(),
            data: v.to_vec(),
        }
    }

    pub fn map_entries<F: Fn(&Elem) -> Elem>(&self, field: &Field, f: F) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: field.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }
}

fn rref_fp(a: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_u64(a[r * cols + c], p).unwrap();
        for j in c..cols {
            a[r * cols + j] = mulmod(a[r * cols + j], inv, p);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[i * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let t = mulmod(factor, a[r * cols + j], p);
                a[i * cols + j] = (a[i * cols + j] + p - t) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Coordinates of the columns of `v` in the basis given by the columns of
/// `basis` (which must be independent and span them).
pub fn coords_in(basis: &Matrix, v: &Matrix) -> Option<Matrix> {
    if basis.cols() == 0 {
        return if v.is_zero() {
            Some(Matrix::zeros(v.field(), 0, v.cols()))
        } else {
            None
        };
    }
    basis.solve_unique(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_trivial_kernel() {
        let f = Field::prime(2).unwrap();
        assert_eq!(Matrix::identity(&f, 2).kernel_basis().cols(), 0);
    }

    #[test]
    fn all_ones_row_kernel() {
        let f = Field::prime(2).unwrap();
        let m = Matrix::from_i64(&f, &[vec![1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col(0), vec![f.one(), f.one()]);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = Field::Rationals;
        let a = Matrix::identity(&f, 3);
        let b = Matrix::from_i64(&f, &[vec![1], vec![-2], vec![5]]);
        let (x, k) = a.solve_affine(&b).unwrap().unwrap();
        assert_eq!(x, b);
        assert_eq!(k.cols(), 0);
        let z = Matrix::zeros(&f, 3, 3);
        assert!(z.solve_affine(&b).unwrap().is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::Rationals;
        let a = Matrix::from_i64(&f, &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(&f, 2));
        assert!(Matrix::from_i64(&f, &[vec![1, 1], vec![1, 1]])
            .inverse()
            .is_none());
    }
}
