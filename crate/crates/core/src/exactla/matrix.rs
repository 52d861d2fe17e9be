use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.descriptor())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Row echelon data: reduced rows, pivot columns (one per nonzero row).
struct Echelon<F: Field> {
    reduced: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.equals(other)
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { field: field.clone(), rows, cols, data }
    }

    /// Build a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn column_vector(field: &F, v: Vec<F::Elem>) -> Self {
        Self { field: field.clone(), rows: v.len(), cols: 1, data: v }
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| self.field.elem_eq(a, b))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Ok(Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product `self ⊗ other`, index `(i*other.rows + k, j*other.cols + l)`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            if f.is_zero(a) {
                return f.zero();
            }
            f.mul(a, other.get(i % other.rows, j % other.cols))
        })
    }

    pub fn hstack(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Shape("empty hstack".into()))?;
        let rows = first.rows;
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(&first.field, rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j).clone());
                }
            }
            off += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Shape("empty vstack".into()))?;
        let cols = first.cols;
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            data.extend(m.data.iter().cloned());
        }
        Ok(Self { field: first.field.clone(), rows, cols, data })
    }

    /// Block diagonal matrix.
    pub fn block_diag(field: &F, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.get(i, j).clone());
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Gauss-Jordan elimination. Pivots are taken in the leftmost column that
    /// still has a nonzero entry, from the first eligible row in fixed order.
    fn echelon(&self) -> Echelon<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, row * m.cols + j);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let v = f.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..m.cols {
                    let pj = m.get(row, j);
                    if f.is_zero(pj) {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, pj));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let e = self.echelon();
        (e.reduced, e.pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(reduced.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Self {
        Self::from_columns(&self.field, self.cols, &self.kernel_basis())
    }

    /// Some `x` with `self * x = b`, free variables set to zero; `None` when inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let f = &self.field;
        let aug = Self::hstack(&[self, &Self::column_vector(f, b.to_vec())])?;
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solve `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Self) -> Result<Option<Self>> {
        if b.rows != self.rows {
            return Err(Error::Shape("solve_matrix row mismatch".into()));
        }
        let f = &self.field;
        let aug = Self::hstack(&[self, b])?;
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, reduced.get(r, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// For a matrix of full column rank, some `L` with `L * self = I`.
    pub fn left_inverse(&self) -> Result<Self> {
        let t = self.transpose();
        let ident = Self::identity(&self.field, self.cols);
        match t.solve_matrix(&ident)? {
            Some(x) => Ok(x.transpose()),
            None => Err(Error::Internal("left inverse of a rank-deficient matrix".into())),
        }
    }

    /// Indices of columns forming a basis of the column space, greedily from the left.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Map every entry into another field.
    pub fn map<G: Field>(&self, target: &G, mut f: impl FnMut(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }
}
