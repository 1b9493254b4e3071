use std::cmp::Ordering;

use super::{Field, OrderedField, Ring};
use crate::error::{Error, Result};

/// A dense row-major matrix whose entries all belong to one field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    /// Builds a matrix from rows, rejecting ragged input and mixed fields.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
            return Err(Error::malformed(format!(
                "row {i} has {} entries, expected {c}",
                row.len()
            )));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::malformed(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(first) = data.first() {
            let tag = first.tag();
            if let Some(bad) = data.iter().find(|x| x.tag() != tag) {
                return Err(Error::malformed(format!(
                    "mixed-field entries: {} and {}",
                    tag,
                    bad.tag()
                )));
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(rows, cols, data)
    }

    /// The identity matrix with entries modelled on `unit`'s field.
    pub fn identity(n: usize, unit: &T) -> Self {
        let zero = unit.zero_like();
        let one = unit.one_like();
        let data = (0..n * n)
            .map(|k| if k / n == k % n { one.clone() } else { zero.clone() })
            .collect();
        Self { rows: n, cols: n, data }
    }

    pub fn column(values: Vec<T>) -> Result<Self> {
        let n = values.len();
        Self::from_vec(n, 1, values)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::malformed(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let Some(zero) = x.first().or(self.data.first()).map(Ring::zero_like) else {
            return Ok(Vec::new());
        };
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(zero.clone(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rank(&self) -> usize {
        T::matrix_rank(self)
    }

    /// Solves `self · X = rhs` for a block of right-hand sides.
    pub fn solve_many(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        T::matrix_solve(self, rhs)
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Exact rank by elimination over the entry field.
pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    m.rank()
}

/// Exact unique solution of `m · x = rhs`; errors with the rank when `m` is singular.
pub fn solve_linear<T: Field>(m: &Matrix<T>, rhs: &[T]) -> Result<Vec<T>> {
    if rhs.len() != m.rows() {
        return Err(Error::malformed(format!(
            "right-hand side of length {} for {} rows",
            rhs.len(),
            m.rows()
        )));
    }
    let b = Matrix::column(rhs.to_vec())?;
    let x = m.solve_many(&b)?;
    let x: Vec<T> = (0..x.rows()).map(|i| x.get(i, 0).clone()).collect();
    debug_assert!(m.mul_vec(&x).map(|mx| mx == rhs).unwrap_or(false));
    Ok(x)
}

/// Plain Gaussian elimination rank, generic over the field (no Bareiss specialisation).
pub fn gauss_rank<T: Field>(m: &Matrix<T>) -> usize {
    let mut a = m.data.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        swap_rows(&mut a, cols, r, p);
        let inv = a[r * cols + c].inverse().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i * cols + c].is_zero() {
                continue;
            }
            let factor = a[i * cols + c].clone() * inv.clone();
            for j in c..cols {
                let t = factor.clone() * a[r * cols + j].clone();
                a[i * cols + j] = a[i * cols + j].clone() - t;
            }
        }
        r += 1;
    }
    r
}

fn swap_rows<T>(a: &mut [T], cols: usize, i: usize, j: usize) {
    if i != j {
        for c in 0..cols {
            a.swap(i * cols + c, j * cols + c);
        }
    }
}

/// Gauss–Jordan on `[m | rhs]`.
pub(crate) fn gauss_solve<T: Field>(m: &Matrix<T>, rhs: &Matrix<T>) -> Result<Matrix<T>> {
    let n = m.rows;
    if m.cols != n {
        return Err(Error::malformed(format!(
            "solve needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    if rhs.rows != n {
        return Err(Error::malformed(format!(
            "right-hand side has {} rows, matrix has {n}",
            rhs.rows
        )));
    }
    let k = rhs.cols;
    let w = n + k;
    let mut a = Vec::with_capacity(n * w);
    for i in 0..n {
        a.extend(m.row(i).iter().cloned());
        a.extend(rhs.row(i).iter().cloned());
    }
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i * w + c].is_zero()) else {
            return Err(Error::Singular {
                rank: gauss_rank(m),
                size: n,
            });
        };
        swap_rows(&mut a, w, c, p);
        let inv = a[c * w + c].inverse().expect("nonzero pivot");
        for j in c..w {
            a[c * w + j] = a[c * w + j].clone() * inv.clone();
        }
        for i in 0..n {
            if i == c || a[i * w + c].is_zero() {
                continue;
            }
            let factor = a[i * w + c].clone();
            for j in c..w {
                let t = factor.clone() * a[c * w + j].clone();
                a[i * w + j] = a[i * w + j].clone() - t;
            }
        }
    }
    let data = (0..n).flat_map(|i| a[i * w + n..(i + 1) * w].to_vec()).collect();
    Matrix::from_vec(n, k, data)
}

/// Result of a symmetric LDLᵀ factorisation.
#[derive(Clone, Debug, PartialEq)]
pub struct Inertia<T> {
    pub is_psd: bool,
    pub rank: usize,
    /// Diagonal pivots in elimination order.
    pub pivots: Vec<T>,
}

/// Pivoted LDLᵀ of a symmetric matrix over an ordered field.
///
/// Diagonal pivots are taken while a nonzero diagonal entry remains. If the
/// remaining block has a zero diagonal but nonzero off-diagonal entries the
/// matrix is indefinite, and the block's rank is finished by plain elimination.
pub fn inertia_psd_rank<T: OrderedField>(g: &Matrix<T>) -> Result<Inertia<T>> {
    if !g.is_symmetric() {
        return Err(Error::malformed("inertia needs a symmetric matrix"));
    }
    let n = g.rows;
    let mut s = g.data.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut is_psd = true;
    let mut rank = 0;
    loop {
        let Some(pos) = active.iter().position(|&i| !s[i * n + i].is_zero()) else {
            let rest: Vec<T> = active
                .iter()
                .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                .map(|(i, j)| s[i * n + j].clone())
                .collect();
            if rest.iter().any(|x| !x.is_zero()) {
                is_psd = false;
                let block = Matrix::from_vec(active.len(), active.len(), rest)?;
                rank += gauss_rank(&block);
            }
            break;
        };
        let p = active.remove(pos);
        let d = s[p * n + p].clone();
        if d.signum() == Ordering::Less {
            is_psd = false;
        }
        let inv = d.inverse().expect("nonzero pivot");
        for &i in &active {
            let lip = s[i * n + p].clone() * inv.clone();
            if lip.is_zero() {
                continue;
            }
            for &j in &active {
                let t = lip.clone() * s[p * n + j].clone();
                s[i * n + j] = s[i * n + j].clone() - t;
            }
        }
        pivots.push(d);
        rank += 1;
    }
    Ok(Inertia { is_psd, rank, pivots })
}
