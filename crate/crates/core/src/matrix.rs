//! Dense exact matrices over `Q(i)`.
//!
//! Every basis the crate ever picks comes out of [`ExactMatrix::rref_decompose`],
//! which scans columns left to right and takes the first nonzero entry at or
//! below the current row as pivot. Nothing depends on entry sizes, so the
//! output is a pure function of the input.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::QiScalar;

/// Row-major dense matrix. Zero-sized shapes (`0×n`, `n×0`) are allowed and
/// behave as the unique maps to and from the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QiScalar>,
}

/// Output of [`ExactMatrix::rref_decompose`]: `transform · m = rref`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rref: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
    pub transform: ExactMatrix,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<QiScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                left: data.len(),
                right: rows * cols,
            });
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![QiScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = QiScalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[QiScalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is only consulted when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<QiScalar>>, cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, Vec::len);
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "ragged matrix rows",
                    left: row.len(),
                    right: cols,
                });
            }
            data.extend(row);
        }
        Ok(ExactMatrix {
            rows: r,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<QiScalar>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    context: "column length",
                    left: c.len(),
                    right: rows,
                });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    /// Integer entries; panics on ragged input. Mostly for tests and examples.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| QiScalar::from_int(x))
            })
            .collect();
        ExactMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Parses entries in the scalar text form; panics on bad input.
    pub fn from_strs(rows: &[&[&str]]) -> Self {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse().expect("scalar")).collect())
            .collect();
        Self::from_rows(parsed, 0).expect("rectangular rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[QiScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[QiScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<QiScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<QiScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<QiScalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &QiScalar) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        ExactMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        ExactMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn column_range(&self, start: usize, end: usize) -> Self {
        self.select_columns(&(start..end).collect::<Vec<_>>())
    }

    pub fn try_mul(&self, rhs: &ExactMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                left: self.cols,
                right: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[QiScalar]) -> Vec<QiScalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn try_add(&self, rhs: &ExactMatrix) -> Result<Self> {
        self.zip_with(rhs, "matrix sum", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &ExactMatrix) -> Result<Self> {
        self.zip_with(rhs, "matrix difference", |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &ExactMatrix,
        context: &'static str,
        f: impl Fn(&QiScalar, &QiScalar) -> QiScalar,
    ) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                context,
                left: self.rows * self.cols,
                right: rhs.rows * rhs.cols,
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &ExactMatrix) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "hstack",
                left: self.rows,
                right: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// `[self; rhs]`.
    pub fn vstack(&self, rhs: &ExactMatrix) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                context: "vstack",
                left: self.cols,
                right: rhs.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(ExactMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &ExactMatrix) -> Self {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &ExactMatrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Gauss–Jordan elimination with leftmost-pivot scanning.
    pub fn rref_decompose(&self) -> Rref {
        let (r, c) = self.shape();
        let mut a = self.clone();
        let mut t = Self::identity(r);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            let Some(p) = (row..r).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            t.swap_rows(row, p);
            let inv = a[(row, col)].inv().expect("pivot is nonzero");
            a.scale_row(row, &inv);
            t.scale_row(row, &inv);
            for i in 0..r {
                if i != row && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    a.sub_row_multiple(i, row, &f);
                    t.sub_row_multiple(i, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            rank: pivots.len(),
            rref: a,
            pivots,
            transform: t,
        }
    }

    /// Pivot columns only, without tracking the transform.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let (r, c) = self.shape();
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            let Some(p) = (row..r).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let inv = a[(row, col)].inv().expect("pivot is nonzero");
            a.scale_row(row, &inv);
            for i in row + 1..r {
                if !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    a.sub_row_multiple(i, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.pivot_columns().len()
    }

    /// Kernel basis as columns: one vector per free column of the rref, with
    /// a 1 in that free slot.
    pub fn kernel(&self) -> ExactMatrix {
        let Rref { rref, pivots, .. } = self.rref_decompose();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k[(f, col)] = QiScalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, col)] = -&rref[(i, f)];
            }
        }
        k
    }

    /// Image basis as columns: the pivot columns of `self`.
    pub fn image(&self) -> ExactMatrix {
        self.select_columns(&self.pivot_columns())
    }

    /// `(kernel, image)` as vector lists.
    pub fn subspace_bases(&self) -> (Vec<Vec<QiScalar>>, Vec<Vec<QiScalar>>) {
        (self.kernel().columns(), self.image().columns())
    }

    pub fn determinant(&self) -> Result<QiScalar> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                context: "determinant",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = QiScalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[(i, col)].is_zero()) else {
                return Ok(QiScalar::zero());
            };
            if p != col {
                a.swap_rows(col, p);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in col + 1..n {
                if !a[(i, col)].is_zero() {
                    let f = &a[(i, col)] * &inv;
                    a.sub_row_multiple(i, col, &f);
                }
            }
            det = det * pivot;
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                context: "inverse",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let d = self.rref_decompose();
        if d.rank < self.rows {
            return Err(Error::Singular("matrix"));
        }
        Ok(d.transform)
    }

    /// Algebraic pseudoinverse from the rank factorization `m = P·R`, where
    /// `P` holds the pivot columns and `R` the nonzero rref rows.
    pub fn pseudoinverse(&self) -> Self {
        let Rref {
            pivots,
            rank,
            transform,
            ..
        } = self.rref_decompose();
        let mut e = Self::zeros(self.cols, rank);
        for (i, &p) in pivots.iter().enumerate() {
            e[(p, i)] = QiScalar::one();
        }
        &e * &transform.row_range(0, rank)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: &QiScalar) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            if !x.is_zero() {
                *x *= c;
            }
        }
    }

    /// `row[i] -= f · row[src]`.
    fn sub_row_multiple(&mut self, i: usize, src: usize, f: &QiScalar) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = f * s;
                self.data[i * self.cols + j] -= &delta;
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = QiScalar;
    fn index(&self, (i, j): (usize, usize)) -> &QiScalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut QiScalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; the `try_*` methods return errors.
impl Mul<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix product shapes")
    }
}

impl Add<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).expect("matrix sum shapes")
    }
}

impl Sub<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).expect("matrix difference shapes")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&-QiScalar::one())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Serialized as an array of rows of scalar strings.
impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<QiScalar>>::deserialize(d)?;
        ExactMatrix::from_rows(rows, 0).map_err(serde::de::Error::custom)
    }
}
