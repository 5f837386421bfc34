//! Dense exact matrices over Q(i).
//!
//! Sizes here are tiny (weight-module truncations and stacked basis images),
//! so a dense representation with plain Gaussian elimination over the exact
//! field is both simple and fast. Rank and nullspace are exact; there are no
//! pivoting tolerances.

use crate::exactnum::GaussRational;
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRational>,
}

/// One nonzero entry in the sparse triplet export, with arbitrary-precision
/// parts carried as decimal strings.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub re_num: String,
    pub re_den: String,
    pub im_num: String,
    pub im_den: String,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![GaussRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, GaussRational::one());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussRational,
    ) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &GaussRational {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: GaussRational) {
        self.data[row * self.cols + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussRational::is_zero)
    }

    pub fn scale(&self, factor: &GaussRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// Columns `cols` of `self`, stacked left to right in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |r, k| self.get(r, cols[k]).clone())
    }

    /// Row-major flattening, used to treat a matrix as a vector.
    pub fn flatten(&self) -> Vec<GaussRational> {
        self.data.clone()
    }

    /// Exact rank of a list of equal-length vectors.
    pub fn rank_of_vectors(vectors: &[Vec<GaussRational>]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        let cols = vectors[0].len();
        let mut work: Vec<Vec<GaussRational>> = vectors.to_vec();
        for v in &work {
            assert_eq!(v.len(), cols, "ragged vector list");
        }
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot_row) = (rank..work.len()).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(rank, pivot_row);
            let inv = work[rank][col].inverse().expect("pivot is nonzero");
            for x in work[rank].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..work.len() {
                if r != rank && !work[r][col].is_zero() {
                    let factor = work[r][col].clone();
                    for c in 0..cols {
                        let delta = &factor * &work[rank][c];
                        work[r][c] = &work[r][c] - &delta;
                    }
                }
            }
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        rank
    }

    /// Exact rank via Gaussian elimination over Q(i).
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<GaussRational>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        Matrix::rank_of_vectors(&rows)
    }

    /// Basis of the right nullspace `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<GaussRational>> {
        // Reduced row echelon form, then one basis vector per free column.
        let mut work: Vec<Vec<GaussRational>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut pivot_cols = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (next_row..work.len()).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(next_row, pivot_row);
            let inv = work[next_row][col].inverse().expect("pivot is nonzero");
            for x in work[next_row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..work.len() {
                if r != next_row && !work[r][col].is_zero() {
                    let factor = work[r][col].clone();
                    for c in 0..self.cols {
                        let delta = &factor * &work[next_row][c];
                        work[r][c] = &work[r][c] - &delta;
                    }
                }
            }
            pivot_cols.push(col);
            next_row += 1;
            if next_row == work.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for free_col in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![GaussRational::zero(); self.cols];
            v[free_col] = GaussRational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&work[row][free_col];
            }
            basis.push(v);
        }
        basis
    }

    /// Nonzero entries in row-major order.
    pub fn to_triplets(&self) -> Vec<MatrixEntry> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    let (re_num, re_den, im_num, im_den) = v.to_parts_strings();
                    out.push(MatrixEntry {
                        row: r,
                        col: c,
                        re_num,
                        re_den,
                        im_num,
                        im_den,
                    });
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let sum = out.get(r, c) + &(a * b);
                    out.set(r, c, sum);
                }
            }
        }
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
