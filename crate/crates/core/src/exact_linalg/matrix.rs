use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::rational::Rational;
use crate::error::{input, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return input("matrix rows have different lengths");
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return input("matrix columns have different lengths");
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduces the leading `pivot_cols` columns to reduced row echelon form in
    /// place. Pivots are taken column by column, each from the first row at or
    /// below the current one with a nonzero entry. Returns the pivot columns.
    fn rref(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].recip();
            for j in col..self.cols {
                let v = &self[(row, j)] * &inv;
                self[(row, j)] = v;
            }
            let pivot_row: Vec<Rational> = self.row(row).to_vec();
            for i in 0..self.rows {
                if i == row || self[(i, col)].is_zero() {
                    continue;
                }
                let f = self[(i, col)].clone();
                for j in col..self.cols {
                    if !pivot_row[j].is_zero() {
                        let v = &self[(i, j)] - &f * &pivot_row[j];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Solves `A x = b` exactly. Free variables are set to zero, so the returned
/// solution is determined by the pivot order (leftmost columns first).
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if a.rows() != b.len() {
        return input(format!(
            "dimension mismatch: matrix has {} rows, right-hand side has {} entries",
            a.rows(),
            b.len()
        ));
    }
    let mut aug = RatMatrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols())] = b[i].clone();
    }
    let pivots = aug.rref(a.cols());
    let rhs = a.cols();
    if (pivots.len()..a.rows()).any(|i| !aug[(i, rhs)].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[(row, rhs)].clone();
    }
    Ok(Some(x))
}

pub fn rank(a: &RatMatrix) -> usize {
    let mut m = a.clone();
    m.rref(a.cols()).len()
}

/// A nonzero kernel vector of `a`, or `None` when the kernel is trivial.
/// The first free column (in pivot order) is set to one, other free columns
/// to zero.
pub fn kernel_vector(a: &RatMatrix) -> Option<Vec<Rational>> {
    let mut m = a.clone();
    let pivots = m.rref(a.cols());
    let free = (0..a.cols()).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rational::zero(); a.cols()];
    x[free] = super::rational::one();
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = -m[(row, free)].clone();
    }
    Some(x)
}

/// Dimension of the affine hull: rank of the differences to the first point.
pub fn affine_dim(points: &[Vec<Rational>]) -> Result<usize> {
    let Some(first) = points.first() else {
        return input("affine_dim of an empty point list");
    };
    if points.iter().any(|p| p.len() != first.len()) {
        return input("points have different dimensions");
    }
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() || first.is_empty() {
        return Ok(0);
    }
    Ok(rank(&RatMatrix::from_rows(diffs)?))
}
