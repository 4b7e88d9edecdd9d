//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[free] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rref(matrix: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut rows: Vec<Vec<Rational>> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, ncols }
}

pub fn rank(matrix: &[Vec<Rational>], ncols: usize) -> usize {
    rref(matrix, ncols).rank()
}

pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    rref(matrix, ncols).nullspace()
}

/// Maximum number of affinely independent points among `points`.
pub fn affine_rank(points: &[Vec<Rational>]) -> Result<usize> {
    let first = points.first().ok_or_else(|| Error::InvalidArgument("empty point set".into()))?;
    let d = first.len();
    let diffs: Vec<Vec<Rational>> =
        points[1..].iter().map(|p| p.iter().zip(first).map(|(x, y)| x - y).collect()).collect();
    Ok(rank(&diffs, d) + 1)
}

/// Unique solution of the square system `M x = rhs`, `None` when singular.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = matrix.len();
    let augmented: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let e = rref(&augmented, n + 1);
    if e.rank() != n || e.pivots.contains(&n) {
        return None;
    }
    Some(e.rows.iter().map(|row| row[n].clone()).collect())
}

/// Indices of a maximal linearly independent subset of rows, chosen greedily
/// in order.
pub fn independent_rows(matrix: &[Vec<Rational>], ncols: usize) -> Vec<usize> {
    // incremental elimination against a reduced basis
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in matrix.iter().enumerate() {
        let mut v = row.clone();
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        if let Some(p) = (0..ncols).find(|&j| !v[j].is_zero()) {
            let inv = Rational::one() / &v[p];
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
            }
            basis.push((p, v));
            chosen.push(i);
            if chosen.len() == ncols {
                break;
            }
        }
    }
    chosen
}
