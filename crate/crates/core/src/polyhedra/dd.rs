//! Double description: extreme rays of a pointed cone `{y : R y ≥ 0}`.
//!
//! Rows are inserted in index order after an initial simplicial cone built
//! from the first independent rows. Adjacency is decided combinatorially on
//! zero sets. Arithmetic runs on checked `i128` and restarts on `BigInt`
//! after an overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;

trait DdNum: Clone + Send + Sync + PartialEq {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn sign(&self) -> i8;
    fn dot(a: &[Self], b: &[Self]) -> Option<Self>;
    /// Primitive form of `ap·q − aq·p`.
    fn combine(ap: &Self, q: &[Self], aq: &Self, p: &[Self]) -> Option<Vec<Self>>;
}

impl DdNum for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn sign(&self) -> i8 {
        self.signum() as i8
    }

    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        let mut acc: i128 = 0;
        for (x, y) in a.iter().zip(b) {
            if *x != 0 && *y != 0 {
                acc = acc.checked_add(x.checked_mul(*y)?)?;
            }
        }
        Some(acc)
    }

    fn combine(ap: &Self, q: &[Self], aq: &Self, p: &[Self]) -> Option<Vec<Self>> {
        let mut out = Vec::with_capacity(q.len());
        let mut g: i128 = 0;
        for (qi, pi) in q.iter().zip(p) {
            let v = ap.checked_mul(*qi)?.checked_sub(aq.checked_mul(*pi)?)?;
            g = g.gcd(&v);
            out.push(v);
        }
        if g > 1 {
            for v in out.iter_mut() {
                *v /= g;
            }
        }
        Some(out)
    }
}

impl DdNum for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        let mut acc = BigInt::zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        Some(acc)
    }

    fn combine(ap: &Self, q: &[Self], aq: &Self, p: &[Self]) -> Option<Vec<Self>> {
        let mut out: Vec<BigInt> = q.iter().zip(p).map(|(qi, pi)| ap * qi - aq * pi).collect();
        let mut g = BigInt::zero();
        for v in &out {
            g = g.gcd(v);
        }
        if g > BigInt::one() {
            for v in out.iter_mut() {
                *v /= &g;
            }
        }
        Some(out)
    }
}

enum Failure {
    Overflow,
    Fatal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Fatal(e)
    }
}

#[derive(Clone)]
struct Ray<T> {
    v: Vec<T>,
    zeros: Vec<u64>,
}

fn popcount(bits: &[u64]) -> u32 {
    bits.iter().map(|w| w.count_ones()).sum()
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

/// Primitive integer scaling of a rational vector, positive multiple.
fn integer_column(col: &[Rational]) -> Vec<BigInt> {
    crate::rational::primitive_scaling(col).0
}

/// Extreme rays of `{y : rows·y ≥ 0}`, each as a primitive integer vector,
/// sorted. Fails with `UnboundedPolyhedron` when the cone has a lineality
/// space.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize, budget: &Budget) -> Result<Vec<Vec<BigInt>>> {
    match run::<i128>(rows, dim, budget) {
        Ok(r) => Ok(r),
        Err(Failure::Fatal(e)) => Err(e),
        Err(Failure::Overflow) => match run::<BigInt>(rows, dim, budget) {
            Ok(r) => Ok(r),
            Err(Failure::Fatal(e)) => Err(e),
            Err(Failure::Overflow) => unreachable!("BigInt arithmetic does not overflow"),
        },
    }
}

fn run<T: DdNum>(rows: &[Vec<BigInt>], dim: usize, budget: &Budget) -> std::result::Result<Vec<Vec<BigInt>>, Failure> {
    let m = rows.len();
    let words = m.div_ceil(64).max(1);
    let rat: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let basis = linalg::independent_rows(&rat, dim);
    if basis.len() < dim {
        return Err(Error::UnboundedPolyhedron.into());
    }
    let trows: Vec<Vec<T>> = rows
        .iter()
        .map(|r| r.iter().map(T::from_big).collect::<Option<Vec<T>>>())
        .collect::<Option<_>>()
        .ok_or(Failure::Overflow)?;

    // columns of the inverse of the basis submatrix
    let mut augmented: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut row = rat[r].clone();
            row.extend((0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    augmented = linalg::rref(&augmented, 2 * dim).rows;
    let mut rays: Vec<Ray<T>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let col: Vec<Rational> = augmented.iter().map(|row| row[dim + j].clone()).collect();
        let v: Vec<T> = integer_column(&col).iter().map(T::from_big).collect::<Option<_>>().ok_or(Failure::Overflow)?;
        let mut zeros = vec![0u64; words];
        for (i, &r) in basis.iter().enumerate() {
            if i != j {
                set_bit(&mut zeros, r);
            }
        }
        rays.push(Ray { v, zeros });
    }

    let mut in_basis = vec![false; m];
    for &r in &basis {
        in_basis[r] = true;
    }
    let need = dim.saturating_sub(2) as u32;
    let bytes_each = dim * std::mem::size_of::<T>() + words * 8 + 64;

    for (row_idx, row) in trows.iter().enumerate() {
        if in_basis[row_idx] {
            continue;
        }
        budget.check_time("double description")?;
        let values: Vec<T> = rays
            .par_iter()
            .map(|r| T::dot(row, &r.v))
            .collect::<Option<Vec<T>>>()
            .ok_or(Failure::Overflow)?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].sign() > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].sign() < 0).collect();
        let zer: Vec<usize> = (0..rays.len()).filter(|&i| values[i].sign() == 0).collect();

        let mut next: Vec<Ray<T>> = Vec::with_capacity(pos.len() + zer.len());
        if !neg.is_empty() {
            let fresh: Vec<Option<Vec<Ray<T>>>> = pos
                .par_iter()
                .map(|&p| {
                    if budget.expired() {
                        return Some(Vec::new());
                    }
                    let mut out = Vec::new();
                    for &q in &neg {
                        let common = and(&rays[p].zeros, &rays[q].zeros);
                        if popcount(&common) < need {
                            continue;
                        }
                        let adjacent = rays
                            .iter()
                            .enumerate()
                            .all(|(r, ray)| r == p || r == q || !is_subset(&common, &ray.zeros));
                        if !adjacent {
                            continue;
                        }
                        let v = T::combine(&values[p], &rays[q].v, &values[q], &rays[p].v)?;
                        let mut zeros = common;
                        set_bit(&mut zeros, row_idx);
                        out.push(Ray { v, zeros });
                    }
                    Some(out)
                })
                .collect();
            budget.check_time("double description")?;
            for &p in &pos {
                next.push(rays[p].clone());
            }
            for &z in &zer {
                let mut r = rays[z].clone();
                set_bit(&mut r.zeros, row_idx);
                next.push(r);
            }
            for batch in fresh {
                next.extend(batch.ok_or(Failure::Overflow)?);
            }
        } else {
            for (i, mut r) in rays.into_iter().enumerate() {
                if values[i].sign() == 0 {
                    set_bit(&mut r.zeros, row_idx);
                }
                next.push(r);
            }
        }
        rays = next;
        budget.check_rays(rays.len(), bytes_each)?;
    }

    let mut out: Vec<Vec<BigInt>> = rays.iter().map(|r| r.v.iter().map(T::to_big).collect()).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
