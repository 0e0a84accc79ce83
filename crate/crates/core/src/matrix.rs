//! Exact determinants and the Hadamard bound.

use std::ops::Div;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major square matrix.
pub type Matrix<T> = Vec<Vec<T>>;

fn check_square<T>(m: &Matrix<T>) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare);
    }
    Ok(n)
}

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every division performed is exact in an integral domain, so for `BigInt`
/// entries all intermediates stay integral.
pub fn det_fraction_free<T: Scalar + Div<Output = T>>(m: &Matrix<T>) -> Result<T> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(T::zero());
            };
            a.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign_flip { -d } else { d })
}

/// Largest dimension accepted by [`det_naive`].
pub const NAIVE_MAX_DIM: usize = 10;

/// Cofactor expansion along the first row. Exponential; test oracle only.
///
/// Works over any [`Scalar`], including polynomial entries, which makes it a
/// symbolic determinant when `T = UniPoly<BigInt>`.
pub fn det_naive<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    let n = check_square(m)?;
    if n > NAIVE_MAX_DIM {
        return Err(Error::MatrixTooLarge(n));
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor(m, 0, &cols))
}

fn cofactor<T: Scalar>(m: &Matrix<T>, row: usize, cols: &[usize]) -> T {
    if cols.is_empty() {
        return T::one();
    }
    let mut acc = T::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.clone() * cofactor(m, row + 1, &rest);
        acc = if idx % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Smallest integer `H` with `H^2 >= prod ||row||^2`, so `|det| <= H`.
pub fn hadamard_bound(rows: &[Vec<BigInt>]) -> BigUint {
    let prod = rows.iter().fold(BigUint::one(), |acc, row| {
        let norm2 = row.iter().fold(BigUint::zero(), |s, x| s + x.magnitude() * x.magnitude());
        acc * norm2
    });
    ceil_sqrt(&prod)
}

pub fn ceil_sqrt(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1u32
    }
}
