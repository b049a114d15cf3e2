//! Brute-force exact determinant oracles.
//!
//! [`det_laplace`] is plain cofactor expansion and shares nothing with
//! [`det_bareiss`], which runs fraction-free elimination over the integers
//! after clearing row denominators.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::rational::Rational;

/// Largest dimension cofactor expansion accepts unless raised explicitly.
pub const LAPLACE_DEFAULT_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("laplace expansion limited to n <= {limit}, got n = {n}")]
    TooLarge { n: usize, limit: usize },
}

fn check_square(m: &ExactMatrix) -> Result<usize, DetError> {
    if !m.is_square() {
        return Err(DetError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(m.rows())
}

pub fn det_laplace(m: &ExactMatrix) -> Result<Rational, DetError> {
    det_laplace_with_limit(m, LAPLACE_DEFAULT_MAX)
}

/// Cofactor expansion along the first row, refusing `n > limit`.
///
/// Minors are cached by their column subset, so the cost is `O(2^n n)`
/// rational operations instead of `O(n!)`.
pub fn det_laplace_with_limit(m: &ExactMatrix, limit: usize) -> Result<Rational, DetError> {
    let n = check_square(m)?;
    // column subsets are u64 masks
    let limit = limit.min(63);
    if n > limit {
        return Err(DetError::TooLarge { n, limit });
    }
    let mut minors = HashMap::new();
    let all = (1u64 << n) - 1;
    Ok(expand(m, all, &mut minors))
}

/// Determinant of the minor on the last `|cols|` rows and the columns in `cols`.
fn expand(m: &ExactMatrix, cols: u64, minors: &mut HashMap<u64, Rational>) -> Rational {
    let size = cols.count_ones() as usize;
    let row = m.rows() - size;
    if size == 1 {
        return m.get(row, cols.trailing_zeros() as usize).clone();
    }
    if let Some(cached) = minors.get(&cols) {
        return cached.clone();
    }
    let mut total = Rational::zero();
    let mut rest = cols;
    let mut pos = 0;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let entry = m.get(row, c);
        if !entry.is_zero() {
            let term = entry * &expand(m, cols & !(1u64 << c), minors);
            if pos % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
        }
        pos += 1;
    }
    minors.insert(cols, total.clone());
    total
}

pub fn det_bareiss(m: &ExactMatrix) -> Result<Rational, DetError> {
    let n = check_square(m)?;
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let row = m.row(r);
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect::<Vec<_>>(),
        );
        scale *= lcm;
    }
    let det = det_bareiss_integer(rows);
    Ok(Rational::new(det, scale).expect("row scales are positive"))
}

/// Fraction-free elimination over the integers. Pivots on the first nonzero
/// entry of each column; every division is exact.
pub fn det_bareiss_integer(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let num = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
