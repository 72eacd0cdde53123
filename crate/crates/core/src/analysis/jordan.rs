//! Jordan types of unipotent matrices and centralizer dimensions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::Mat;
use crate::ring::{FqCtx, FqElement, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JordanError {
    /// `m - 1` is not nilpotent.
    NotUnipotent,
}

impl fmt::Display for JordanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix is not unipotent")
    }
}

/// Block-size partition and multiplicative order of a unipotent matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanType {
    /// Block sizes, largest first; sizes sum to the dimension.
    pub partition: Vec<usize>,
    pub order: u64,
}

impl JordanType {
    pub fn max_block(&self) -> usize {
        self.partition.first().copied().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.partition.len() == 1
    }
}

/// Jordan partition from the rank sequence of `(m - 1)^j`, plus the
/// multiplicative order of `m` (a power of the characteristic).
pub fn jordan_type(m: &Mat<FqElement>) -> Result<JordanType, JordanError> {
    assert_eq!(m.nrows(), m.ncols());
    let n = m.nrows();
    let sample = m.sample();
    let nil = m.sub(&Mat::identity(n, sample));
    if !nil.pow(n as u64).is_zero() {
        return Err(JordanError::NotUnipotent);
    }

    // ranks of powers; blocks of size >= j number rank(N^(j-1)) - rank(N^j)
    let mut ranks = vec![n];
    let mut power = Mat::identity(n, sample);
    while !power.is_zero() {
        power = power.mul(&nil);
        ranks.push(power.rank());
    }
    let mut partition = Vec::new();
    for j in 1..ranks.len() {
        let at_least_j = ranks[j - 1] - ranks[j];
        let at_least_next = if j + 1 < ranks.len() {
            ranks[j] - ranks[j + 1]
        } else {
            0
        };
        for _ in 0..at_least_j.saturating_sub(at_least_next) {
            partition.push(j);
        }
    }
    partition.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(partition.iter().sum::<usize>(), n);

    // order = p^k with p^k >= max block > p^(k-1)
    let p = sample.characteristic();
    let max_block = partition.first().copied().unwrap_or(1) as u64;
    let mut order = 1u64;
    while order < max_block {
        order *= p;
    }
    debug_assert!(m.pow(order).is_identity());
    Ok(JordanType { partition, order })
}

/// Dimension of `{X : Xm = mX}` inside the full matrix algebra, by an exact
/// kernel computation on the n^2-dimensional commutator system.
pub fn centralizer_dim(m: &Mat<FqElement>) -> usize {
    assert_eq!(m.nrows(), m.ncols());
    let n = m.nrows();
    let sample = m.sample();
    // row (i,j): sum_k X[i,k] m[k,j] - m[i,k] X[k,j] = 0
    let system = Mat::from_fn(n * n, n * n, |eq, unknown| {
        let (i, j) = (eq / n, eq % n);
        let (r, c) = (unknown / n, unknown % n);
        let mut coeff = sample.zero_like();
        if r == i {
            coeff = coeff.add(m.at(c, j));
        }
        if c == j {
            coeff = coeff.sub(m.at(i, r));
        }
        coeff
    });
    n * n - system.rank()
}

/// A single unipotent Jordan block of the given size.
pub fn jordan_block(ctx: &FqCtx, size: usize) -> Mat<FqElement> {
    Mat::from_fn(size, size, |i, j| {
        if i == j || j == i + 1 {
            ctx.one()
        } else {
            ctx.zero()
        }
    })
}

/// Block-diagonal unipotent matrix with the given block sizes.
pub fn jordan_matrix(ctx: &FqCtx, sizes: &[usize]) -> Mat<FqElement> {
    let n: usize = sizes.iter().sum();
    let mut m = Mat::identity(n, &ctx.zero());
    let mut offset = 0;
    for s in sizes {
        for i in 0..s - 1 {
            m.set(offset + i, offset + i + 1, ctx.one());
        }
        offset += s;
    }
    m
}
