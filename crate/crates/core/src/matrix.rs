//! Dense matrices over a ring, with exact Gaussian elimination over fields.
//!
//! Everything here is plumbing for the representation and analysis layers:
//! products, powers, reduced row echelon form, ranks, kernels, and a small
//! subspace type for filtration computations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ring::{FieldElem, Ring};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<R: Ring> {
    nrows: usize,
    ncols: usize,
    data: Vec<R>,
}

impl<R: Ring> Mat<R> {
    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Mat { nrows, ncols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Mat { nrows, ncols, data }
    }

    pub fn zero(nrows: usize, ncols: usize, sample: &R) -> Self {
        Mat::from_fn(nrows, ncols, |_, _| sample.zero_like())
    }

    pub fn identity(n: usize, sample: &R) -> Self {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                sample.one_like()
            } else {
                sample.zero_like()
            }
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn at(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.nrows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[R]> {
        self.data.chunks(self.ncols)
    }

    pub fn sample(&self) -> &R {
        &self.data[0]
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.ncols, self.nrows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert!(self.nrows == rhs.nrows && self.ncols == rhs.ncols);
        Mat::from_fn(self.nrows, self.ncols, |i, j| self.at(i, j).add(rhs.at(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert!(self.nrows == rhs.nrows && self.ncols == rhs.ncols);
        Mat::from_fn(self.nrows, self.ncols, |i, j| self.at(i, j).sub(rhs.at(i, j)))
    }

    pub fn neg(&self) -> Self {
        Mat::from_fn(self.nrows, self.ncols, |i, j| self.at(i, j).neg())
    }

    pub fn scalar_mul(&self, c: &R) -> Self {
        Mat::from_fn(self.nrows, self.ncols, |i, j| self.at(i, j).mul(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch");
        Mat::from_fn(self.nrows, rhs.ncols, |i, j| {
            let mut acc = self.data[0].zero_like();
            for k in 0..self.ncols {
                acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| {
                let mut acc = self.data[0].zero_like();
                for k in 0..self.ncols {
                    acc = acc.add(&self.at(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> Self {
        assert_eq!(self.nrows, self.ncols);
        let mut result = Mat::identity(self.nrows, &self.data[0]);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let e = self.at(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                if i != j && !self.at(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn map<S: Ring>(&self, mut f: impl FnMut(&R) -> S) -> Mat<S> {
        Mat {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(mats: &[Mat<R>]) -> Mat<R> {
        assert!(!mats.is_empty());
        let ncols = mats[0].ncols;
        let mut data = Vec::new();
        let mut nrows = 0;
        for m in mats {
            assert_eq!(m.ncols, ncols);
            data.extend(m.data.iter().cloned());
            nrows += m.nrows;
        }
        Mat { nrows, ncols, data }
    }
}

impl<R: Ring> fmt::Debug for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            write!(f, "  [")?;
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> fmt::Display for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl<R: FieldElem> Mat<R> {
    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> (Mat<R>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows {
                break;
            }
            let pivot_row = (row..m.nrows).find(|&i| !m.at(i, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            // swap rows
            if pr != row {
                for j in 0..m.ncols {
                    let a = m.at(row, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.at(row, col).inv().expect("nonzero pivot over a field");
            for j in 0..m.ncols {
                let v = m.at(row, j).mul(&inv);
                m.set(row, j, v);
            }
            for i in 0..m.nrows {
                if i != row && !m.at(i, col).is_zero() {
                    let factor = m.at(i, col).clone();
                    for j in 0..m.ncols {
                        let v = m.at(i, j).sub(&factor.mul(m.at(row, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, as vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<R>> {
        assert!(
            !self.data.is_empty(),
            "kernel of an empty matrix has no context to build vectors in"
        );
        let (r, pivots) = self.rref();
        let sample = &self.data[0];
        let mut basis = Vec::new();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        for fc in free {
            let mut v = vec![sample.zero_like(); self.ncols];
            v[fc] = sample.one_like();
            for (ri, pc) in pivots.iter().enumerate() {
                v[*pc] = r.at(ri, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square invertible matrix; `None` if singular.
    pub fn inverse(&self) -> Option<Mat<R>> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let sample = &self.data[0];
        let aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                sample.one_like()
            } else {
                sample.zero_like()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r.at(i, j + n).clone()))
    }
}

/// A linear subspace of `R^n`, stored as a reduced row basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<R: FieldElem> {
    ambient: usize,
    /// Basis rows in reduced row echelon form (no zero rows).
    basis: Mat<R>,
    dim: usize,
}

impl<R: FieldElem> Subspace<R> {
    pub fn from_spanning(ambient: usize, rows: Vec<Vec<R>>, sample: &R) -> Self {
        if rows.is_empty() {
            return Subspace {
                ambient,
                basis: Mat::zero(0, ambient, sample),
                dim: 0,
            };
        }
        let m = Mat::from_rows(rows);
        assert_eq!(m.ncols(), ambient);
        let (r, pivots) = m.rref();
        let dim = pivots.len();
        let basis = Mat::from_fn(dim, ambient, |i, j| r.at(i, j).clone());
        Subspace { ambient, basis, dim }
    }

    pub fn full(ambient: usize, sample: &R) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient, sample),
            dim: ambient,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &Mat<R> {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn contains(&self, v: &[R]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // reduce v against the rref rows
        let mut v = v.to_vec();
        for i in 0..self.dim {
            let pivot = (0..self.ambient)
                .find(|&j| self.basis.at(i, j).is_one())
                .expect("rref row has a pivot");
            if !v[pivot].is_zero() {
                let c = v[pivot].clone();
                for j in 0..self.ambient {
                    v[j] = v[j].sub(&c.mul(self.basis.at(i, j)));
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Functionals vanishing exactly on this subspace, as matrix rows.
    pub fn annihilator(&self, sample: &R) -> Mat<R> {
        if self.dim == 0 {
            return Mat::identity(self.ambient, sample);
        }
        let kernel = self.basis.kernel_basis();
        let rows: Vec<Vec<R>> = kernel;
        if rows.is_empty() {
            Mat::zero(0, self.ambient, sample)
        } else {
            Mat::from_rows(rows)
        }
    }

    pub fn intersect(&self, other: &Subspace<R>, sample: &R) -> Subspace<R> {
        assert_eq!(self.ambient, other.ambient);
        let ann = Mat::vstack(&[self.annihilator(sample), other.annihilator(sample)]);
        if ann.nrows() == 0 {
            return Subspace::full(self.ambient, sample);
        }
        let rows = ann.kernel_basis();
        Subspace::from_spanning(self.ambient, rows, sample)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldContext, FqCtx, FqElement};

    fn m3(ctx: &FqCtx, rows: &[&[i64]]) -> Mat<FqElement> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|v| ctx.from_int(*v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let ctx = FieldContext::new(3, 1).unwrap();
        let m = m3(&ctx, &[&[1, 2, 0], &[0, 1, 1], &[0, 0, 0]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let id = Mat::identity(4, &ctx.zero());
        assert_eq!(id.rank(), 4);
        assert!(id.kernel_basis().is_empty());
    }

    #[test]
    fn inverse_round_trip() {
        let ctx = FieldContext::new(5, 1).unwrap();
        let m = m3(&ctx, &[&[1, 2], &[3, 4]]);
        let mi = m.inverse().unwrap();
        assert!(m.mul(&mi).is_identity());
        let singular = m3(&ctx, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn subspaces() {
        let ctx = FieldContext::new(3, 1).unwrap();
        let zero = ctx.zero();
        let e1 = vec![ctx.from_int(1), ctx.from_int(0), ctx.from_int(0)];
        let e12 = vec![ctx.from_int(1), ctx.from_int(1), ctx.from_int(0)];
        let s = Subspace::from_spanning(3, vec![e1.clone(), e12.clone()], &zero);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&e1));
        assert!(!s.contains(&[ctx.from_int(0), ctx.from_int(0), ctx.from_int(1)]));
        // annihilator has dimension 1 and kills the basis
        let ann = s.annihilator(&zero);
        assert_eq!(ann.nrows(), 1);
        for row in s.basis().rows_iter() {
            let dot = row
                .iter()
                .zip(ann.row(0))
                .fold(zero.clone(), |acc, (a, b)| acc.add(&a.mul(b)));
            assert!(dot.is_zero());
        }
        // intersection with a complementary plane is a line
        let e23 = Subspace::from_spanning(
            3,
            vec![
                vec![ctx.from_int(0), ctx.from_int(1), ctx.from_int(0)],
                vec![ctx.from_int(0), ctx.from_int(0), ctx.from_int(1)],
            ],
            &zero,
        );
        let line = s.intersect(&e23, &zero);
        assert_eq!(line.dim(), 1);
        assert!(line.contains(&[ctx.from_int(0), ctx.from_int(1), ctx.from_int(0)]));
    }
}
