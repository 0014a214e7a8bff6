//! Dense row-major matrices over any [`Scalar`] regime.

mod format;
mod norm;

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use format::{parse_matrix, AnyMatrix, TextScalar};
pub use norm::{check_partition_condition, norm, BlockGrid, NormKind, PartitionReport};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    ctx: T::Ctx,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>, ctx: T::Ctx) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.ctx() != ctx) {
            return Err(Error::RegimeMismatch(format!(
                "entry in regime {} inside a {} matrix",
                T::regime(bad.ctx()),
                T::regime(ctx)
            )));
        }
        Ok(Self {
            rows,
            cols,
            data,
            ctx,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: T::Ctx, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            data,
            ctx,
        }
    }

    pub fn zeros(rows: usize, cols: usize, ctx: T::Ctx) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(ctx); rows * cols],
            ctx,
        }
    }

    pub fn identity(n: usize, ctx: T::Ctx) -> Self {
        let one = T::one(ctx);
        let zero = T::zero(ctx);
        Self::from_fn(n, n, ctx, |i, j| if i == j { one.clone() } else { zero.clone() })
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

    pub fn ctx(&self) -> T::Ctx {
        self.ctx
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Scalar>(&self, ctx: U::Ctx, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            ctx,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.ctx, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.ctx, |i, j| self.get(j, i).conj())
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(self.mismatch(rhs));
        }
        self.same_regime(rhs)
    }

    fn same_regime(&self, rhs: &Self) -> Result<()> {
        if self.ctx != rhs.ctx {
            return Err(Error::RegimeMismatch(format!(
                "{} vs {}",
                T::regime(self.ctx),
                T::regime(rhs.ctx)
            )));
        }
        Ok(())
    }

    fn mismatch(&self, rhs: &Self) -> Error {
        Error::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(self.zip(rhs, T::add))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(self.zip(rhs, T::sub))
    }

    pub(crate) fn zip(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
            ctx: self.ctx,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(T::neg).collect(),
            ctx: self.ctx,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c.mul(x)).collect(),
            ctx: self.ctx,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    /// Copy of the `nrows x ncols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Self {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols, "block out of range");
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in r0..r0 + nrows {
            let start = i * self.cols + c0;
            data.extend_from_slice(&self.data[start..start + ncols]);
        }
        Self {
            rows: nrows,
            cols: ncols,
            data,
            ctx: self.ctx,
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].clone_from_slice(block.row(i));
        }
    }

    /// Glues a rectangular grid of blocks; row heights and column widths must agree.
    pub fn from_blocks(grid: &[Vec<&Self>]) -> Result<Self> {
        let first = grid
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::MalformedPartition("empty block grid".into()))?;
        let ctx = first.ctx;
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for row in grid {
            if row.len() != widths.len() {
                return Err(Error::MalformedPartition("ragged block grid".into()));
            }
        }
        let mut out = Self::zeros(heights.iter().sum(), widths.iter().sum(), ctx);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::MalformedPartition(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[bi], widths[bj]
                    )));
                }
                if b.ctx != ctx {
                    return Err(Error::RegimeMismatch("blocks from different regimes".into()));
                }
                out.set_block(r0, c0, b);
                c0 += b.cols;
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// Copy padded with zero rows and columns to `rows x cols`.
    pub fn padded(&self, rows: usize, cols: usize) -> Self {
        assert!(rows >= self.rows && cols >= self.cols);
        let mut out = Self::zeros(rows, cols, self.ctx);
        out.set_block(0, 0, self);
        out
    }
}

impl<T: Scalar<Ctx = ()>> Matrix<T> {
    /// Builds a matrix in a context-free regime from nested rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("rows of unequal length".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect(), ())
    }
}

/// `C[i][j] = sum_l A[i][l] * B[l][j]`, accumulated left to right in `l`.
pub fn multiply_classical<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    classical_impl(a, b, None)
}

pub(crate) fn classical_impl<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    counter: Option<&AtomicU64>,
) -> Result<Matrix<T>> {
    if a.cols != b.rows {
        return Err(a.mismatch(b));
    }
    a.same_regime(b)?;
    let (m, inner, n) = (a.rows, a.cols, b.cols);
    let mut c = Matrix::zeros(m, n, a.ctx);
    for i in 0..m {
        let crow = &mut c.data[i * n..(i + 1) * n];
        for l in 0..inner {
            let ail = &a.data[i * inner + l];
            let brow = &b.data[l * n..(l + 1) * n];
            if l == 0 {
                for (cij, blj) in crow.iter_mut().zip(brow) {
                    *cij = ail.mul(blj);
                }
            } else {
                for (cij, blj) in crow.iter_mut().zip(brow) {
                    *cij = cij.add(&ail.mul(blj));
                }
            }
        }
    }
    if let Some(counter) = counter {
        counter.fetch_add((m * inner * n) as u64, Ordering::Relaxed);
    }
    Ok(c)
}

/// Zero-pads `a` to the smallest `k^e x k^e` that holds it and is at least `minimum`.
pub fn pad_to_power<T: Scalar>(a: &Matrix<T>, k: usize, minimum: usize) -> Result<Matrix<T>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("padding base must be at least 2, got {k}")));
    }
    let target = a.rows.max(a.cols).max(minimum).max(1);
    let mut side = 1usize;
    while side < target {
        side = side
            .checked_mul(k)
            .ok_or_else(|| Error::InvalidArgument("padded size overflows".into()))?;
    }
    Ok(a.padded(side, side))
}

/// Splits a square matrix into a `k x k` grid of equal contiguous blocks.
pub fn partition<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<Vec<Vec<Matrix<T>>>> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(format!(
            "partition needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    if k == 0 || a.rows % k != 0 {
        return Err(Error::IndivisibleSide { side: a.rows, k });
    }
    let m = a.rows / k;
    Ok((0..k)
        .map(|bi| (0..k).map(|bj| a.block(bi * m, bj * m, m, m)).collect())
        .collect())
}

/// Inverse of [`partition`].
pub fn assemble<T: Scalar>(grid: &[Vec<Matrix<T>>]) -> Result<Matrix<T>> {
    let refs: Vec<Vec<&Matrix<T>>> = grid.iter().map(|r| r.iter().collect()).collect();
    Matrix::from_blocks(&refs)
}
