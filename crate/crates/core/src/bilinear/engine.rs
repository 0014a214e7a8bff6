use std::borrow::Cow;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{validate, BilinearAlgorithm};
use crate::error::{Error, Result};
use crate::matrix::{classical_impl, partition, Matrix};
use crate::scalar::{Rational, Scalar};

/// Sides at or above this run the `t` block products on the rayon pool.
const PAR_MIN_SIDE: usize = 128;

/// Level `j` of the recursion uses `levels[min(j, len - 1)]`; sides at or
/// below `cutoff` are multiplied classically.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionSchedule {
    levels: Vec<BilinearAlgorithm>,
    cutoff: usize,
}

impl RecursionSchedule {
    pub fn new(levels: Vec<BilinearAlgorithm>, cutoff: usize) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidAlgorithm("recursion schedule has no levels".into()));
        }
        if cutoff == 0 {
            return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
        }
        for (j, alg) in levels.iter().enumerate() {
            if alg.k() < 2 {
                return Err(Error::InvalidAlgorithm(format!("level {j}: block count k = {} cannot recurse", alg.k())));
            }
            if let Some(w) = validate(alg).witness {
                return Err(Error::InvalidAlgorithm(format!("level {j}: {w}")));
            }
        }
        Ok(Self { levels, cutoff })
    }

    pub fn stationary(alg: BilinearAlgorithm, cutoff: usize) -> Result<Self> {
        Self::new(vec![alg], cutoff)
    }

    pub fn levels(&self) -> &[BilinearAlgorithm] {
        &self.levels
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn level(&self, depth: usize) -> &BilinearAlgorithm {
        &self.levels[depth.min(self.levels.len() - 1)]
    }

    /// Least `m >= n` on which the recursion runs without re-padding:
    /// `m = ceil(n / K) * K` with `K = k(0)...k(d-1)` and `d` the first depth at
    /// which `ceil(n / K) <= cutoff`.
    pub fn padded_side(&self, n: usize) -> usize {
        if n <= self.cutoff {
            return n;
        }
        let mut kprod = 1usize;
        let mut depth = 0;
        loop {
            kprod *= self.level(depth).k();
            depth += 1;
            let base = n.div_ceil(kprod);
            if base <= self.cutoff {
                return base * kprod;
            }
        }
    }
}

/// Recursive multiplier with an instrumented count of scalar multiplications
/// performed by the classical base case.
#[derive(Debug)]
pub struct Engine {
    schedule: RecursionSchedule,
    counter: AtomicU64,
    parallel: bool,
}

impl Engine {
    pub fn new(schedule: RecursionSchedule) -> Self {
        Self {
            schedule,
            counter: AtomicU64::new(0),
            parallel: true,
        }
    }

    /// Never hand block products to the thread pool.
    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn schedule(&self) -> &RecursionSchedule {
        &self.schedule
    }

    /// Base-case multiplications since construction or the last reset.
    pub fn multiplications(&self) -> u64 {
        self.counter.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.counter.store(0, Ordering::Relaxed);
    }

    /// Pads to a square of side [`RecursionSchedule::padded_side`], recurses,
    /// and crops back to `A.rows x B.cols`.
    pub fn multiply<T: Scalar>(&self, a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
        if a.cols() != b.rows() {
            return Err(Error::DimensionMismatch {
                left_rows: a.rows(),
                left_cols: a.cols(),
                right_rows: b.rows(),
                right_cols: b.cols(),
            });
        }
        if a.ctx() != b.ctx() {
            return Err(Error::RegimeMismatch(format!(
                "{} vs {}",
                T::regime(a.ctx()),
                T::regime(b.ctx())
            )));
        }
        let n = a.rows().max(a.cols()).max(b.cols());
        let m = self.schedule.padded_side(n);
        if a.shape() == (m, m) && b.shape() == (m, m) {
            return Ok(self.recurse(a, b, 0));
        }
        let c = self.recurse(&a.padded(m, m), &b.padded(m, m), 0);
        Ok(c.block(0, 0, a.rows(), b.cols()))
    }

    fn recurse<T: Scalar>(&self, a: &Matrix<T>, b: &Matrix<T>, depth: usize) -> Matrix<T> {
        let n = a.rows();
        if n <= self.schedule.cutoff {
            return classical_impl(a, b, Some(&self.counter)).expect("square blocks of equal side");
        }
        let alg = self.schedule.level(depth);
        let k = alg.k();
        let ctx = a.ctx();
        let m = n / k;
        let column_wise = |grid: Vec<Vec<Matrix<T>>>| -> Vec<Matrix<T>> {
            let mut out: Vec<Option<Matrix<T>>> = (0..k * k).map(|_| None).collect();
            for (p, row) in grid.into_iter().enumerate() {
                for (q, blk) in row.into_iter().enumerate() {
                    out[q * k + p] = Some(blk);
                }
            }
            out.into_iter().map(Option::unwrap).collect()
        };
        let ab = column_wise(partition(a, k).expect("padded side divisible by k"));
        let bb = column_wise(partition(b, k).expect("padded side divisible by k"));
        let product = |s: usize| -> Matrix<T> {
            let left = combine(alg.u().data().iter().skip(s).step_by(alg.t()).zip(&ab), m, ctx);
            let right = combine(alg.v().data().iter().skip(s).step_by(alg.t()).zip(&bb), m, ctx);
            self.recurse(&left, &right, depth + 1)
        };
        let products: Vec<Matrix<T>> = if self.parallel && n >= PAR_MIN_SIDE {
            (0..alg.t()).into_par_iter().map(product).collect()
        } else {
            (0..alg.t()).map(product).collect()
        };
        let grid: Vec<Vec<Matrix<T>>> = (0..k)
            .map(|h| {
                (0..k)
                    .map(|l| combine(alg.w().row(h * k + l).iter().zip(&products), m, ctx))
                    .collect()
            })
            .collect();
        let refs: Vec<Vec<&Matrix<T>>> = grid.iter().map(|r| r.iter().collect()).collect();
        Matrix::from_blocks(&refs).expect("uniform block grid")
    }
}

/// `sum c_i M_i` over the nonzero coefficients, in index order, as a balanced
/// pairwise tree. Coefficients `+1` and `-1` cost no multiplication: a sign
/// travels with each partial sum and is resolved by choosing add or subtract.
fn combine<'a, T: Scalar>(
    terms: impl Iterator<Item = (&'a Rational, &'a Matrix<T>)>,
    side: usize,
    ctx: T::Ctx,
) -> Matrix<T> {
    let mut level: Vec<(bool, Cow<'a, Matrix<T>>)> = terms
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, m)| {
            if c.is_one() {
                (false, Cow::Borrowed(m))
            } else if c.is_minus_one() {
                (true, Cow::Borrowed(m))
            } else {
                (false, Cow::Owned(m.scale(&T::from_rational(c, ctx))))
            }
        })
        .collect();
    if level.is_empty() {
        return Matrix::zeros(side, side, ctx);
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some((sa, a)) = it.next() {
            match it.next() {
                Some((sb, b)) => next.push(match (sa, sb) {
                    (false, false) => (false, Cow::Owned(a.zip(&b, T::add))),
                    (false, true) => (false, Cow::Owned(a.zip(&b, T::sub))),
                    (true, false) => (false, Cow::Owned(b.zip(&a, T::sub))),
                    (true, true) => (true, Cow::Owned(a.zip(&b, T::add))),
                }),
                None => next.push((sa, a)),
            }
        }
        level = next;
    }
    let (negative, m) = level.pop().unwrap();
    if negative {
        m.neg()
    } else {
        m.into_owned()
    }
}

/// `A * B` with one algorithm at every level.
pub fn multiply_stationary<T: Scalar>(
    alg: &BilinearAlgorithm,
    a: &Matrix<T>,
    b: &Matrix<T>,
    cutoff: usize,
) -> Result<Matrix<T>> {
    Engine::new(RecursionSchedule::stationary(alg.clone(), cutoff)?).multiply(a, b)
}

pub fn multiply_nonstationary<T: Scalar>(
    schedule: &RecursionSchedule,
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<Matrix<T>> {
    Engine::new(schedule.clone()).multiply(a, b)
}

/// Scalar multiplications of the recursion on side `n`:
/// `M(n) = t M(n/k)` above the cutoff and `M(m) = m^3` at or below it.
pub fn count_multiplications(alg: &BilinearAlgorithm, n: usize, cutoff: usize) -> Result<u64> {
    let k = alg.k();
    let mut side = n;
    while side > 1 && side % k == 0 {
        side /= k;
    }
    if n == 0 || side != 1 {
        return Err(Error::NotPowerOf { n, k });
    }
    let overflow = || Error::InvalidArgument(format!("multiplication count for n = {n} overflows u64"));
    let mut side = n;
    let mut factor: u64 = 1;
    while side > cutoff.max(1) {
        factor = factor.checked_mul(alg.t() as u64).ok_or_else(overflow)?;
        side /= k;
    }
    let base = (side as u64).checked_pow(3).ok_or_else(overflow)?;
    factor.checked_mul(base).ok_or_else(overflow)
}
