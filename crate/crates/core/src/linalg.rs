//! Inversion, LUP decomposition, determinants and linear solves reduced to
//! matrix multiplication.

use std::sync::Arc;

use num_complex::Complex64;

use crate::bilinear::{BilinearAlgorithm, Engine, RecursionSchedule};
use crate::error::{Error, Result};
use crate::matrix::{multiply_classical, norm, Matrix, NormKind};
use crate::scalar::{Regime, Scalar};
use crate::stpp::StppMultiplier;

/// Side at or below which inversion and LU switch to dense elimination.
pub const DEFAULT_CUTOFF: usize = 16;

/// The multiplication procedure a reduction runs on.
#[derive(Clone, Debug)]
pub enum MultiplierHandle {
    Classical,
    Bilinear(RecursionSchedule),
    /// Binary64 real or complex matrices only.
    Stpp(Arc<StppMultiplier>),
}

impl MultiplierHandle {
    pub fn bilinear(alg: BilinearAlgorithm, cutoff: usize) -> Result<Self> {
        Ok(MultiplierHandle::Bilinear(RecursionSchedule::stationary(alg, cutoff)?))
    }

    pub fn multiply<T: Scalar>(&self, a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
        match self {
            MultiplierHandle::Classical => multiply_classical(a, b),
            MultiplierHandle::Bilinear(s) => Engine::new(s.clone()).multiply(a, b),
            MultiplierHandle::Stpp(m) => {
                let ctx = a.ctx();
                let real = match T::regime(ctx) {
                    Regime::Float => true,
                    Regime::Complex => false,
                    r => {
                        return Err(Error::UnsupportedRegime(format!(
                            "group-algebra multiplication needs f64 or complex matrices, found {r}"
                        )))
                    }
                };
                // non-square operands are zero-padded to a common square side
                let side = a.rows().max(a.cols()).max(b.cols());
                if a.cols() != b.rows() {
                    return Err(Error::DimensionMismatch {
                        left_rows: a.rows(),
                        left_cols: a.cols(),
                        right_rows: b.rows(),
                        right_cols: b.cols(),
                    });
                }
                let lift = |m: &Matrix<T>| m.padded(side, side).map((), |x| x.to_complex());
                let c = m.multiply(&lift(a), &lift(b))?.block(0, 0, a.rows(), b.cols());
                Ok(c.map(ctx, |z: &Complex64| {
                    let z = if real { Complex64::new(z.re, 0.0) } else { *z };
                    T::from_complex(z, ctx).expect("value fits the regime")
                }))
            }
        }
    }
}

fn threshold<T: Scalar>(a: &Matrix<T>) -> f64 {
    1e3 * T::unit_roundoff(a.ctx()) * norm(a, NormKind::Frobenius)
}

fn negligible<T: Scalar>(x: &T, tol: f64) -> bool {
    x.is_zero() || x.modulus() <= tol
}

/// Gauss-Jordan elimination with partial pivoting.
fn gauss_jordan<T: Scalar>(a: &Matrix<T>, tol: f64, level: usize) -> Result<Matrix<T>> {
    let n = a.rows();
    let ctx = a.ctx();
    let mut m: Vec<Vec<T>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<T>> = Matrix::<T>::identity(n, ctx).into_data().chunks(n.max(1)).map(<[T]>::to_vec).collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].modulus().total_cmp(&m[j][col].modulus()))
            .expect("non-empty range");
        if negligible(&m[piv][col], tol) {
            return Err(Error::Singular {
                level,
                detail: format!("pivot {} in column {col} is below 1e3 * eps * |A|_F = {tol:e}", m[piv][col].modulus()),
            });
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = m[col][j].div(&p).expect("pivot is non-zero");
            inv[col][j] = inv[col][j].div(&p).expect("pivot is non-zero");
        }
        for i in (0..n).filter(|&i| i != col) {
            let f = m[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let (mc, ic) = (m[col][j].mul(&f), inv[col][j].mul(&f));
                m[i][j] = m[i][j].sub(&mc);
                inv[i][j] = inv[i][j].sub(&ic);
            }
        }
    }
    Ok(Matrix::from_fn(n, n, ctx, |i, j| inv[i][j].clone()))
}

/// Inverse of a Hermitian positive-definite matrix by the 2x2 block
/// recursion `S = D - C A^-1 B`.
fn invert_hermitian<T: Scalar>(
    m: &Matrix<T>,
    mult: &MultiplierHandle,
    cutoff: usize,
    tol: f64,
    level: usize,
) -> Result<Matrix<T>> {
    let n = m.rows();
    if n <= cutoff.max(1) {
        return gauss_jordan(m, tol, level);
    }
    let k = n.div_ceil(2);
    let a = m.block(0, 0, k, k);
    let b = m.block(0, k, k, n - k);
    let c = m.block(k, 0, n - k, k);
    let d = m.block(k, k, n - k, n - k);
    let a_inv = invert_hermitian(&a, mult, cutoff, tol, level + 1)?;
    let c_ainv = mult.multiply(&c, &a_inv)?;
    let s = d.sub(&mult.multiply(&c_ainv, &b)?)?;
    let s_inv = invert_hermitian(&s, mult, cutoff, tol, level + 1)?;
    // A^-1 B = (C A^-1)^* since C = B^* and A^-1 is Hermitian
    let ainv_b = c_ainv.conj_transpose();
    let top_right = mult.multiply(&ainv_b, &s_inv)?.neg();
    let bottom_left = mult.multiply(&s_inv, &c_ainv)?.neg();
    let top_left = a_inv.sub(&mult.multiply(&top_right, &c_ainv)?)?;
    Matrix::from_blocks(&[vec![&top_left, &top_right], vec![&bottom_left, &s_inv]])
}

/// `A^-1 = A^* (A A^*)^-1` with the default cutoff.
pub fn invert<T: Scalar>(a: &Matrix<T>, mult: &MultiplierHandle) -> Result<Matrix<T>> {
    invert_with(a, mult, DEFAULT_CUTOFF)
}

/// Singularity is reported when a pivot falls below `1e3 * eps * |A A^*|_F`
/// (exactly zero in the rational regime), naming the recursion level.
pub fn invert_with<T: Scalar>(a: &Matrix<T>, mult: &MultiplierHandle, cutoff: usize) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(format!("cannot invert a {}x{} matrix", a.rows(), a.cols())));
    }
    if a.rows() == 0 {
        return Ok(a.clone());
    }
    let a_star = a.conj_transpose();
    let gram = mult.multiply(a, &a_star)?;
    let g_inv = invert_hermitian(&gram, mult, cutoff, threshold(&gram), 0)?;
    mult.multiply(&a_star, &g_inv)
}

/// `A = L U P` with `L` unit lower triangular, `U` upper triangular and `P`
/// a permutation matrix; `P` has a one at `(i, columns[i])`.
#[derive(Clone, Debug, PartialEq)]
pub struct LupResult<T: Scalar> {
    pub l: Matrix<T>,
    pub u: Matrix<T>,
    pub columns: Vec<usize>,
}

impl<T: Scalar> LupResult<T> {
    pub fn p(&self) -> Matrix<T> {
        let n = self.columns.len();
        let ctx = self.u.ctx();
        Matrix::from_fn(n, n, ctx, |i, j| if self.columns[i] == j { T::one(ctx) } else { T::zero(ctx) })
    }

    /// Sign of the permutation.
    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.columns.len()];
        let mut sign = 1;
        for start in 0..self.columns.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.columns[i];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn reconstruct(&self, mult: &MultiplierHandle) -> Result<Matrix<T>> {
        mult.multiply(&mult.multiply(&self.l, &self.u)?, &self.p())
    }
}

fn select_columns<T: Scalar>(a: &Matrix<T>, cols: &[usize]) -> Matrix<T> {
    Matrix::from_fn(a.rows(), cols.len(), a.ctx(), |i, j| a.get(i, cols[j]).clone())
}

/// Elimination with column pivoting: `A[:, cols] = L U`.
fn lup_dense<T: Scalar>(a: &Matrix<T>, tol: f64, row0: usize) -> Result<(Matrix<T>, Matrix<T>, Vec<usize>)> {
    let (m, n) = a.shape();
    let ctx = a.ctx();
    let mut w: Vec<Vec<T>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let mut l = Matrix::identity(m, ctx);
    let mut cols: Vec<usize> = (0..n).collect();
    for r in 0..m {
        let piv = (r..n)
            .max_by(|&i, &j| w[r][i].modulus().total_cmp(&w[r][j].modulus()).then(j.cmp(&i)))
            .ok_or_else(|| Error::RankDeficient { step: format!("pivot search in row {}", row0 + r) })?;
        if negligible(&w[r][piv], tol) {
            return Err(Error::RankDeficient { step: format!("pivot search in row {}", row0 + r) });
        }
        for row in w.iter_mut() {
            row.swap(r, piv);
        }
        cols.swap(r, piv);
        for i in r + 1..m {
            let f = w[i][r].div(&w[r][r]).expect("pivot is non-zero");
            for j in r..n {
                let t = w[r][j].mul(&f);
                w[i][j] = w[i][j].sub(&t);
            }
            l.set(i, r, f);
        }
    }
    let u = Matrix::from_fn(m, n, ctx, |i, j| if j < i { T::zero(ctx) } else { w[i][j].clone() });
    Ok((l, u, cols))
}

/// Inverse of a non-singular upper triangular matrix by block recursion.
fn invert_upper<T: Scalar>(e: &Matrix<T>, mult: &MultiplierHandle) -> Result<Matrix<T>> {
    let n = e.rows();
    let ctx = e.ctx();
    if n == 1 {
        let inv = T::one(ctx).div(e.get(0, 0)).expect("pivot is non-zero");
        return Ok(Matrix::from_fn(1, 1, ctx, |_, _| inv.clone()));
    }
    let k = n.div_ceil(2);
    let e11 = invert_upper(&e.block(0, 0, k, k), mult)?;
    let e22 = invert_upper(&e.block(k, k, n - k, n - k), mult)?;
    let e12 = mult.multiply(&mult.multiply(&e11, &e.block(0, k, k, n - k))?, &e22)?.neg();
    let zero = Matrix::zeros(n - k, k, ctx);
    Matrix::from_blocks(&[vec![&e11, &e12], vec![&zero, &e22]])
}

fn lup_recursive<T: Scalar>(
    a: &Matrix<T>,
    mult: &MultiplierHandle,
    cutoff: usize,
    tol: f64,
    row0: usize,
) -> Result<(Matrix<T>, Matrix<T>, Vec<usize>)> {
    let (m, n) = a.shape();
    if m <= cutoff.max(1) {
        return lup_dense(a, tol, row0);
    }
    let ctx = a.ctx();
    let m1 = m / 2;
    let (l1, u1, c1) = lup_recursive(&a.block(0, 0, m1, n), mult, cutoff, tol, row0)?;
    let bottom = select_columns(&a.block(m1, 0, m - m1, n), &c1);
    let e = u1.block(0, 0, m1, m1);
    let f = u1.block(0, m1, m1, n - m1);
    let g = bottom.block(0, 0, m - m1, m1);
    let h = bottom.block(0, m1, m - m1, n - m1);
    let g_einv = mult.multiply(&g, &invert_upper(&e, mult)?)?;
    let schur = h.sub(&mult.multiply(&g_einv, &f)?)?;
    let (l2, u2, c2) = lup_recursive(&schur, mult, cutoff, tol, row0 + m1)?;
    let zero_top = Matrix::zeros(m1, m - m1, ctx);
    let l = Matrix::from_blocks(&[vec![&l1, &zero_top], vec![&g_einv, &l2]])?;
    let zero_bottom = Matrix::zeros(m - m1, m1, ctx);
    let f2 = select_columns(&f, &c2);
    let u = Matrix::from_blocks(&[vec![&e, &f2], vec![&zero_bottom, &u2]])?;
    let cols = c1[..m1].iter().copied().chain(c2.iter().map(|&j| c1[m1 + j])).collect();
    Ok((l, u, cols))
}

/// LUP decomposition of a full-row-rank `m x n` matrix (`m <= n`).
pub fn lu_decompose<T: Scalar>(a: &Matrix<T>) -> Result<LupResult<T>> {
    lu_decompose_with(a, &MultiplierHandle::Classical, DEFAULT_CUTOFF)
}

/// Splits the rows in half, factors the top, eliminates, and factors the
/// Schur complement of the bottom; blocks of at most `cutoff` rows use
/// elimination with column pivoting.
pub fn lu_decompose_with<T: Scalar>(a: &Matrix<T>, mult: &MultiplierHandle, cutoff: usize) -> Result<LupResult<T>> {
    let (m, n) = a.shape();
    if m > n {
        return Err(Error::InvalidArgument(format!("LUP needs rows <= columns, found {m}x{n}")));
    }
    // A[:, cols] = L U  is  A = L U P  with P having a one at (i, cols[i])
    let (l, u, columns) = lup_recursive(a, mult, cutoff, threshold(a), 0)?;
    Ok(LupResult { l, u, columns })
}

pub fn determinant<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(format!("determinant of a {}x{} matrix", a.rows(), a.cols())));
    }
    let ctx = a.ctx();
    match lu_decompose(a) {
        Ok(lup) => {
            let prod = (0..a.rows()).fold(T::one(ctx), |acc, i| acc.mul(lup.u.get(i, i)));
            Ok(if lup.sign() < 0 { prod.neg() } else { prod })
        }
        Err(Error::RankDeficient { .. }) => Ok(T::zero(ctx)),
        Err(e) => Err(e),
    }
}

/// Solves `A X = B` through `A = L U P`.
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() || b.rows() != a.rows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let lup = lu_decompose(a).map_err(|e| match e {
        Error::RankDeficient { step } => Error::Singular { level: 0, detail: format!("rank deficiency in {step}") },
        e => e,
    })?;
    let (n, r) = b.shape();
    let ctx = a.ctx();
    let mut y: Vec<Vec<T>> = (0..n).map(|i| b.row(i).to_vec()).collect();
    for i in 0..n {
        for j in 0..i {
            let l = lup.l.get(i, j).clone();
            for c in 0..r {
                let t = l.mul(&y[j][c]);
                y[i][c] = y[i][c].sub(&t);
            }
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let u = lup.u.get(i, j).clone();
            for c in 0..r {
                let t = u.mul(&y[j][c]);
                y[i][c] = y[i][c].sub(&t);
            }
        }
        for c in 0..r {
            y[i][c] = y[i][c].div(lup.u.get(i, i)).expect("pivot is non-zero");
        }
    }
    // P X = W  means  X[cols[i]] = W[i]
    let mut x = Matrix::zeros(n, r, ctx);
    for (i, &col) in lup.columns.iter().enumerate() {
        for c in 0..r {
            x.set(col, c, y[i][c].clone());
        }
    }
    Ok(x)
}

/// Outcome of inverting `[[I, A, 0], [0, I, B], [0, 0, I]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeBlockCheck<T: Scalar> {
    /// The inverse equals `[[I, -A, AB], [0, I, -B], [0, 0, I]]`.
    pub inverse_matches: bool,
    /// Top-right block of the computed inverse.
    pub product: Matrix<T>,
    /// Largest entry deviation from the expected inverse.
    pub deviation: f64,
}

/// Exact comparison in exact regimes; otherwise a deviation of at most
/// `1e6 * eps * (1 + |A|_F) (1 + |B|_F)` is accepted.
pub fn verify_3block_identity<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    mult: &MultiplierHandle,
) -> Result<ThreeBlockCheck<T>> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let n = a.rows();
    let ctx = a.ctx();
    let i = Matrix::identity(n, ctx);
    let z = Matrix::zeros(n, n, ctx);
    let m = Matrix::from_blocks(&[vec![&i, a, &z], vec![&z, &i, b], vec![&z, &z, &i]])?;
    let inv = invert(&m, mult)?;
    let ab = mult.multiply(a, b)?;
    let (na, nb) = (a.neg(), b.neg());
    let expected = Matrix::from_blocks(&[vec![&i, &na, &ab], vec![&z, &i, &nb], vec![&z, &z, &i]])?;
    let diff = inv.sub(&expected)?;
    let deviation = norm(&diff, NormKind::MaxEntry);
    let eps = T::unit_roundoff(ctx);
    let inverse_matches = if eps == 0.0 {
        diff.is_zero()
    } else {
        let scale = (1.0 + norm(a, NormKind::Frobenius)) * (1.0 + norm(b, NormKind::Frobenius));
        deviation <= 1e6 * eps * scale
    };
    Ok(ThreeBlockCheck { inverse_matches, product: inv.block(0, 2 * n, n, n), deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::strassen;
    use crate::scalar::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(v.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect()).unwrap()
    }

    fn random_q(m: usize, n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
        Matrix::from_fn(m, n, (), |_, _| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
    }

    fn strassen_handle() -> MultiplierHandle {
        MultiplierHandle::bilinear(strassen(), 2).unwrap()
    }

    #[test]
    fn invert_small_cases() {
        let id = Matrix::<Rational>::identity(3, ());
        assert_eq!(invert(&id, &MultiplierHandle::Classical).unwrap(), id);
        let d = q(&[&[2, 0], &[0, 4]]);
        let expect = Matrix::from_rows(vec![
            vec![Rational::new(1, 2), Rational::zero()],
            vec![Rational::zero(), Rational::new(1, 4)],
        ])
        .unwrap();
        assert_eq!(invert(&d, &MultiplierHandle::Classical).unwrap(), expect);
    }

    #[test]
    fn recursive_inverse_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [3, 5, 8] {
            let a = random_q(n, n, &mut rng);
            for mult in [MultiplierHandle::Classical, strassen_handle()] {
                let inv = invert_with(&a, &mult, 1).unwrap();
                assert_eq!(multiply_classical(&a, &inv).unwrap(), Matrix::identity(n, ()));
            }
        }
    }

    #[test]
    fn singular_reports_level() {
        let s = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert!(matches!(invert(&s, &MultiplierHandle::Classical), Err(Error::Singular { level: 0, .. })));
        assert!(matches!(invert_with(&s, &MultiplierHandle::Classical, 1), Err(Error::Singular { .. })));
        let f = s.map((), |x| x.to_f64());
        assert!(matches!(invert(&f, &MultiplierHandle::Classical), Err(Error::Singular { .. })));
    }

    #[test]
    fn float_inverse_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 20;
        let a = Matrix::from_fn(n, n, (), |i, j| rng.gen_range(-1.0..1.0) + if i == j { n as f64 } else { 0.0 });
        let inv = invert_with(&a, &MultiplierHandle::Classical, 4).unwrap();
        let r = multiply_classical(&a, &inv).unwrap().sub(&Matrix::identity(n, ())).unwrap();
        assert!(norm(&r, NormKind::Frobenius) < 1e-12);
    }

    #[test]
    fn lup_swap_and_identity() {
        let id = Matrix::<Rational>::identity(3, ());
        let lup = lu_decompose(&id).unwrap();
        assert_eq!((lup.l.clone(), lup.u.clone(), lup.p()), (id.clone(), id.clone(), id));
        let swap = q(&[&[0, 1], &[1, 0]]);
        let lup = lu_decompose(&swap).unwrap();
        assert_eq!(lup.reconstruct(&MultiplierHandle::Classical).unwrap(), swap);
        assert_eq!(lup.sign(), -1);
    }

    #[test]
    fn recursive_lup_reconstructs_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (m, n) in [(3, 3), (4, 7), (7, 9), (8, 8)] {
            let a = random_q(m, n, &mut rng);
            let lup = lu_decompose_with(&a, &strassen_handle(), 1).unwrap();
            assert_eq!(lup.reconstruct(&MultiplierHandle::Classical).unwrap(), a);
            for i in 0..m {
                assert!(lup.l.get(i, i).is_one());
                assert!((i + 1..m).all(|j| lup.l.get(i, j).is_zero()));
                assert!((0..i).all(|j| lup.u.get(i, j).is_zero()));
            }
        }
    }

    #[test]
    fn rank_deficiency_names_step() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let err = lu_decompose_with(&a, &MultiplierHandle::Classical, 1).unwrap_err();
        assert_eq!(err, Error::RankDeficient { step: "pivot search in row 1".into() });
        assert!(lu_decompose(&q(&[&[1], &[2]])).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&q(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])).unwrap(), Rational::from_integer(6));
        let rank_one = Matrix::from_fn(4, 4, (), |i, j| Rational::from_integer(((i + 1) * (j + 2)) as i64));
        assert_eq!(determinant(&rank_one).unwrap(), Rational::zero());
        assert_eq!(determinant(&q(&[&[0, 1], &[1, 0]])).unwrap(), Rational::from_integer(-1));
    }

    #[test]
    fn solve_recovers_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_q(6, 6, &mut rng);
        let x = random_q(6, 2, &mut rng);
        let b = multiply_classical(&a, &x).unwrap();
        assert_eq!(solve(&a, &b).unwrap(), x);
        let s = q(&[&[1, 2], &[2, 4]]);
        assert!(matches!(solve(&s, &q(&[&[1], &[1]])), Err(Error::Singular { .. })));
    }

    #[test]
    fn three_block_identity() {
        let a = q(&[&[2]]);
        let b = q(&[&[3]]);
        let r = verify_3block_identity(&a, &b, &MultiplierHandle::Classical).unwrap();
        assert!(r.inverse_matches);
        assert_eq!(r.product, q(&[&[6]]));
        let z = Matrix::<Rational>::zeros(2, 2, ());
        let r = verify_3block_identity(&z, &z, &MultiplierHandle::Classical).unwrap();
        assert!(r.inverse_matches && r.product.is_zero());
    }

    #[test]
    fn stpp_handle_rejects_rationals() {
        use crate::group::{AbelianGroup, Triple, TripleCollection};
        use crate::stpp::{StppFamily, StppOptions};
        let e = |v: &[usize]| v.iter().map(|&x| vec![x]).collect::<Vec<_>>();
        let c = TripleCollection::new(
            AbelianGroup::cyclic(8),
            vec![Triple { x: e(&[0, 1]), y: e(&[0, 2]), z: e(&[0, 4]) }],
        )
        .unwrap();
        let fam = StppFamily::new(vec![c]).unwrap();
        let h = MultiplierHandle::Stpp(Arc::new(StppMultiplier::new(fam, StppOptions::default()).unwrap()));
        let a = q(&[&[1, 2], &[3, 4]]);
        assert!(matches!(h.multiply(&a, &a), Err(Error::UnsupportedRegime(_))));
        let f = a.map((), |x| x.to_f64());
        let c = h.multiply(&f, &f).unwrap();
        for (x, y) in c.data().iter().zip([7.0, 10.0, 15.0, 22.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
