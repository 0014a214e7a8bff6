mod common;

use std::sync::Arc;

use fastmm::bilinear::strassen;
use fastmm::linalg::{
    determinant, invert, invert_with, lu_decompose, lu_decompose_with, solve, verify_3block_identity,
    MultiplierHandle,
};
use fastmm::matrix::norm;
use fastmm::stpp::{StppMultiplier, StppOptions};
use fastmm::{multiply_classical, Error, Matrix, NormKind, Rational, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn strassen_handle(cutoff: usize) -> MultiplierHandle {
    MultiplierHandle::bilinear(strassen(), cutoff).unwrap()
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

fn rows(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn residual(a: &Matrix<f64>, inv: &Matrix<f64>) -> f64 {
    let r = multiply_classical(a, inv).unwrap().sub(&Matrix::identity(a.rows(), ())).unwrap();
    norm(&r, NormKind::Frobenius)
}

#[test]
fn inverse_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for handle in [MultiplierHandle::Classical, strassen_handle(4)] {
        for n in [1, 5, 16, 17, 32] {
            let a = common::well_conditioned(n, &mut rng);
            let inv = invert(&a, &handle).unwrap();
            assert!(residual(&a, &inv) <= 1e-10, "n = {n}");
            let back = invert(&inv, &handle).unwrap();
            let rel = norm(&back.sub(&a).unwrap(), NormKind::Frobenius) / norm(&a, NormKind::Frobenius);
            assert!(rel <= 2e-10, "n = {n}: {rel:e}");
        }
    }
}

#[test]
fn group_algebra_multiplier_inside_inversion() {
    let family = common::fixture_family();
    let handle = MultiplierHandle::Stpp(Arc::new(StppMultiplier::new(family, StppOptions::default()).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let a = common::well_conditioned(10, &mut rng);
    let inv = invert_with(&a, &handle, 2).unwrap();
    assert!(residual(&a, &inv) <= 1e-10);
    assert!(matches!(invert(&Matrix::<Rational>::identity(3, ()), &handle), Err(Error::UnsupportedRegime(_))));
}

#[test]
fn exact_inverse_and_parametricity() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in [1, 2, 3, 7, 12] {
        let a = common::random_rational(n, n, &mut rng);
        let classical = invert_with(&a, &MultiplierHandle::Classical, 2).unwrap();
        let fast = invert_with(&a, &strassen_handle(1), 2).unwrap();
        assert_eq!(classical, fast);
        assert_eq!(multiply_classical(&a, &classical).unwrap(), Matrix::identity(n, ()));
        let l1 = lu_decompose_with(&a, &MultiplierHandle::Classical, 2).unwrap();
        let l2 = lu_decompose_with(&a, &strassen_handle(1), 2).unwrap();
        assert_eq!(l1, l2);
    }
}

#[test]
fn singular_inputs_are_reported() {
    let mut m = Matrix::<Rational>::identity(4, ());
    m.set(3, 3, Rational::zero());
    assert!(matches!(invert(&m, &MultiplierHandle::Classical), Err(Error::Singular { .. })));
    assert!(matches!(solve(&m, &Matrix::identity(4, ())), Err(Error::Singular { .. })));
    assert_eq!(determinant(&m).unwrap(), Rational::zero());
    let f = Matrix::<f64>::from_fn(3, 3, (), |i, j| (i + j) as f64);
    assert!(matches!(invert(&f, &MultiplierHandle::Classical), Err(Error::Singular { .. })));
}

#[test]
fn determinants_match_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for n in 1..=8 {
        for _ in 0..3 {
            let a = common::random_rational(n, n, &mut rng);
            assert_eq!(determinant(&a).unwrap(), cofactor_det(&rows(&a)), "n = {n}");
        }
    }
}

#[test]
fn three_block_identity_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for n in [1, 3, 6] {
        let a = common::random_rational(n, n, &mut rng);
        let b = common::random_rational(n, n, &mut rng);
        for handle in [MultiplierHandle::Classical, strassen_handle(1)] {
            let check = verify_3block_identity(&a, &b, &handle).unwrap();
            assert!(check.inverse_matches);
            assert_eq!(check.deviation, 0.0);
            assert_eq!(check.product, multiply_classical(&a, &b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_rational(6, 6, &mut rng);
        let b = common::random_rational(6, 6, &mut rng);
        let ab = multiply_classical(&a, &b).unwrap();
        prop_assert_eq!(determinant(&ab).unwrap(), &determinant(&a).unwrap() * &determinant(&b).unwrap());
    }

    #[test]
    fn lup_invariants(seed in any::<u64>(), m in 1usize..10, extra in 0usize..6, cutoff in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = m + extra;
        let a = common::random_rational(m, n, &mut rng);
        let lup = match lu_decompose_with(&a, &MultiplierHandle::Classical, cutoff) {
            Ok(l) => l,
            Err(Error::RankDeficient { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for i in 0..m {
            prop_assert!(lup.l.get(i, i).is_one());
            for j in i + 1..m {
                prop_assert!(lup.l.get(i, j).is_zero());
            }
            for j in 0..i.min(n) {
                prop_assert!(lup.u.get(i, j).is_zero());
            }
        }
        let mut cols = lup.columns.clone();
        cols.sort_unstable();
        prop_assert_eq!(cols, (0..n).collect::<Vec<_>>());
        prop_assert_eq!(lup.reconstruct(&MultiplierHandle::Classical).unwrap(), a);
    }

    #[test]
    fn solve_is_exact(seed in any::<u64>(), n in 1usize..8, r in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_rational(n, n, &mut rng);
        let b = common::random_rational(n, r, &mut rng);
        match solve(&a, &b) {
            Ok(x) => prop_assert_eq!(multiply_classical(&a, &x).unwrap(), b),
            Err(Error::Singular { .. }) => prop_assert!(determinant(&a).unwrap().is_zero()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}

#[test]
fn float_lup_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let a = Matrix::<f64>::from_fn(12, 20, (), |_, _| rng.gen_range(-1.0..1.0));
    let lup = lu_decompose(&a).unwrap();
    let back = lup.reconstruct(&strassen_handle(2)).unwrap();
    assert!(norm(&back.sub(&a).unwrap(), NormKind::MaxEntry) < 1e-12);
    assert!(Scalar::is_zero(lup.u.get(11, 0)));
}
