#![allow(dead_code)]

use std::path::PathBuf;

use fastmm::stpp::StppFamily;
use fastmm::{Matrix, Rational};
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_family() -> StppFamily {
    let text = std::fs::read_to_string(fixture("family.stpp")).unwrap();
    StppFamily::parse(&text).unwrap().0
}

/// Entries `p/q` with `|p| <= 16`, `1 <= q <= 8`.
pub fn random_rational(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, (), |_, _| Rational::new(rng.gen_range(-16..=16), rng.gen_range(1..=8)))
}

pub fn random_ints(rows: usize, cols: usize, lo: i64, hi: i64, rng: &mut impl Rng) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

pub fn int_matrix(v: &[Vec<i64>]) -> Matrix<Rational> {
    Matrix::from_fn(v.len(), v[0].len(), (), |i, j| Rational::from_integer(v[i][j]))
}

pub fn float_matrix(v: &[Vec<i64>]) -> Matrix<f64> {
    Matrix::from_fn(v.len(), v[0].len(), (), |i, j| v[i][j] as f64)
}

/// Textbook triple loop over machine integers.
pub fn int_product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| (0..p).map(|j| (0..m).map(|k| a[i][k] as i128 * b[k][j] as i128).sum()).collect())
        .collect()
}

pub fn equals_ints(c: &Matrix<Rational>, expected: &[Vec<i128>]) -> bool {
    expected.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, &v)| *c.get(i, j) == Rational::from_integer(v as i64))
    })
}

/// Random matrix with a dominant diagonal, hence well conditioned.
pub fn well_conditioned(n: usize, rng: &mut impl Rng) -> Matrix<f64> {
    Matrix::from_fn(n, n, (), |i, j| rng.gen_range(-1.0..1.0) + if i == j { 2.0 * n as f64 } else { 0.0 })
}

/// Runs the command line in-process, returning (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = fastmm::cli::run(std::iter::once("fastmm").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
