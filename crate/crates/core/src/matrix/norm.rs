use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormKind {
    MaxEntry,
    Frobenius,
    /// Largest singular value, estimated by power iteration on `A* A`.
    Operator2,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::MaxEntry, NormKind::Frobenius, NormKind::Operator2];

    /// Submultiplicative (`|AB| <= |A||B|`); the max-entry norm is not.
    pub fn is_consistent(self) -> bool {
        !matches!(self, NormKind::MaxEntry)
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormKind::MaxEntry => "max-entry",
            NormKind::Frobenius => "frobenius",
            NormKind::Operator2 => "operator-2",
        })
    }
}

impl FromStr for NormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-entry" | "max" => Ok(NormKind::MaxEntry),
            "frobenius" | "fro" => Ok(NormKind::Frobenius),
            "operator-2" | "2" => Ok(NormKind::Operator2),
            _ => Err(Error::InvalidArgument(format!("unknown norm {s:?}"))),
        }
    }
}

const POWER_TOL: f64 = 1e-10;
const POWER_MAX_ITERS: usize = 200;
const POWER_SEED: u64 = 0x5eed;

pub fn norm<T: Scalar>(a: &Matrix<T>, kind: NormKind) -> f64 {
    match kind {
        NormKind::MaxEntry => a.data().iter().map(T::modulus).fold(0.0, f64::max),
        NormKind::Frobenius => a.data().iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt(),
        NormKind::Operator2 => operator2_estimate(a),
    }
}

fn operator2_estimate<T: Scalar>(a: &Matrix<T>) -> f64 {
    let (m, n) = a.shape();
    if m == 0 || n == 0 || a.is_zero() {
        return 0.0;
    }
    let entries: Vec<Complex64> = a.data().iter().map(T::to_complex).collect();
    let apply = |v: &[Complex64]| -> Vec<Complex64> {
        let w: Vec<Complex64> = (0..m)
            .map(|i| (0..n).map(|j| entries[i * n + j] * v[j]).sum())
            .collect();
        (0..n)
            .map(|j| (0..m).map(|i| entries[i * n + j].conj() * w[i]).sum())
            .collect()
    };
    let start = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    match power_iterate(&apply, start) {
        Some(lambda) => lambda.sqrt(),
        None => {
            // All-ones start was annihilated by A* A; retry from a seeded random vector.
            let mut rng = ChaCha8Rng::seed_from_u64(POWER_SEED);
            let mut v: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            normalize(&mut v);
            power_iterate(&apply, v).unwrap_or(0.0).sqrt()
        }
    }
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let len = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if len > 0.0 {
        v.iter_mut().for_each(|x| *x /= len);
    }
    len
}

fn power_iterate(apply: &impl Fn(&[Complex64]) -> Vec<Complex64>, mut v: Vec<Complex64>) -> Option<f64> {
    let mut lambda = 0.0;
    for _ in 0..POWER_MAX_ITERS {
        let mut z = apply(&v);
        let rayleigh: f64 = v.iter().zip(&z).map(|(x, y)| (x.conj() * y).re).sum();
        if normalize(&mut z) == 0.0 {
            return if lambda > 0.0 { Some(lambda) } else { None };
        }
        let prev = lambda;
        lambda = rayleigh.max(lambda);
        v = z;
        if (lambda - prev).abs() <= POWER_TOL * lambda {
            break;
        }
    }
    Some(lambda)
}

/// Row heights and column widths of a block partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGrid {
    pub row_sizes: Vec<usize>,
    pub col_sizes: Vec<usize>,
}

impl BlockGrid {
    pub fn new(row_sizes: Vec<usize>, col_sizes: Vec<usize>) -> Self {
        Self {
            row_sizes,
            col_sizes,
        }
    }

    pub fn single(rows: usize, cols: usize) -> Self {
        Self::new(vec![rows], vec![cols])
    }

    pub fn uniform(rows: usize, cols: usize, k: usize) -> Self {
        Self::new(vec![rows / k; k], vec![cols / k; k])
    }

    fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        let tiles = |sizes: &[usize], total: usize, what: &str| -> Result<()> {
            if sizes.is_empty() || sizes.contains(&0) || sizes.iter().sum::<usize>() != total {
                return Err(Error::MalformedPartition(format!(
                    "{what} sizes {sizes:?} do not tile {total}"
                )));
            }
            Ok(())
        };
        tiles(&self.row_sizes, rows, "row")?;
        tiles(&self.col_sizes, cols, "column")
    }

    pub fn blocks<T: Scalar>(&self, m: &Matrix<T>) -> Result<Vec<Matrix<T>>> {
        self.validate(m.rows(), m.cols())?;
        let mut out = Vec::with_capacity(self.row_sizes.len() * self.col_sizes.len());
        let mut r0 = 0;
        for &h in &self.row_sizes {
            let mut c0 = 0;
            for &w in &self.col_sizes {
                out.push(m.block(r0, c0, h, w));
                c0 += w;
            }
            r0 += h;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionReport {
    pub whole: f64,
    pub max_block: f64,
    pub sum_blocks: f64,
    /// `max_s |M_s| <= |M|`
    pub lower_ok: bool,
    /// `|M| <= sum_s |M_s|`
    pub upper_ok: bool,
}

/// Both sides of `max_s |M_s| <= |M| <= sum_s |M_s|`, with 1e-12 relative slack.
pub fn check_partition_condition<T: Scalar>(
    kind: NormKind,
    m: &Matrix<T>,
    grid: &BlockGrid,
) -> Result<PartitionReport> {
    const REL_TOL: f64 = 1e-12;
    let blocks = grid.blocks(m)?;
    let whole = norm(m, kind);
    let norms: Vec<f64> = blocks.iter().map(|b| norm(b, kind)).collect();
    let max_block = norms.iter().copied().fold(0.0, f64::max);
    let sum_blocks: f64 = norms.iter().sum();
    let slack = |x: f64| REL_TOL * x.abs().max(f64::MIN_POSITIVE);
    Ok(PartitionReport {
        whole,
        max_block,
        sum_blocks,
        lower_ok: max_block <= whole + slack(whole),
        upper_ok: whole <= sum_blocks + slack(sum_blocks),
    })
}
