//! Bilinear matrix-multiplication schemes.
//!
//! A scheme multiplies `k x k` block matrices with `t` block products:
//!
//! ```text
//! P_s  = (sum_i u[i][s] A_i) * (sum_j v[j][s] B_j)
//! C_r  = sum_s w[r][s] P_s
//! ```
//!
//! Blocks of `A` and `B` are numbered column-wise: index `i = q*k + p` names
//! block `(p, q)`. Blocks of `C` are numbered row-wise: `r = h*k + l` names
//! block `(h, l)`. All indices are zero-based.

mod engine;
mod spec;

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;

pub use engine::{count_multiplications, multiply_nonstationary, multiply_stationary, Engine, RecursionSchedule};
pub use spec::{emit_spec, parse_spec};

#[derive(Clone, Debug, PartialEq)]
pub struct BilinearAlgorithm {
    k: usize,
    t: usize,
    u: Matrix<Rational>,
    v: Matrix<Rational>,
    w: Matrix<Rational>,
}

impl BilinearAlgorithm {
    /// Checks shapes and the rank lower bound `t >= k^2`; does not check
    /// correctness (see [`validate`]).
    pub fn new(k: usize, t: usize, u: Matrix<Rational>, v: Matrix<Rational>, w: Matrix<Rational>) -> Result<Self> {
        if k == 0 || t == 0 {
            return Err(Error::InvalidAlgorithm(format!("k and t must be positive (k={k}, t={t})")));
        }
        if t < k * k {
            return Err(Error::InvalidAlgorithm(format!(
                "t = {t} products cannot produce the {} independent entries of a {k}x{k} block product (need t >= k^2)",
                k * k
            )));
        }
        for (name, m) in [("U", &u), ("V", &v), ("W", &w)] {
            if m.shape() != (k * k, t) {
                return Err(Error::InvalidAlgorithm(format!(
                    "{name} is {}x{}, expected {}x{t}",
                    m.rows(),
                    m.cols(),
                    k * k
                )));
            }
        }
        Ok(Self { k, t, u, v, w })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn u(&self) -> &Matrix<Rational> {
        &self.u
    }

    pub fn v(&self) -> &Matrix<Rational> {
        &self.v
    }

    pub fn w(&self) -> &Matrix<Rational> {
        &self.w
    }

    /// Copy with one coefficient replaced.
    pub fn with_entry(&self, which: Factor, row: usize, col: usize, value: Rational) -> Self {
        let mut out = self.clone();
        let m = match which {
            Factor::U => &mut out.u,
            Factor::V => &mut out.v,
            Factor::W => &mut out.w,
        };
        m.set(row, col, value);
        out
    }

    pub fn factor(&self, which: Factor) -> &Matrix<Rational> {
        match which {
            Factor::U => &self.u,
            Factor::V => &self.v,
            Factor::W => &self.w,
        }
    }

    pub fn sparsity(&self) -> SparsityProfile {
        let nnz_col = |m: &Matrix<Rational>, s: usize| (0..m.rows()).filter(|&i| !m.get(i, s).is_zero()).count();
        SparsityProfile {
            a: (0..self.t).map(|s| nnz_col(&self.u, s)).collect(),
            b: (0..self.t).map(|s| nnz_col(&self.v, s)).collect(),
            c: (0..self.k * self.k)
                .map(|r| self.w.row(r).iter().filter(|x| !x.is_zero()).count())
                .collect(),
        }
    }

    /// `log_k t`, the exponent of the recursion's operation count.
    pub fn exponent(&self) -> f64 {
        (self.t as f64).ln() / (self.k as f64).ln()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    U,
    V,
    W,
}

fn coefficient_matrix(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(rows, cols, ());
    for &(i, s, c) in entries {
        m.set(i, s, Rational::from_integer(c));
    }
    m
}

/// Strassen's seven-product scheme.
///
/// ```text
/// M1 = (A11 + A22)(B11 + B22)    C11 = M1 + M4 - M5 + M7
/// M2 = (A21 + A22) B11           C12 = M3 + M5
/// M3 = A11 (B12 - B22)           C21 = M2 + M4
/// M4 = A22 (B21 - B11)           C22 = M1 - M2 + M3 + M6
/// M5 = (A11 + A12) B22
/// M6 = (A21 - A11)(B11 + B12)
/// M7 = (A12 - A22)(B21 + B22)
/// ```
pub fn strassen() -> BilinearAlgorithm {
    // column-wise block numbering: 0 = X11, 1 = X21, 2 = X12, 3 = X22
    let u = coefficient_matrix(
        4,
        7,
        &[
            (0, 0, 1), (3, 0, 1),
            (1, 1, 1), (3, 1, 1),
            (0, 2, 1),
            (3, 3, 1),
            (0, 4, 1), (2, 4, 1),
            (1, 5, 1), (0, 5, -1),
            (2, 6, 1), (3, 6, -1),
        ],
    );
    let v = coefficient_matrix(
        4,
        7,
        &[
            (0, 0, 1), (3, 0, 1),
            (0, 1, 1),
            (2, 2, 1), (3, 2, -1),
            (1, 3, 1), (0, 3, -1),
            (3, 4, 1),
            (0, 5, 1), (2, 5, 1),
            (1, 6, 1), (3, 6, 1),
        ],
    );
    // row-wise: 0 = C11, 1 = C12, 2 = C21, 3 = C22
    let w = coefficient_matrix(
        4,
        7,
        &[
            (0, 0, 1), (0, 3, 1), (0, 4, -1), (0, 6, 1),
            (1, 2, 1), (1, 4, 1),
            (2, 1, 1), (2, 3, 1),
            (3, 0, 1), (3, 1, -1), (3, 2, 1), (3, 5, 1),
        ],
    );
    BilinearAlgorithm::new(2, 7, u, v, w).expect("strassen shapes")
}

/// The definitional `k^3`-product scheme: product `(h, m, l)` is `A_hm B_ml`.
pub fn classical(k: usize) -> BilinearAlgorithm {
    assert!(k >= 1, "block count must be positive");
    let t = k * k * k;
    let mut u = Vec::with_capacity(t);
    let mut v = Vec::with_capacity(t);
    let mut w = Vec::with_capacity(t);
    for h in 0..k {
        for m in 0..k {
            for l in 0..k {
                let s = (h * k + m) * k + l;
                u.push((m * k + h, s, 1));
                v.push((l * k + m, s, 1));
                w.push((h * k + l, s, 1));
            }
        }
    }
    BilinearAlgorithm::new(
        k,
        t,
        coefficient_matrix(k * k, t, &u),
        coefficient_matrix(k * k, t, &v),
        coefficient_matrix(k * k, t, &w),
    )
    .expect("classical shapes")
}

/// One step of `outer` whose block products are computed by one step of `inner`.
pub fn tensor_product(outer: &BilinearAlgorithm, inner: &BilinearAlgorithm) -> BilinearAlgorithm {
    let (k1, k2) = (outer.k, inner.k);
    let (t1, t2) = (outer.t, inner.t);
    let k = k1 * k2;
    let t = t1 * t2;
    let colwise = |p: usize, q: usize| -> (usize, usize, usize) {
        (q * k + p, (q / k2) * k1 + p / k2, (q % k2) * k2 + p % k2)
    };
    let rowwise = |h: usize, l: usize| -> (usize, usize, usize) {
        (h * k + l, (h / k2) * k1 + l / k2, (h % k2) * k2 + l % k2)
    };
    let mut u = Matrix::zeros(k * k, t, ());
    let mut v = Matrix::zeros(k * k, t, ());
    let mut w = Matrix::zeros(k * k, t, ());
    for a in 0..k {
        for b in 0..k {
            let (i, i1, i2) = colwise(a, b);
            let (r, r1, r2) = rowwise(a, b);
            for s1 in 0..t1 {
                for s2 in 0..t2 {
                    let s = s1 * t2 + s2;
                    u.set(i, s, outer.u.get(i1, s1) * inner.u.get(i2, s2));
                    v.set(i, s, outer.v.get(i1, s1) * inner.v.get(i2, s2));
                    w.set(r, s, outer.w.get(r1, s1) * inner.w.get(r2, s2));
                }
            }
        }
    }
    BilinearAlgorithm::new(k, t, u, v, w).expect("tensor product shapes")
}

/// Nonzero counts of the columns of `U`, `V` and rows of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityProfile {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

impl SparsityProfile {
    pub fn alpha(&self) -> Vec<u32> {
        self.a.iter().map(|&x| ceil_log2(x)).collect()
    }

    pub fn beta(&self) -> Vec<u32> {
        self.b.iter().map(|&x| ceil_log2(x)).collect()
    }

    pub fn gamma(&self) -> Vec<u32> {
        self.c.iter().map(|&x| ceil_log2(x)).collect()
    }

    /// `max_{r,s} (alpha_s + beta_s + gamma_r + 3)`.
    pub fn depth_term(&self) -> u32 {
        let ab = self.alpha().iter().zip(self.beta()).map(|(a, b)| a + b).max().unwrap_or(0);
        let g = self.gamma().into_iter().max().unwrap_or(0);
        ab + g + 3
    }

    /// Conservative stand-in for the sparsity integer of the stationary
    /// bound: `max_s (a_s + b_s) + max_r c_r`.
    pub fn theta0(&self) -> u64 {
        let ab = self.a.iter().zip(&self.b).map(|(a, b)| a + b).max().unwrap_or(0);
        let c = self.c.iter().copied().max().unwrap_or(0);
        (ab + c) as u64
    }
}

/// A `(h, l, i, j)` at which the tensor identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub h: usize,
    pub l: usize,
    pub i: usize,
    pub j: usize,
    pub expected: Rational,
    pub actual: Rational,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "block C({},{}): coefficient of A-index {} times B-index {} is {}, expected {}",
            self.h, self.l, self.i, self.j, self.actual, self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub witness: Option<Witness>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.witness.is_none()
    }
}

/// Exhaustive exact check of `sum_s u_is v_js w_rs = [p = h, q = m, l' = l]`
/// for every `(h, l, i, j)`, where `i = (p, q)`, `j = (m, l')`, `r = (h, l)`.
/// Reports the first failure in `(h, l, i, j)` order.
pub fn validate(alg: &BilinearAlgorithm) -> Validation {
    let k = alg.k;
    let kk = k * k;
    let support: Vec<Vec<usize>> = (0..kk)
        .map(|r| (0..alg.t).filter(|&s| !alg.w.get(r, s).is_zero()).collect())
        .collect();
    for h in 0..k {
        for l in 0..k {
            let r = h * k + l;
            for i in 0..kk {
                let (p, q) = (i % k, i / k);
                for j in 0..kk {
                    let (m, lp) = (j % k, j / k);
                    let mut sum = Rational::zero();
                    for &s in &support[r] {
                        let uv = alg.u.get(i, s) * alg.v.get(j, s);
                        if !uv.is_zero() {
                            sum = &sum + &(&uv * alg.w.get(r, s));
                        }
                    }
                    let expected = if p == h && q == m && lp == l {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    if sum != expected {
                        return Validation {
                            witness: Some(Witness {
                                h,
                                l,
                                i,
                                j,
                                expected,
                                actual: sum,
                            }),
                        };
                    }
                }
            }
        }
    }
    Validation { witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strassen_is_valid() {
        assert!(validate(&strassen()).is_valid());
    }

    #[test]
    fn classical_is_valid() {
        for k in 1..=4 {
            assert!(validate(&classical(k)).is_valid(), "k = {k}");
        }
    }

    #[test]
    fn strassen_sparsity_profile() {
        let p = strassen().sparsity();
        assert_eq!(p.a, vec![2, 2, 1, 1, 2, 2, 2]);
        assert_eq!(p.b, vec![2, 1, 2, 2, 1, 2, 2]);
        assert_eq!(p.c, vec![4, 2, 2, 4]);
        assert_eq!(p.depth_term(), 7);
        assert_eq!(p.theta0(), 8);
    }

    #[test]
    fn flipped_w_sign_is_caught() {
        let bad = strassen().with_entry(Factor::W, 1, 4, Rational::from_integer(-1));
        let w = validate(&bad).witness.expect("mutation must be detected");
        assert_eq!((w.h, w.l), (0, 1));
    }

    #[test]
    fn tensor_products_are_valid() {
        let s = strassen();
        let c3 = classical(3);
        let sc = tensor_product(&s, &c3);
        assert_eq!((sc.k(), sc.t()), (6, 189));
        assert!(validate(&sc).is_valid());
        let ss = tensor_product(&s, &s);
        assert_eq!((ss.k(), ss.t()), (4, 49));
        assert!(validate(&ss).is_valid());
    }

    #[test]
    fn rank_bound_enforced() {
        let z = Matrix::<Rational>::zeros(4, 3, ());
        let err = BilinearAlgorithm::new(2, 3, z.clone(), z.clone(), z).unwrap_err();
        assert!(err.to_string().contains("t >= k^2"));
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
    }
}
