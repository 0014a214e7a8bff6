//! Error-bound calculators, exponent solvers, and the roundoff harness.
//!
//! The harness compares a computed product against an exact rational
//! reference built from the very same inputs and checks
//!
//! ```text
//! |C_comp - C| <= mu(n) * eps * |A| * |B| * (1 + slack)
//! ```

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::bilinear::{BilinearAlgorithm, SparsityProfile};
use crate::error::{Error, Result};
use crate::matrix::{multiply_classical, norm, Matrix, NormKind};
use crate::scalar::{Rational, Rounded, RoundingContext, Scalar};

fn log_k_exact(n: usize, k: usize) -> Result<u32> {
    if k < 2 || n == 0 {
        return Err(Error::NotPowerOf { n, k });
    }
    let (mut side, mut m) = (n, 0);
    while side % k == 0 {
        side /= k;
        m += 1;
    }
    if side != 1 {
        return Err(Error::NotPowerOf { n, k });
    }
    Ok(m)
}

/// Stationary bound for `n = k^m`:
/// `(1 + max_{r,s}(alpha_s + beta_s + gamma_r + 3) m) (theta |U| |V| |W|)^m`.
pub fn mu_stationary(
    profile: &SparsityProfile,
    norm_u: f64,
    norm_v: f64,
    norm_w: f64,
    theta: u64,
    k: usize,
    n: usize,
) -> Result<f64> {
    let m = log_k_exact(n, k)?;
    let growth = theta as f64 * norm_u * norm_v * norm_w;
    Ok((1.0 + profile.depth_term() as f64 * m as f64) * growth.powi(m as i32))
}

/// A concrete instantiation of the stationary bound, recorded in reports.
#[derive(Clone, Debug, PartialEq)]
pub struct StationaryBound {
    pub profile: SparsityProfile,
    pub k: usize,
    pub theta: u64,
    pub norm_u: f64,
    pub norm_v: f64,
    pub norm_w: f64,
}

impl StationaryBound {
    /// `theta = theta0` of the profile and max-entry norms of `U`, `V`, `W`.
    pub fn theta0(alg: &BilinearAlgorithm) -> Self {
        let profile = alg.sparsity();
        let max_entry = |m: &Matrix<Rational>| norm(m, NormKind::MaxEntry);
        Self {
            theta: profile.theta0(),
            k: alg.k(),
            norm_u: max_entry(alg.u()),
            norm_v: max_entry(alg.v()),
            norm_w: max_entry(alg.w()),
            profile,
        }
    }

    pub fn with_theta(mut self, theta: u64) -> Self {
        self.theta = theta;
        self
    }

    pub fn mu(&self, n: usize) -> Result<f64> {
        mu_stationary(&self.profile, self.norm_u, self.norm_v, self.norm_w, self.theta, self.k, n)
    }

    pub fn describe(&self) -> String {
        format!(
            "theta={} (max_s(a_s+b_s)+max_r c_r surrogate={}), |U|={} |V|={} |W|={} (max-entry), depth term={}",
            self.theta,
            self.profile.theta0(),
            self.norm_u,
            self.norm_v,
            self.norm_w,
            self.profile.depth_term()
        )
    }
}

/// First-order bound of the classical inner-product algorithm in the
/// max-entry norm: each entry carries at most `n eps sum_k |a_ik| |b_kj|`.
pub fn mu_classical(n: usize) -> f64 {
    (n * n) as f64
}

/// One level of a recursion with linear pre- and post-processing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrePostLevel {
    pub t: usize,
    pub pre_norm: f64,
    pub post_norm: f64,
    pub f_pre: f64,
    pub f_post: f64,
}

/// Evaluates, from the last level up,
/// `mu_j = mu_{j+1} t_j |Post| |Pre|^2 + 2 f_pre t_j |Post| + f_post |Pre|^2`.
pub fn mu_nonstationary(params: &[PrePostLevel], mu_base: f64) -> Result<f64> {
    if params.is_empty() {
        return Err(Error::InvalidArgument("no recursion levels given".into()));
    }
    for (j, p) in params.iter().enumerate() {
        if [p.pre_norm, p.post_norm, p.f_pre, p.f_post].iter().any(|x| !(*x >= 0.0)) {
            return Err(Error::InvalidArgument(format!("level {j} has a negative or NaN parameter")));
        }
    }
    Ok(params.iter().rev().fold(mu_base, |mu, p| {
        let t = p.t as f64;
        mu * t * p.post_norm * p.pre_norm * p.pre_norm
            + 2.0 * p.f_pre * t * p.post_norm
            + p.f_post * p.pre_norm * p.pre_norm
    }))
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) {
        return Err(Error::InvalidArgument(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

/// Error-growth exponent `(alpha + 2) / (2 beta)` of a group-theoretic family.
pub fn mu_stpp_exponent(alpha: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok((alpha + 2.0) / (2.0 * beta))
}

/// Running-time exponent `(alpha - 1) / beta`.
pub fn runtime_exponent(alpha: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok((alpha - 1.0) / beta)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentPair {
    pub error: f64,
    pub runtime: f64,
    pub sum: f64,
}

impl ExponentPair {
    pub fn exceeds_three(&self) -> bool {
        self.sum > 3.0
    }
}

/// Both exponents; their sum is `3 alpha / (2 beta)`.
pub fn stpp_exponents(alpha: f64, beta: f64) -> Result<ExponentPair> {
    let error = mu_stpp_exponent(alpha, beta)?;
    let runtime = runtime_exponent(alpha, beta)?;
    let sum = error + runtime;
    let closed = 3.0 * alpha / (2.0 * beta);
    assert!(
        (sum - closed).abs() <= 1e-12 * closed.abs().max(1.0),
        "exponent sum {sum} disagrees with 3a/2b = {closed}"
    );
    Ok(ExponentPair { error, runtime, sum })
}

/// Right-hand side of the exponent inequality.
#[derive(Clone, Debug, PartialEq)]
pub enum ExponentRhs {
    /// `sum_i (e_i h_i l_i)^{w/3} <= r`
    Rank(f64),
    /// `sum_i (e_i h_i l_i)^{w/3} <= sum_k d_k^w`
    IrrepDims(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentProblem {
    pub triples: Vec<(u64, u64, u64)>,
    pub rhs: ExponentRhs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clamp {
    /// The inequality still holds at 3; the bound says nothing better than 3.
    AtThree,
    /// The inequality already fails at 2.
    AtTwo,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OmegaBound {
    pub omega: f64,
    pub clamp: Option<Clamp>,
}

const OMEGA_TOL: f64 = 1e-9;

/// Solves the exponent equation for `w` in `[2, 3]` by bisection.
pub fn omega_bound(problem: &ExponentProblem) -> Result<OmegaBound> {
    if problem.triples.is_empty() {
        return Err(Error::InvalidArgument("no matrix formats given".into()));
    }
    if problem.triples.iter().any(|&(e, h, l)| e == 0 || h == 0 || l == 0) {
        return Err(Error::InvalidArgument("matrix format with a zero dimension".into()));
    }
    match &problem.rhs {
        ExponentRhs::Rank(r) if !(*r > 0.0) => {
            return Err(Error::InvalidArgument(format!("rank must be positive, got {r}")))
        }
        ExponentRhs::IrrepDims(d) if d.is_empty() || d.contains(&0) => {
            return Err(Error::InvalidArgument("irreducible dimensions must be positive".into()))
        }
        _ => {}
    }
    let volumes: Vec<f64> = problem.triples.iter().map(|&(e, h, l)| (e * h * l) as f64).collect();
    // excess(w) <= 0 exactly when the inequality holds at w
    let excess = |w: f64| -> f64 {
        let lhs: f64 = volumes.iter().map(|v| v.powf(w / 3.0)).sum();
        let rhs = match &problem.rhs {
            ExponentRhs::Rank(r) => *r,
            ExponentRhs::IrrepDims(d) => d.iter().map(|&x| (x as f64).powf(w)).sum(),
        };
        (lhs - rhs) / rhs
    };
    let (at2, at3) = (excess(2.0), excess(3.0));
    if at3.abs() <= 1e-15 {
        return Ok(OmegaBound { omega: 3.0, clamp: None });
    }
    if at2.abs() <= 1e-15 {
        return Ok(OmegaBound { omega: 2.0, clamp: None });
    }
    if at2 <= 0.0 && at3 <= 0.0 {
        return Ok(OmegaBound { omega: 3.0, clamp: Some(Clamp::AtThree) });
    }
    if at2 > 0.0 && at3 > 0.0 {
        return Ok(OmegaBound { omega: 2.0, clamp: Some(Clamp::AtTwo) });
    }
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    let lo_sign = at2 > 0.0;
    while hi - lo > OMEGA_TOL / 4.0 {
        let mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(OmegaBound { omega: 0.5 * (lo + hi), clamp: None })
}

/// Outcome of one harness run.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorBoundReport {
    pub n: usize,
    pub algorithm: String,
    pub norm_kind: NormKind,
    /// Significand bits, or `None` in the exact regime.
    pub bits: Option<u32>,
    pub epsilon: f64,
    pub measured_error: f64,
    pub norm_a: f64,
    pub norm_b: f64,
    pub mu: f64,
    /// Sparsity integer used for `mu`, if the bound has one.
    pub theta: Option<u64>,
    pub slack: f64,
    pub pass: bool,
}

impl ErrorBoundReport {
    pub fn bound(&self) -> f64 {
        self.mu * self.epsilon * self.norm_a * self.norm_b * (1.0 + self.slack)
    }

    /// `measured / (eps |A| |B|)`, the empirical counterpart of `mu`.
    pub fn normalized_error(&self) -> f64 {
        let scale = self.epsilon * self.norm_a * self.norm_b;
        if scale == 0.0 {
            0.0
        } else {
            self.measured_error / scale
        }
    }

    pub const CSV_HEADER: &'static str =
        "n,algorithm,norm,p,epsilon,measured,mu,theta,pass,bound,norm_a,norm_b,slack";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:e},{:e},{:e},{},{},{:e},{:e},{:e},{}",
            self.n,
            self.algorithm,
            self.norm_kind,
            self.bits.map_or_else(|| "exact".to_string(), |b| b.to_string()),
            self.epsilon,
            self.measured_error,
            self.mu,
            self.theta.map_or_else(|| "-".to_string(), |t| t.to_string()),
            self.pass,
            self.bound(),
            self.norm_a,
            self.norm_b,
            self.slack
        )
    }
}

impl fmt::Display for ErrorBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} {} [{} norm, p={}, eps={:e}]: measured {:e} vs bound {:e} (mu={:e}, theta={}, slack={}) -> {}",
            self.n,
            self.algorithm,
            self.norm_kind,
            self.bits.map_or_else(|| "exact".to_string(), |b| b.to_string()),
            self.epsilon,
            self.measured_error,
            self.bound(),
            self.mu,
            self.theta.map_or_else(|| "-".to_string(), |t| t.to_string()),
            self.slack,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// The bound a run is judged against.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundSpec {
    pub algorithm: String,
    pub mu: f64,
    pub theta: Option<u64>,
    pub slack: f64,
}

/// Exact product of the values actually held by `a` and `b`, as (re, im).
fn exact_reference<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<(Matrix<Rational>, Matrix<Rational>)> {
    let split = |m: &Matrix<T>| -> (Matrix<Rational>, Matrix<Rational>) {
        let parts: Vec<(Rational, Rational)> = m.data().iter().map(T::exact_parts).collect();
        let re = Matrix::new(m.rows(), m.cols(), parts.iter().map(|p| p.0.clone()).collect(), ()).unwrap();
        let im = Matrix::new(m.rows(), m.cols(), parts.into_iter().map(|p| p.1).collect(), ()).unwrap();
        (re, im)
    };
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let rr = multiply_classical(&ar, &br)?;
    if ai.is_zero() && bi.is_zero() {
        let zero = Matrix::zeros(rr.rows(), rr.cols(), ());
        return Ok((rr, zero));
    }
    let re = rr.sub(&multiply_classical(&ai, &bi)?)?;
    let im = multiply_classical(&ar, &bi)?.add(&multiply_classical(&ai, &br)?)?;
    Ok((re, im))
}

/// Runs `multiply` on `a`, `b` in their own regime and measures the error
/// against the exact product of the same inputs.
pub fn measure_error<T: Scalar>(
    multiply: impl FnOnce(&Matrix<T>, &Matrix<T>) -> Result<Matrix<T>>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    norm_kind: NormKind,
    bound: &BoundSpec,
) -> Result<ErrorBoundReport> {
    let computed = multiply(a, b)?;
    let (re, im) = exact_reference(a, b)?;
    if computed.shape() != re.shape() {
        return Err(Error::InvalidArgument(format!(
            "multiplier returned {}x{}, expected {}x{}",
            computed.rows(),
            computed.cols(),
            re.rows(),
            re.cols()
        )));
    }
    let diff = Matrix::<Complex64>::from_fn(re.rows(), re.cols(), (), |i, j| {
        let (cr, ci) = computed.get(i, j).exact_parts();
        Complex64::new((&cr - re.get(i, j)).to_f64(), (&ci - im.get(i, j)).to_f64())
    });
    let ctx = a.ctx();
    let epsilon = T::unit_roundoff(ctx);
    let bits = match T::regime(ctx) {
        crate::scalar::Regime::Rational => None,
        crate::scalar::Regime::Float | crate::scalar::Regime::Complex => Some(53),
        crate::scalar::Regime::Rounded(c) | crate::scalar::Regime::RoundedComplex(c) => Some(c.bits()),
    };
    let mut report = ErrorBoundReport {
        n: a.rows(),
        algorithm: bound.algorithm.clone(),
        norm_kind,
        bits,
        epsilon,
        measured_error: norm(&diff, norm_kind),
        norm_a: norm(a, norm_kind),
        norm_b: norm(b, norm_kind),
        mu: bound.mu,
        theta: bound.theta,
        slack: bound.slack,
        pass: false,
    };
    report.pass = report.measured_error <= report.bound();
    Ok(report)
}

/// Entries `j / 2^bits` with `j` uniform in `[-2^bits, 2^bits]`: values in
/// `[-1, 1]` that are exact in any precision of more than `bits` bits.
pub fn random_dyadic(rows: usize, cols: usize, bits: u32, rng: &mut impl Rng) -> Matrix<f64> {
    let scale = (bits as f64).exp2();
    let top = 1i64 << bits;
    Matrix::from_fn(rows, cols, (), |_, _| rng.gen_range(-top..=top) as f64 / scale)
}

/// Moves a binary64 matrix into a simulated precision, rounding each entry.
pub fn lift(m: &Matrix<f64>, ctx: RoundingContext) -> Matrix<Rounded> {
    m.map(ctx, |&x| Rounded::new(x, ctx))
}

/// Ordinary least squares `y = slope x + intercept`.
pub fn least_squares(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}
