//! The `fastmm` command line.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 invalid algorithm
//! specification, 3 a mathematical property failed (invalid tensor
//! identity, STPP violation, error bound exceeded).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bilinear::{self, parse_spec, validate, BilinearAlgorithm, Engine, RecursionSchedule};
use crate::error::Error;
use crate::group::{stpp_check, stpp_search, AbelianGroup};
use crate::linalg::{self, MultiplierHandle, DEFAULT_CUTOFF};
use crate::matrix::{multiply_classical, parse_matrix, AnyMatrix, Matrix, NormKind, TextScalar};
use crate::scalar::RoundingContext;
use crate::stability::{
    lift, measure_error, mu_classical, omega_bound, random_dyadic, stpp_exponents, BoundSpec, Clamp,
    ErrorBoundReport, ExponentProblem, ExponentRhs, StationaryBound,
};
use crate::stpp::{measure_growth, BaseMultiplier, StppFamily, StppMultiplier, StppOptions};

#[derive(Parser, Debug)]
#[command(name = "fastmm", version, about = "Fast matrix multiplication, error bounds and derived linear algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two matrix files.
    Multiply {
        /// classical | strassen | spec:<file>
        #[arg(long, default_value = "classical")]
        alg: String,
        /// Side at or below which the recursion multiplies classically.
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the tensor identity of a bilinear algorithm.
    Validate {
        /// classical | classical:<k> | strassen | spec:<file>
        alg: String,
    },
    /// Measure roundoff against the first-order error bound.
    Bench {
        /// classical | strassen | spec:<file>
        #[arg(long, default_value = "strassen")]
        alg: String,
        /// Comma-separated sides, each a power of the block count.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Significand bits of the simulated arithmetic.
        #[arg(short, long = "bits", default_value_t = 24)]
        p: u32,
        /// max-entry | frobenius | operator2
        #[arg(long, default_value = "max-entry")]
        norm: NormKind,
        #[arg(long)]
        seed: u64,
        /// Random instances per size.
        #[arg(long, default_value_t = 1)]
        instances: usize,
        /// Override the sparsity integer of the bound.
        #[arg(long)]
        theta: Option<u64>,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        slack: f64,
        /// Input entries are multiples of 2^-input_bits in [-1, 1].
        #[arg(long, default_value_t = 12)]
        input_bits: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simultaneous triple product families.
    Stpp {
        #[command(subcommand)]
        action: StppAction,
    },
    /// Upper bound on the exponent of matrix multiplication.
    Exponent {
        /// Matrix format e,h,l; repeat for several formats.
        #[arg(long = "triple")]
        triples: Vec<String>,
        /// Rank r in sum (e h l)^(w/3) <= r.
        #[arg(long)]
        rank: Option<f64>,
        /// Irreducible dimensions d_k in sum (e h l)^(w/3) <= sum d_k^w.
        #[arg(long, value_delimiter = ',')]
        irrep_dims: Vec<u64>,
        /// Report the exponents of a family with growth parameters alpha, beta.
        #[arg(long)]
        stpp_family: bool,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
    },
    /// Invert a square matrix through multiplication.
    Invert {
        #[command(flatten)]
        mult: MultiplierArgs,
        a: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// LUP decomposition A = L U P.
    Lu {
        #[command(flatten)]
        mult: MultiplierArgs,
        a: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Determinant through LUP.
    Det { a: PathBuf },
    /// Solve A X = B through LUP.
    Solve {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct MultiplierArgs {
    /// classical | strassen | spec:<file> | stpp:<family file>
    #[arg(long, default_value = "classical")]
    multiplier: String,
    /// Side at or below which the reduction eliminates directly.
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
}

#[derive(Subcommand, Debug)]
enum StppAction {
    /// Backtracking search for one family member.
    Search {
        /// Orders of the cyclic factors of H, e.g. 5 or 4,4.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<usize>,
        /// Number of triples.
        #[arg(long = "N")]
        n: usize,
        /// Set sizes "x,y,z;x,y,z;..." (default: singletons).
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the exhaustive STPP check on every member of a family file.
    Check { family: PathBuf },
    /// Multiply through the group algebra.
    Multiply {
        #[arg(long)]
        family: PathBuf,
        /// classical | strassen
        #[arg(long, default_value = "classical")]
        base: String,
        /// Group-algebra levels before the base multiplier.
        #[arg(long, default_value_t = 1)]
        depth: usize,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fit growth exponents over the members of a family.
    Growth {
        #[arg(long)]
        family: PathBuf,
        /// Member degrees to fit (default: all).
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<usize>,
    },
}

/// A failure and its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
    fn spec(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
    fn math(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidAlgorithm(_) => Failure::spec(e.to_string()),
            Error::StppViolation(_) | Error::TppViolation(_) => Failure::math(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(n) = std::env::var("FASTMM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a pool may already exist when run is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Applies a generic matrix expression to whichever regime `$m` holds.
macro_rules! map_any {
    ($m:expr, |$x:ident| $body:expr) => {
        match $m {
            AnyMatrix::Rational($x) => AnyMatrix::from($body?),
            AnyMatrix::Float($x) => AnyMatrix::from($body?),
            AnyMatrix::Complex($x) => AnyMatrix::from($body?),
            AnyMatrix::Rounded($x) => AnyMatrix::from($body?),
            AnyMatrix::RoundedComplex($x) => AnyMatrix::from($body?),
        }
    };
}

macro_rules! text_any {
    ($m:expr, |$x:ident| $body:expr) => {
        match $m {
            AnyMatrix::Rational($x) => $body,
            AnyMatrix::Float($x) => $body,
            AnyMatrix::Complex($x) => $body,
            AnyMatrix::Rounded($x) => $body,
            AnyMatrix::RoundedComplex($x) => $body,
        }
    };
}

/// Like `map_any!` for two operands, which must share a regime.
macro_rules! map_pair {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (AnyMatrix::Rational($x), AnyMatrix::Rational($y)) => AnyMatrix::from($body?),
            (AnyMatrix::Float($x), AnyMatrix::Float($y)) => AnyMatrix::from($body?),
            (AnyMatrix::Complex($x), AnyMatrix::Complex($y)) => AnyMatrix::from($body?),
            (AnyMatrix::Rounded($x), AnyMatrix::Rounded($y)) => AnyMatrix::from($body?),
            (AnyMatrix::RoundedComplex($x), AnyMatrix::RoundedComplex($y)) => AnyMatrix::from($body?),
            (a, b) => {
                return Err(Failure::input(format!("regime mismatch: {} and {}", a.regime(), b.regime())));
            }
        }
    };
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Multiply { alg, cutoff, a, b, output } => cmd_multiply(&alg, cutoff, &a, &b, output.as_deref(), out),
        Command::Validate { alg } => cmd_validate(&alg, out),
        Command::Bench { alg, sizes, p, norm, seed, instances, theta, slack, input_bits, output } => {
            let cfg = BenchConfig { alg, sizes, p, norm, seed, instances, theta, slack, input_bits };
            cmd_bench(&cfg, output.as_deref(), out)
        }
        Command::Stpp { action } => cmd_stpp(action, out, err),
        Command::Exponent { triples, rank, irrep_dims, stpp_family, alpha, beta } => {
            cmd_exponent(&triples, rank, &irrep_dims, stpp_family, alpha, beta, out, err)
        }
        Command::Invert { mult, a, output } => {
            let handle = multiplier(&mult.multiplier, mult.cutoff)?;
            let m = read_matrix(&a)?;
            let inv = map_any!(m, |x| linalg::invert_with(&x, &handle, mult.cutoff));
            emit(out, output.as_deref(), &inv.to_text())
        }
        Command::Lu { mult, a, output } => {
            let handle = multiplier(&mult.multiplier, mult.cutoff)?;
            let m = read_matrix(&a)?;
            let text = text_any!(m, |x| {
                let lup = linalg::lu_decompose_with(&x, &handle, mult.cutoff)?;
                format!("# L\n{}# U\n{}# P\n{}", lup.l.to_text(), lup.u.to_text(), lup.p().to_text())
            });
            emit(out, output.as_deref(), &text)
        }
        Command::Det { a } => {
            let m = read_matrix(&a)?;
            let text = text_any!(m, |x| format!("{}\n", linalg::determinant(&x)?.format()));
            emit(out, None, &text)
        }
        Command::Solve { a, b, output } => {
            let (a, b) = (read_matrix(&a)?, read_matrix(&b)?);
            let x = map_pair!(a, b, |x, y| linalg::solve(&x, &y));
            emit(out, output.as_deref(), &x.to_text())
        }
    }
}


fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> std::result::Result<AnyMatrix, Failure> {
    parse_matrix(&read_text(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::input(e.to_string())),
    }
}

fn load_algorithm(selector: &str) -> std::result::Result<Option<BilinearAlgorithm>, Failure> {
    if selector == "classical" {
        return Ok(None);
    }
    if selector == "strassen" {
        return Ok(Some(bilinear::strassen()));
    }
    if let Some(k) = selector.strip_prefix("classical:") {
        let k: usize = k.parse().ok().filter(|&k| k >= 2).ok_or_else(|| Failure::spec(format!("bad block count in {selector:?}")))?;
        return Ok(Some(bilinear::classical(k)));
    }
    if let Some(path) = selector.strip_prefix("spec:") {
        let text = read_text(Path::new(path))?;
        return parse_spec(&text).map(Some).map_err(|e| Failure::spec(format!("{path}: {e}")));
    }
    Err(Failure::spec(format!("unknown algorithm {selector:?}; expected classical, strassen or spec:<file>")))
}

fn schedule(alg: BilinearAlgorithm, cutoff: usize) -> std::result::Result<RecursionSchedule, Failure> {
    RecursionSchedule::stationary(alg, cutoff).map_err(|e| Failure::spec(e.to_string()))
}

fn multiplier(selector: &str, cutoff: usize) -> std::result::Result<MultiplierHandle, Failure> {
    if let Some(path) = selector.strip_prefix("stpp:") {
        let family = load_family(Path::new(path))?;
        let m = StppMultiplier::new(family, StppOptions::default())?;
        return Ok(MultiplierHandle::Stpp(Arc::new(m)));
    }
    Ok(match load_algorithm(selector)? {
        None => MultiplierHandle::Classical,
        Some(alg) => MultiplierHandle::Bilinear(schedule(alg, cutoff)?),
    })
}

fn cmd_multiply(alg: &str, cutoff: usize, a: &Path, b: &Path, output: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let engine = load_algorithm(alg)?.map(|alg| schedule(alg, cutoff)).transpose()?.map(Engine::new);
    let (a, b) = (read_matrix(a)?, read_matrix(b)?);
    let c = map_pair!(a, b, |x, y| match &engine {
        Some(e) => e.multiply(&x, &y),
        None => multiply_classical(&x, &y),
    });
    emit(out, output, &c.to_text())
}

fn cmd_validate(alg: &str, out: &mut dyn Write) -> CmdResult {
    let alg = load_algorithm(alg)?.unwrap_or_else(|| bilinear::classical(2));
    match validate(&alg).witness {
        None => emit(out, None, &format!("valid: k = {}, t = {}, exponent {:.9}\n", alg.k(), alg.t(), alg.exponent())),
        Some(w) => Err(Failure::math(format!("tensor identity fails: {w}"))),
    }
}

struct BenchConfig {
    alg: String,
    sizes: Vec<usize>,
    p: u32,
    norm: NormKind,
    seed: u64,
    instances: usize,
    theta: Option<u64>,
    slack: f64,
    input_bits: u32,
}

fn cmd_bench(cfg: &BenchConfig, output: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    if cfg.sizes.is_empty() {
        return Err(Failure::input("--sizes is empty"));
    }
    if !(cfg.slack >= 0.0) {
        return Err(Failure::input(format!("--slack must be non-negative, got {}", cfg.slack)));
    }
    let alg = load_algorithm(&cfg.alg)?;
    let ctx = RoundingContext::new(cfg.p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut csv = format!("{},multiplications,seed,instance\n", ErrorBoundReport::CSV_HEADER);
    let mut failures = 0;
    for &n in &cfg.sizes {
        let (spec, engine) = match &alg {
            None => {
                let spec = BoundSpec { algorithm: "classical".into(), mu: mu_classical(n), theta: None, slack: cfg.slack };
                (spec, None)
            }
            Some(alg) => {
                let mut bound = StationaryBound::theta0(alg);
                if let Some(t) = cfg.theta {
                    bound = bound.with_theta(t);
                }
                let mu = bound.mu(n)?;
                let name = if cfg.alg.contains(':') { "bilinear".to_string() } else { cfg.alg.clone() };
                let spec = BoundSpec { algorithm: name, mu, theta: Some(bound.theta), slack: cfg.slack };
                (spec, Some(Engine::new(schedule(alg.clone(), 1)?)))
            }
        };
        for instance in 0..cfg.instances {
            let a = lift(&random_dyadic(n, n, cfg.input_bits, &mut rng), ctx);
            let b = lift(&random_dyadic(n, n, cfg.input_bits, &mut rng), ctx);
            let mut count = (n * n * n) as u64;
            let report = measure_error(
                |x, y| match &engine {
                    Some(e) => {
                        e.reset();
                        let c = e.multiply(x, y);
                        count = e.multiplications();
                        c
                    }
                    None => multiply_classical(x, y),
                },
                &a,
                &b,
                cfg.norm,
                &spec,
            )?;
            if !report.pass {
                failures += 1;
            }
            let _ = writeln!(csv, "{},{count},{},{instance}", report.csv_row(), cfg.seed);
        }
    }
    emit(out, output, &csv)?;
    if failures > 0 {
        return Err(Failure::math(format!("{failures} run(s) exceeded the error bound")));
    }
    Ok(())
}

fn parse_triple(s: &str) -> std::result::Result<(u64, u64, u64), Failure> {
    let v: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::input(format!("malformed triple {s:?}; expected e,h,l")))?;
    match v[..] {
        [e, h, l] => Ok((e, h, l)),
        _ => Err(Failure::input(format!("malformed triple {s:?}; expected e,h,l"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_exponent(
    triples: &[String],
    rank: Option<f64>,
    irrep_dims: &[u64],
    stpp_family: bool,
    alpha: Option<f64>,
    beta: Option<f64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let mut text = String::new();
    if stpp_family || alpha.is_some() || beta.is_some() {
        let (Some(a), Some(b)) = (alpha, beta) else {
            return Err(Failure::input("--alpha and --beta are both required"));
        };
        let e = stpp_exponents(a, b)?;
        let _ = writeln!(text, "error exponent (alpha+2)/(2 beta) = {:.9}", e.error);
        let _ = writeln!(text, "runtime exponent (alpha-1)/beta = {:.9}", e.runtime);
        let _ = writeln!(text, "sum = {:.9}{}", e.sum, if e.exceeds_three() { " (> 3)" } else { "" });
    }
    if !triples.is_empty() {
        let triples = triples.iter().map(|t| parse_triple(t)).collect::<std::result::Result<Vec<_>, _>>()?;
        let rhs = match (rank, irrep_dims.is_empty()) {
            (Some(r), true) => ExponentRhs::Rank(r),
            (None, false) => ExponentRhs::IrrepDims(irrep_dims.to_vec()),
            _ => return Err(Failure::input("give exactly one of --rank and --irrep-dims")),
        };
        let bound = omega_bound(&ExponentProblem { triples, rhs })?;
        let _ = writeln!(text, "{:.9}", bound.omega);
        match bound.clamp {
            Some(Clamp::AtThree) => {
                let _ = writeln!(err, "note: the inequality holds at 3, so the bound is clamped to 3");
            }
            Some(Clamp::AtTwo) => {
                let _ = writeln!(err, "note: the inequality fails at 2, so the bound is clamped to 2");
            }
            None => {}
        }
    } else if text.is_empty() {
        return Err(Failure::input("give --triple with --rank or --irrep-dims, or --alpha and --beta"));
    }
    emit(out, None, &text)
}

fn load_family(path: &Path) -> std::result::Result<StppFamily, Failure> {
    let (family, _) = StppFamily::parse(&read_text(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(family)
}

fn parse_shape(shape: &str, n: usize) -> std::result::Result<Vec<(usize, usize, usize)>, Failure> {
    let targets = shape
        .split(';')
        .map(|t| {
            let (x, y, z) = parse_triple(t)?;
            Ok((x as usize, y as usize, z as usize))
        })
        .collect::<std::result::Result<Vec<_>, Failure>>()?;
    if targets.len() != n {
        return Err(Failure::input(format!("--shape lists {} triples but --N is {n}", targets.len())));
    }
    Ok(targets)
}

fn complex_operand(m: AnyMatrix) -> std::result::Result<(Matrix<Complex64>, bool), Failure> {
    match m {
        AnyMatrix::Float(m) => Ok((m.map((), |&x| Complex64::new(x, 0.0)), true)),
        AnyMatrix::Complex(m) => Ok((m, false)),
        other => Err(Failure::input(format!("group-algebra multiplication needs f64 or complex matrices, found {}", other.regime()))),
    }
}

fn cmd_stpp(action: StppAction, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match action {
        StppAction::Search { group, n, shape, budget, output } => {
            if n == 0 {
                return Err(Failure::input("--N must be at least 1"));
            }
            let g = AbelianGroup::new(group)?;
            let targets = match shape {
                Some(s) => parse_shape(&s, n)?,
                None => vec![(1, 1, 1); n],
            };
            let outcome = stpp_search(&g, &targets, budget);
            let _ = writeln!(err, "searched {} nodes", outcome.nodes);
            let Some(found) = outcome.collection else {
                return Err(Failure::input(if outcome.budget_exhausted {
                    format!("no collection found within a budget of {budget} nodes")
                } else {
                    format!("no collection with shape {targets:?} exists in {g}")
                }));
            };
            if let Some(w) = stpp_check(&found.group, &found.triples)? {
                return Err(Failure::math(format!("search result fails the checker: {w:?}")));
            }
            emit(out, output.as_deref(), &found.to_text(true))
        }
        StppAction::Check { family } => {
            let family = load_family(&family)?;
            family.verify()?;
            let mut text = String::new();
            for (n, c) in family.members() {
                let _ = writeln!(text, "N = {n}: {} triples in {}, k = {}: STPP: verified", c.len(), c.group, c.products().0);
            }
            emit(out, None, &text)
        }
        StppAction::Multiply { family, base, depth, a, b, output } => {
            let base = match base.as_str() {
                "classical" => BaseMultiplier::Classical,
                "strassen" => BaseMultiplier::Strassen,
                other => return Err(Failure::spec(format!("unknown base multiplier {other:?}"))),
            };
            let m = StppMultiplier::new(load_family(&family)?, StppOptions { base, depth })?;
            let (a, real_a) = complex_operand(read_matrix(&a)?)?;
            let (b, real_b) = complex_operand(read_matrix(&b)?)?;
            let p = m.plan(a.rows().max(1))?;
            let (c, timings) = m.multiply_timed(&a, &b)?;
            let _ = writeln!(
                err,
                "plan: n = {}, N = {}, k_N = {}, padded side {}{}",
                p.n,
                p.degree,
                p.k,
                p.padded,
                if p.base_case { " (base case)" } else { "" }
            );
            let _ = writeln!(err, "{timings}");
            let text = if real_a && real_b { c.map((), |z| z.re).to_text() } else { c.to_text() };
            emit(out, output.as_deref(), &text)
        }
        StppAction::Growth { family, degrees } => {
            let family = load_family(&family)?;
            let degrees = if degrees.is_empty() { family.members().map(|(n, _)| n).collect() } else { degrees };
            let report = measure_growth(&family, degrees)?;
            emit(out, None, &format!("{report}\n"))
        }
    }
}
