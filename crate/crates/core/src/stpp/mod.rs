//! Matrix multiplication through the group algebra of `H wr Sym_N` for an
//! Abelian STP family.
//!
//! Rows of `A` are indexed by `X`, its columns and the rows of `B` by `Y`,
//! and the columns of `B` by `Z`, where `X = (X_1 x ... x X_N) x Sym_N` and so
//! on. The seven steps are: embed `a = sum A_xy e_{x^-1 y}` (and `b`), Fourier
//! transform, assemble one `N! x N!` pair per character orbit, multiply,
//! disassemble, inverse transform, and read `C_xz = c_{x^-1 z}`.
//!
//! The orbit matrices use the convention
//!
//! ```text
//! A_{x,m} = a^(m.chi0, x m^-1)    B_{m,y} = b^(y.chi0, m y^-1)
//! c^(tau.chi0, rho) = (A B)_{rho tau, tau}
//! ```
//!
//! which follows from `c^(chi, rho) = sum_{sigma tau = rho} a^(tau.chi, sigma) b^(chi, tau)`.

mod family;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;

pub use family::{measure_growth, GrowthPoint, GrowthReport, StppFamily};

use crate::bilinear::{multiply_stationary, strassen};
use crate::error::{Error, Result};
use crate::group::{
    factorial, fourier_wreath, inverse_fourier_wreath, orbit_representatives, orbit_transversal, tpp_check,
    FiniteGroup, SymPerm, WreathElement, WreathGroup,
};
use crate::matrix::{multiply_classical, Matrix};

/// Minimal `N` with `k_N N! >= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StppPlan {
    pub n: usize,
    pub degree: usize,
    pub k: usize,
    pub padded: usize,
    /// `N! >= n`: the product is handed to the base multiplier.
    pub base_case: bool,
}

pub fn plan(family: &StppFamily, n: usize) -> Result<StppPlan> {
    if n == 0 {
        return Err(Error::InvalidArgument("plan needs n >= 1".into()));
    }
    family
        .members()
        .map(|(degree, c)| (degree, c.products().0))
        .find(|&(degree, k)| k.saturating_mul(factorial(degree)) >= n)
        .map(|(degree, k)| StppPlan { n, degree, k, padded: k * factorial(degree), base_case: factorial(degree) >= n })
        .ok_or(Error::FamilyExhausted(n))
}

/// `X`, `Y`, `Z` in `H wr Sym_N`, tuple part outer and permutation inner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMaps {
    pub group: WreathGroup,
    pub x: Vec<WreathElement>,
    pub y: Vec<WreathElement>,
    pub z: Vec<WreathElement>,
}

pub fn build_xyz(family: &StppFamily, degree: usize) -> Result<IndexMaps> {
    let coll = family.member(degree).ok_or(Error::FamilyExhausted(degree))?;
    let base = coll.group.clone();
    let group = WreathGroup::new(base.clone(), degree)?;
    let perms = SymPerm::all(degree);
    let expand = |sets: Vec<&Vec<Vec<usize>>>| -> Vec<WreathElement> {
        let idx: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().map(|h| base.index_of(h)).collect()).collect();
        let mut tuples = vec![Vec::new()];
        for choices in &idx {
            tuples = tuples
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    choices.iter().map(move |&c| {
                        let mut t = t.clone();
                        t.push(c);
                        t
                    })
                })
                .collect();
        }
        tuples
            .into_iter()
            .flat_map(|h| perms.iter().map(move |s| WreathElement { h: h.clone(), sigma: s.clone() }))
            .collect()
    };
    let x = expand(coll.triples.iter().map(|t| &t.x).collect());
    let y = expand(coll.triples.iter().map(|t| &t.y).collect());
    let z = expand(coll.triples.iter().map(|t| &t.z).collect());
    if let Some(w) = tpp_check(&group, &x, &y, &z)? {
        return Err(Error::TppViolation(format!(
            "X, Y, Z for N = {degree}: q_x = {:?}, q_y = {:?}, q_z = {:?}",
            w.qx, w.qy, w.qz
        )));
    }
    Ok(IndexMaps { group, x, y, z })
}

/// Index tables for the seven steps at one `N`.
#[derive(Debug)]
pub struct StppEmbedding {
    maps: IndexMaps,
    side: usize,
    perm_count: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    out: Vec<usize>,
    reps: Vec<Vec<usize>>,
    assemble: Vec<Vec<usize>>,
    disassemble: Vec<(usize, usize)>,
}

impl StppEmbedding {
    pub fn new(maps: IndexMaps) -> Result<Self> {
        let g = &maps.group;
        let side = maps.x.len();
        let degree = g.degree();
        let f = factorial(degree);
        let quotient_table = |rows: &[WreathElement], cols: &[WreathElement]| -> Vec<usize> {
            rows.iter()
                .flat_map(|r| {
                    let inv = g.inverse(r);
                    cols.iter().map(move |c| g.index_of(&g.op(&inv, c)))
                })
                .collect()
        };
        let left = quotient_table(&maps.x, &maps.y);
        let right = quotient_table(&maps.y, &maps.z);
        let out = quotient_table(&maps.x, &maps.z);
        for (name, table) in [("x^-1 y", &left), ("y^-1 z", &right), ("x^-1 z", &out)] {
            let mut seen = vec![false; g.order()];
            if let Some(&dup) = table.iter().find(|&&i| std::mem::replace(&mut seen[i], true)) {
                return Err(Error::TppViolation(format!("{name} is not injective: {:?} repeats", g.element(dup))));
            }
        }

        let perms = SymPerm::all(degree);
        let fi = |chi: &[usize], sigma: &SymPerm| g.h_index(chi) * f + sigma.lex_rank();
        let reps = orbit_representatives(g.base(), degree);
        let mut rep_id = HashMap::new();
        let mut assemble = Vec::with_capacity(reps.len());
        for (r, chi0) in reps.iter().enumerate() {
            rep_id.insert(chi0.clone(), r);
            let moved: Vec<Vec<usize>> = perms.iter().map(|m| m.act(chi0)).collect();
            // A_{p,q} = a^(q.chi0, p q^-1) and B_{p,q} = b^(q.chi0, p q^-1)
            let table = perms
                .iter()
                .flat_map(|p| perms.iter().zip(&moved).map(move |(q, chi)| (p.compose(&q.inverse()), chi)))
                .map(|(sigma, chi)| fi(chi, &sigma))
                .collect();
            assemble.push(table);
        }
        let mut disassemble = vec![(0, 0); g.order()];
        for chi_i in 0..g.base_power_order() {
            let chi = g.h_from_index(chi_i);
            let (rep, tau) = orbit_transversal(&chi);
            let r = rep_id[&rep];
            let t = tau.lex_rank();
            for rho in &perms {
                let row = rho.compose(&tau).lex_rank();
                disassemble[fi(&chi, rho)] = (r, row * f + t);
            }
        }
        Ok(Self {
            maps,
            side,
            perm_count: f,
            left,
            right,
            out,
            reps,
            assemble,
            disassemble,
        })
    }

    pub fn maps(&self) -> &IndexMaps {
        &self.maps
    }

    /// `|X| = k_N N!`
    pub fn side(&self) -> usize {
        self.side
    }

    /// Orbit representatives, one per assembled matrix.
    pub fn representatives(&self) -> &[Vec<usize>] {
        &self.reps
    }

    fn embed(&self, m: &Matrix<Complex64>, table: &[usize]) -> Result<Vec<Complex64>> {
        if m.shape() != (self.side, self.side) {
            return Err(Error::InvalidArgument(format!(
                "embedding expects {0}x{0}, found {1}x{2}",
                self.side,
                m.rows(),
                m.cols()
            )));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); self.maps.group.order()];
        for (&i, &val) in table.iter().zip(m.data()) {
            v[i] = val;
        }
        Ok(v)
    }

    /// Step 1 for `A`: `a = sum A_xy e_{x^-1 y}`.
    pub fn embed_left(&self, a: &Matrix<Complex64>) -> Result<Vec<Complex64>> {
        self.embed(a, &self.left)
    }

    /// Step 1 for `B`: `b = sum B_yz e_{y^-1 z}`.
    pub fn embed_right(&self, b: &Matrix<Complex64>) -> Result<Vec<Complex64>> {
        self.embed(b, &self.right)
    }

    fn assemble_with(&self, v: &[Complex64]) -> Vec<Matrix<Complex64>> {
        let f = self.perm_count;
        self.assemble
            .iter()
            .map(|t| Matrix::new(f, f, t.iter().map(|&i| v[i]).collect(), ()).expect("f x f table"))
            .collect()
    }

    /// Step 3 for `a^`: one `N! x N!` matrix per orbit representative.
    pub fn assemble_left(&self, a_hat: &[Complex64]) -> Vec<Matrix<Complex64>> {
        self.assemble_with(a_hat)
    }

    pub fn assemble_right(&self, b_hat: &[Complex64]) -> Vec<Matrix<Complex64>> {
        self.assemble_with(b_hat)
    }

    /// Step 5: `c^(tau.chi0, rho) = C^{chi0}_{rho tau, tau}`.
    pub fn disassemble(&self, products: &[Matrix<Complex64>]) -> Vec<Complex64> {
        self.disassemble.iter().map(|&(r, pos)| products[r].data()[pos]).collect()
    }

    /// Step 7: `C_xz = c_{x^-1 z}`.
    pub fn extract(&self, c: &[Complex64]) -> Matrix<Complex64> {
        Matrix::new(self.side, self.side, self.out.iter().map(|&i| c[i]).collect(), ()).expect("side x side table")
    }
}

/// Multiplier used below the group-algebra levels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BaseMultiplier {
    #[default]
    Classical,
    Strassen,
}

impl BaseMultiplier {
    fn multiply(self, a: &Matrix<Complex64>, b: &Matrix<Complex64>) -> Result<Matrix<Complex64>> {
        match self {
            BaseMultiplier::Classical => multiply_classical(a, b),
            BaseMultiplier::Strassen => multiply_stationary(&strassen(), a, b, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StppOptions {
    pub base: BaseMultiplier,
    /// Group-algebra levels before the base multiplier takes over.
    pub depth: usize,
}

impl Default for StppOptions {
    fn default() -> Self {
        Self { base: BaseMultiplier::Classical, depth: 1 }
    }
}

pub const STEP_LABELS: [&str; 7] = [
    "embedding",
    "fourier transform",
    "assemble matrices",
    "multiply matrices",
    "disassemble matrices",
    "inverse fourier transform",
    "output",
];

/// Steps 2, 4 and 6 do arithmetic; the others only move values.
pub const STEP_ARITHMETIC: [bool; 7] = [false, true, false, true, false, true, false];

/// Wall time per step of the outermost level.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepTimings {
    pub steps: [Duration; 7],
}

impl StepTimings {
    pub fn arithmetic(&self) -> Duration {
        self.split(true)
    }

    pub fn data_movement(&self) -> Duration {
        self.split(false)
    }

    fn split(&self, arithmetic: bool) -> Duration {
        self.steps.iter().zip(STEP_ARITHMETIC).filter(|(_, a)| *a == arithmetic).map(|(d, _)| *d).sum()
    }
}

impl fmt::Display for StepTimings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (label, d)) in STEP_LABELS.iter().zip(&self.steps).enumerate() {
            let kind = if STEP_ARITHMETIC[i] { "arithmetic" } else { "no arithmetic" };
            writeln!(f, "step {} {label} ({kind}): {:.6} s", i + 1, d.as_secs_f64())?;
        }
        writeln!(f, "arithmetic total: {:.6} s", self.arithmetic().as_secs_f64())?;
        write!(f, "no-arithmetic total: {:.6} s", self.data_movement().as_secs_f64())
    }
}

/// A verified family with cached embeddings.
#[derive(Debug)]
pub struct StppMultiplier {
    family: StppFamily,
    options: StppOptions,
    cache: Mutex<HashMap<usize, Arc<StppEmbedding>>>,
}

impl StppMultiplier {
    pub fn new(family: StppFamily, options: StppOptions) -> Result<Self> {
        family.verify()?;
        Ok(Self { family, options, cache: Mutex::new(HashMap::new()) })
    }

    pub fn family(&self) -> &StppFamily {
        &self.family
    }

    pub fn options(&self) -> StppOptions {
        self.options
    }

    pub fn plan(&self, n: usize) -> Result<StppPlan> {
        plan(&self.family, n)
    }

    pub fn embedding(&self, degree: usize) -> Result<Arc<StppEmbedding>> {
        if let Some(e) = self.cache.lock().expect("cache lock").get(&degree) {
            return Ok(Arc::clone(e));
        }
        let e = Arc::new(StppEmbedding::new(build_xyz(&self.family, degree)?)?);
        self.cache.lock().expect("cache lock").insert(degree, Arc::clone(&e));
        Ok(e)
    }

    pub fn multiply(&self, a: &Matrix<Complex64>, b: &Matrix<Complex64>) -> Result<Matrix<Complex64>> {
        self.multiply_timed(a, b).map(|(c, _)| c)
    }

    pub fn multiply_timed(
        &self,
        a: &Matrix<Complex64>,
        b: &Matrix<Complex64>,
    ) -> Result<(Matrix<Complex64>, StepTimings)> {
        if !a.is_square() || a.shape() != b.shape() {
            return Err(Error::DimensionMismatch {
                left_rows: a.rows(),
                left_cols: a.cols(),
                right_rows: b.rows(),
                right_cols: b.cols(),
            });
        }
        let mut timings = StepTimings::default();
        let c = self.recurse(a, b, self.options.depth, Some(&mut timings))?;
        Ok((c, timings))
    }

    /// Lifts binary64 inputs to complex and returns the real part.
    pub fn multiply_real(&self, a: &Matrix<f64>, b: &Matrix<f64>) -> Result<Matrix<f64>> {
        let lift = |m: &Matrix<f64>| m.map((), |&x| Complex64::new(x, 0.0));
        Ok(self.multiply(&lift(a), &lift(b))?.map((), |z| z.re))
    }

    fn recurse(
        &self,
        a: &Matrix<Complex64>,
        b: &Matrix<Complex64>,
        depth: usize,
        mut timings: Option<&mut StepTimings>,
    ) -> Result<Matrix<Complex64>> {
        let n = a.rows();
        let p = self.plan(n)?;
        if depth == 0 || p.base_case {
            let start = Instant::now();
            let c = self.options.base.multiply(a, b);
            if let Some(t) = timings {
                t.steps[3] += start.elapsed();
            }
            return c;
        }
        let e = self.embedding(p.degree)?;
        let mut clock = Instant::now();
        let mut tick = |step: usize, t: &mut Option<&mut StepTimings>| {
            if let Some(t) = t.as_deref_mut() {
                t.steps[step] += clock.elapsed();
            }
            clock = Instant::now();
        };

        let va = e.embed_left(&a.padded(p.padded, p.padded))?;
        let vb = e.embed_right(&b.padded(p.padded, p.padded))?;
        tick(0, &mut timings);
        let a_hat = fourier_wreath(&e.maps.group, &va)?;
        let b_hat = fourier_wreath(&e.maps.group, &vb)?;
        tick(1, &mut timings);
        let la = e.assemble_left(&a_hat);
        let lb = e.assemble_right(&b_hat);
        tick(2, &mut timings);
        let products = la
            .par_iter()
            .zip(lb.par_iter())
            .map(|(x, y)| self.recurse(x, y, depth - 1, None))
            .collect::<Result<Vec<_>>>()?;
        tick(3, &mut timings);
        let c_hat = e.disassemble(&products);
        tick(4, &mut timings);
        let c = inverse_fourier_wreath(&e.maps.group, &c_hat)?;
        tick(5, &mut timings);
        let out = e.extract(&c).block(0, 0, n, n);
        tick(6, &mut timings);
        Ok(out)
    }
}

/// One group-algebra level over a classical base.
pub fn multiply_stpp(family: &StppFamily, a: &Matrix<Complex64>, b: &Matrix<Complex64>) -> Result<Matrix<Complex64>> {
    StppMultiplier::new(family.clone(), StppOptions::default())?.multiply(a, b)
}
