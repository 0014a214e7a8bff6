//! Scalar regimes.
//!
//! Four arithmetic regimes share one trait: exact rationals, binary64 reals,
//! binary64 complex numbers, and `p`-bit simulated floats (real or complex).
//! Regimes never mix; a value carries the context it was created in, and a
//! matrix records that context so constants such as zero can be produced.

mod rational;
mod rounded;

use std::fmt;

use num_complex::Complex64;

pub use rational::{ParseRationalError, Rational};
pub use rounded::{Rounded, RoundedComplex, RoundingContext};

/// Regime tag, as written in the matrix text format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Rational,
    Float,
    Complex,
    Rounded(RoundingContext),
    RoundedComplex(RoundingContext),
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Rational => f.write_str("rational"),
            Regime::Float => f.write_str("f64"),
            Regime::Complex => f.write_str("complex"),
            Regime::Rounded(c) => write!(f, "rounded:{}", c.bits()),
            Regime::RoundedComplex(c) => write!(f, "rounded-complex:{}", c.bits()),
        }
    }
}

pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Per-regime parameters needed to build constants (`()` for most).
    type Ctx: Copy + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn regime(ctx: Self::Ctx) -> Regime;
    fn ctx(&self) -> Self::Ctx;

    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self {
        Self::from_rational(&Rational::one(), ctx)
    }
    /// Embeds an exact coefficient, rounding it if the regime requires.
    fn from_rational(q: &Rational, ctx: Self::Ctx) -> Self;
    /// `None` when the regime cannot hold `c` (e.g. a non-real value in a real regime).
    fn from_complex(c: Complex64, ctx: Self::Ctx) -> Option<Self>;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` on division by zero.
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn conj(&self) -> Self;

    fn is_zero(&self) -> bool;
    fn modulus(&self) -> f64;
    fn to_complex(&self) -> Complex64;
    /// Exact real and imaginary parts.
    fn exact_parts(&self) -> (Rational, Rational);

    /// Unit roundoff of one operation; zero for exact arithmetic.
    fn unit_roundoff(ctx: Self::Ctx) -> f64;
}

fn exact(x: f64) -> Rational {
    Rational::from_f64(x).expect("non-finite value has no exact rational form")
}

impl Scalar for Rational {
    type Ctx = ();

    fn regime(_: ()) -> Regime {
        Regime::Rational
    }
    fn ctx(&self) {}
    fn zero(_: ()) -> Self {
        Rational::zero()
    }
    fn one(_: ()) -> Self {
        Rational::one()
    }
    fn from_rational(q: &Rational, _: ()) -> Self {
        q.clone()
    }
    fn from_complex(c: Complex64, _: ()) -> Option<Self> {
        if c.im == 0.0 {
            Rational::from_f64(c.re)
        } else {
            None
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn modulus(&self) -> f64 {
        self.to_f64().abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
    fn exact_parts(&self) -> (Rational, Rational) {
        (self.clone(), Rational::zero())
    }
    fn unit_roundoff(_: ()) -> f64 {
        0.0
    }
}

impl Scalar for f64 {
    type Ctx = ();

    fn regime(_: ()) -> Regime {
        Regime::Float
    }
    fn ctx(&self) {}
    fn zero(_: ()) -> Self {
        0.0
    }
    fn one(_: ()) -> Self {
        1.0
    }
    fn from_rational(q: &Rational, _: ()) -> Self {
        q.to_f64()
    }
    fn from_complex(c: Complex64, _: ()) -> Option<Self> {
        (c.im == 0.0).then_some(c.re)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0.0).then(|| self / rhs)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn exact_parts(&self) -> (Rational, Rational) {
        (exact(*self), Rational::zero())
    }
    fn unit_roundoff(_: ()) -> f64 {
        f64::EPSILON / 2.0
    }
}

impl Scalar for Complex64 {
    type Ctx = ();

    fn regime(_: ()) -> Regime {
        Regime::Complex
    }
    fn ctx(&self) {}
    fn zero(_: ()) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one(_: ()) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(q: &Rational, _: ()) -> Self {
        Complex64::new(q.to_f64(), 0.0)
    }
    fn from_complex(c: Complex64, _: ()) -> Option<Self> {
        Some(c)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        (rhs.re != 0.0 || rhs.im != 0.0).then(|| self / rhs)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn exact_parts(&self) -> (Rational, Rational) {
        (exact(self.re), exact(self.im))
    }
    fn unit_roundoff(_: ()) -> f64 {
        f64::EPSILON / 2.0
    }
}

impl Scalar for Rounded {
    type Ctx = RoundingContext;

    fn regime(ctx: RoundingContext) -> Regime {
        Regime::Rounded(ctx)
    }
    fn ctx(&self) -> RoundingContext {
        self.context()
    }
    fn zero(ctx: RoundingContext) -> Self {
        Rounded::new(0.0, ctx)
    }
    fn from_rational(q: &Rational, ctx: RoundingContext) -> Self {
        Rounded::new(q.to_f64(), ctx)
    }
    fn from_complex(c: Complex64, ctx: RoundingContext) -> Option<Self> {
        (c.im == 0.0).then(|| Rounded::new(c.re, ctx))
    }
    fn add(&self, rhs: &Self) -> Self {
        Rounded::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rounded::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rounded::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Rounded::neg(self)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        Rounded::div(self, rhs)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn is_zero(&self) -> bool {
        self.value() == 0.0
    }
    fn modulus(&self) -> f64 {
        self.value().abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.value(), 0.0)
    }
    fn exact_parts(&self) -> (Rational, Rational) {
        (exact(self.value()), Rational::zero())
    }
    fn unit_roundoff(ctx: RoundingContext) -> f64 {
        ctx.epsilon()
    }
}

impl Scalar for RoundedComplex {
    type Ctx = RoundingContext;

    fn regime(ctx: RoundingContext) -> Regime {
        Regime::RoundedComplex(ctx)
    }
    fn ctx(&self) -> RoundingContext {
        self.context()
    }
    fn zero(ctx: RoundingContext) -> Self {
        RoundedComplex::new(0.0, 0.0, ctx)
    }
    fn from_rational(q: &Rational, ctx: RoundingContext) -> Self {
        RoundedComplex::new(q.to_f64(), 0.0, ctx)
    }
    fn from_complex(c: Complex64, ctx: RoundingContext) -> Option<Self> {
        Some(RoundedComplex::new(c.re, c.im, ctx))
    }
    fn add(&self, rhs: &Self) -> Self {
        RoundedComplex::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RoundedComplex::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RoundedComplex::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RoundedComplex::neg(self)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        RoundedComplex::div(self, rhs)
    }
    fn conj(&self) -> Self {
        RoundedComplex::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
    fn exact_parts(&self) -> (Rational, Rational) {
        (exact(self.re), exact(self.im))
    }
    fn unit_roundoff(ctx: RoundingContext) -> f64 {
        ctx.epsilon()
    }
}

/// Runs `computation` with per-operation rounding at `ctx`.
///
/// The closure receives the context and lifts its inputs with
/// [`Rounded::new`]; every `+`, `-`, `*` it performs through [`Scalar`] is
/// then rounded once.
pub fn with_rounding<R>(ctx: RoundingContext, computation: impl FnOnce(RoundingContext) -> R) -> R {
    computation(ctx)
}
