//! Fast matrix multiplication: recursive bilinear schemes, the Abelian
//! simultaneous-triple-product construction over wreath products, reductions
//! of inversion and LU to multiplication, and a harness that measures
//! roundoff against theoretical error bounds.

pub mod bilinear;
pub mod cli;
pub mod error;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod stability;
pub mod stpp;

pub use error::{Error, Result};
pub use matrix::{multiply_classical, Matrix, NormKind};
pub use scalar::{Rational, Regime, Rounded, RoundedComplex, RoundingContext, Scalar};
