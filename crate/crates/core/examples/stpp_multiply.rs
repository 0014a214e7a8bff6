//! Multiplies real matrices through the group-algebra construction using
//! the shipped family, with per-step timings.

use fastmm::stpp::{StppFamily, StppMultiplier, StppOptions};
use fastmm::{multiply_classical, Matrix};
use num_complex::Complex64;

fn main() -> fastmm::Result<()> {
    let (family, _) = StppFamily::parse(include_str!("../fixtures/family.stpp"))?;
    family.verify()?;
    let mult = StppMultiplier::new(family, StppOptions::default())?;

    let n = 10;
    let a = Matrix::from_fn(n, n, (), |i, j| ((i * 7 + j * 3) % 11) as f64 - 5.0);
    let b = Matrix::from_fn(n, n, (), |i, j| ((i + j * 5) % 9) as f64 - 4.0);
    let c = mult.multiply_real(&a, &b)?;
    let exact = multiply_classical(&a, &b)?;
    let err = c.data().iter().zip(exact.data()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    println!("{:?}", mult.plan(n)?);
    println!("max error vs classical: {err:e}");

    let lift = |m: &Matrix<f64>| m.map((), |&x| Complex64::new(x, 0.0));
    let (_, timings) = mult.multiply_timed(&lift(&a), &lift(&b))?;
    println!("{timings}");
    Ok(())
}
