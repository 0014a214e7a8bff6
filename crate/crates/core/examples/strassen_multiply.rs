//! Multiplies two rational matrices with recursive Strassen and checks the
//! result against the classical triple loop.

use fastmm::bilinear::{strassen, Engine, RecursionSchedule};
use fastmm::{multiply_classical, Matrix, Rational};

fn main() -> fastmm::Result<()> {
    let n = 12;
    let a = Matrix::from_fn(n, n, (), |i, j| Rational::new((i * 3 + j) as i64 % 7 - 3, 1 + (i + j) as i64 % 4));
    let b = Matrix::from_fn(n, n, (), |i, j| Rational::new((i + 2 * j) as i64 % 5 - 2, 1 + j as i64 % 3));

    // 12 is padded to 16 and recursion stops at 2x2 blocks
    let engine = Engine::new(RecursionSchedule::stationary(strassen(), 2)?);
    let c = engine.multiply(&a, &b)?;
    assert_eq!(c, multiply_classical(&a, &b)?);

    println!("C[0][0..4] = {:?}", (0..4).map(|j| c.get(0, j).to_string()).collect::<Vec<_>>());
    println!("scalar multiplications: {} (classical on 16x16: {})", engine.multiplications(), 16u64.pow(3));
    Ok(())
}
