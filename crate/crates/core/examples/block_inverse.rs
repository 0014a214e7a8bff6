//! Inverts a matrix by recursive block elimination on top of Strassen, and
//! reads the product AB out of the inverse of a block upper triangular matrix.

use fastmm::bilinear::strassen;
use fastmm::linalg::{invert_with, verify_3block_identity, MultiplierHandle};
use fastmm::matrix::norm;
use fastmm::{multiply_classical, Matrix, NormKind, Rational};

fn main() -> fastmm::Result<()> {
    let mult = MultiplierHandle::bilinear(strassen(), 4)?;

    let n = 32;
    let a = Matrix::from_fn(n, n, (), |i, j| {
        let off = ((i * 17 + j * 5) % 13) as f64 / 13.0 - 0.5;
        if i == j { off + n as f64 } else { off }
    });
    let inv = invert_with(&a, &mult, 8)?;
    let residual = multiply_classical(&a, &inv)?.sub(&Matrix::identity(n, ()))?;
    println!("|A A^-1 - I|_F = {:e}", norm(&residual, NormKind::Frobenius));

    let x = Matrix::from_fn(3, 3, (), |i, j| Rational::new(i as i64 - j as i64, 2));
    let y = Matrix::from_fn(3, 3, (), |i, j| Rational::from_integer((i * j) as i64 + 1));
    let check = verify_3block_identity(&x, &y, &mult)?;
    assert_eq!(check.product, multiply_classical(&x, &y)?);
    println!("three-block identity holds: {}", check.inverse_matches);
    Ok(())
}
