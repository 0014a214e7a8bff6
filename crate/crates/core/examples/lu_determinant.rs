//! Exact LUP decomposition of a wide rational matrix, then a determinant and
//! a linear solve.

use fastmm::linalg::{determinant, lu_decompose, solve, MultiplierHandle};
use fastmm::{Matrix, Rational};

fn show(m: &Matrix<Rational>) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        println!("  {}", row.join(" "));
    }
}

fn main() -> fastmm::Result<()> {
    let r = |x: i64| Rational::from_integer(x);
    let a = Matrix::from_rows(vec![
        vec![r(0), r(2), r(1), r(4)],
        vec![r(3), r(1), r(0), r(2)],
        vec![r(1), r(1), r(1), r(1)],
    ])?;
    let lup = lu_decompose(&a)?;
    println!("L =");
    show(&lup.l);
    println!("U =");
    show(&lup.u);
    println!("columns = {:?}", lup.columns);
    assert_eq!(lup.reconstruct(&MultiplierHandle::Classical)?, a);

    let s = Matrix::from_rows(vec![vec![r(2), r(1), r(1)], vec![r(1), r(3), r(2)], vec![r(1), r(0), r(0)]])?;
    println!("det = {}", determinant(&s)?);
    let rhs = Matrix::from_rows(vec![vec![r(4)], vec![r(5)], vec![r(6)]])?;
    println!("x =");
    show(&solve(&s, &rhs)?);
    Ok(())
}
