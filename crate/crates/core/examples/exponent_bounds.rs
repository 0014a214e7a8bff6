//! Exponent bounds: omega from a rank or from irreducible dimensions, and
//! the stability and runtime exponents of a group-algebra family.

use fastmm::stability::{omega_bound, stpp_exponents, ExponentProblem, ExponentRhs};

fn main() -> fastmm::Result<()> {
    let strassen = ExponentProblem { triples: vec![(2, 2, 2)], rhs: ExponentRhs::Rank(7.0) };
    println!("<2,2,2> in rank 7: omega <= {:.6}", omega_bound(&strassen)?.omega);

    let three = ExponentProblem { triples: vec![(3, 3, 3)], rhs: ExponentRhs::Rank(23.0) };
    println!("<3,3,3> in rank 23: omega <= {:.6}", omega_bound(&three)?.omega);

    let dims = ExponentProblem { triples: vec![(2, 2, 2)], rhs: ExponentRhs::IrrepDims(vec![1; 8]) };
    let bound = omega_bound(&dims)?;
    println!("<2,2,2> in an Abelian group of order 8: omega <= {} ({:?})", bound.omega, bound.clamp);

    for (alpha, beta) in [(2.0, 1.0), (2.2, 1.5), (2.38, 2.0)] {
        let e = stpp_exponents(alpha, beta)?;
        println!("alpha={alpha} beta={beta}: {e:?}");
    }
    Ok(())
}
