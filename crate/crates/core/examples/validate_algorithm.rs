//! Validates a bilinear algorithm given in the text spec format, then breaks
//! one coefficient and prints the witness the checker reports.

use fastmm::bilinear::{emit_spec, parse_spec, strassen, validate, Factor};
use fastmm::Rational;

fn main() -> fastmm::Result<()> {
    let text = emit_spec(&strassen());
    println!("{text}");
    let alg = parse_spec(&text)?;
    println!("valid: {}, exponent {:.4}", validate(&alg).is_valid(), alg.exponent());

    let broken = alg.with_entry(Factor::W, 0, 0, Rational::from_integer(2));
    match validate(&broken).witness {
        Some(w) => println!("mutated W[0][0]: {w}"),
        None => println!("mutated W[0][0]: still valid"),
    }
    Ok(())
}
