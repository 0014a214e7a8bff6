//! Searches the members of a small Abelian STP family and prints it in the
//! family file format, certified by the independent checker.

use fastmm::group::{stpp_search, AbelianGroup};
use fastmm::stpp::{measure_growth, StppFamily};

fn main() -> fastmm::Result<()> {
    let members = [
        (8, vec![(2, 2, 2)]),
        (96, vec![(1, 6, 1), (6, 1, 6)]),
        (32, vec![(2, 2, 1), (1, 2, 2), (2, 1, 2)]),
    ];
    let mut found = Vec::new();
    for (order, shape) in members {
        let outcome = stpp_search(&AbelianGroup::cyclic(order), &shape, 1_000_000);
        eprintln!("Z/{order}, N = {}: {} nodes", shape.len(), outcome.nodes);
        found.push(outcome.collection.expect("search succeeds within budget"));
    }
    let family = StppFamily::new(found)?;
    family.verify()?;
    print!("{}", family.to_text(true));
    eprintln!("{}", measure_growth(&family, 1..=3)?);
    Ok(())
}
