//! Finite Abelian groups, symmetric groups and their wreath products, the
//! Fourier transform on `H wr Sym_N`, and triple product property checks.

mod abelian;
mod collection;
mod fourier;
mod perm;
mod search;
mod tpp;
mod wreath;

pub use abelian::{char_eval, root_of_unity, AbelianGroup, Character};
pub use collection::{parse_collections, ParsedCollection, TripleCollection};
pub use fourier::{fourier_index, fourier_wreath, inverse_fourier_wreath};
pub use perm::{factorial, SymPerm};
pub use search::{orbit_count, orbit_representatives, orbit_transversal, stpp_search, SearchOutcome};
pub use tpp::{quotient_set, stpp_check, tpp_check, StppWitness, Triple, TppWitness};
pub use wreath::{wreath_inv, wreath_mul, FiniteGroup, WreathElement, WreathGroup};
