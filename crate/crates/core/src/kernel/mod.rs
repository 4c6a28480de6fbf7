//! Rank oracles and the core predicates on them.

mod axioms;
mod io;
mod iso;
mod matroid;
mod set;

pub use axioms::{check_axioms, find_violation, Violation};
pub use io::{matroid_to_text, parse_matroid, parse_matroid_block, parse_matroid_unchecked};
pub(crate) use io::skip_blank;
pub use iso::{element_signatures, embed, invariant_key, is_isomorphic, is_isomorphic_colored, InvariantKey};
pub use matroid::{
    combinations, LinearRep, Matroid, SimplificationMap, EXPLICIT_LIMIT, MAX_GROUND, MAX_ROWS, TABLE_LIMIT,
};
pub use set::{Set, SetIter, Subsets};
