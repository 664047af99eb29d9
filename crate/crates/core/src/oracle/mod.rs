//! Brute-force checks at small sizes: realizability of branching data,
//! exhaustive enumeration of covers, and minimal-degree search.

mod enumerate;
mod realize;
mod shapes;

pub use enumerate::{enumerate_covers, find_cover, min_gonality_search, Budget, SearchOutcome};
pub use realize::{hurwitz_realizability, MAX_REALIZABILITY_DEGREE};
