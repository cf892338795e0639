//! SELECT queries over a single basic graph pattern, with optional RDFS
//! subclass/subproperty entailment.

mod eval;
mod parser;
mod solution;

pub use eval::{evaluate, Entailment};
pub use parser::{parse_query, parse_query_with, PatternTerm, Query, QueryError, TriplePattern};
pub use solution::SolutionSet;
