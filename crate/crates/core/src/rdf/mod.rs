//! Term model, prefix handling and the indexed in-memory triple store.

mod graph;
mod iso;
mod prefix;
mod term;

pub use graph::Graph;
pub use iso::{blank_bijection, isomorphic};
pub use prefix::{PrefixError, PrefixMap};
pub use term::{BlankNode, Iri, Literal, Term, TermError, Triple};

pub(crate) use prefix::is_plain_local;
pub(crate) use term::escape_string_into;
