//! Knowledge-graph toolkit for modular, BFO-aligned research-data ontologies.
//!
//! The crate is organised bottom-up:
//!
//! - [`rdf`]: terms, prefix maps and the indexed triple store
//! - [`turtle`]: Turtle / N-Triples reading and writing
//! - [`ontology`]: schema extraction, subclass closure, module composition
//!   and intersection-axiom typing
//! - [`rules`]: the shortcut-rule language and its forward-chaining engine
//! - [`validate`]: role/process structural checks
//! - [`query`]: SELECT queries over basic graph patterns
//! - [`cq`]: competency-question suites

pub mod cq;
pub mod ontology;
pub mod query;
pub mod rdf;
pub mod rules;
pub mod turtle;
pub mod validate;
pub mod vocab;

pub use cq::{load_suite, run_suite, CqCase, CqReport};
pub use ontology::{
    apply_intersection_axioms, extract_schema, resolve_modules, subclass_closure, Closure, IntersectionAxiom,
    ModuleManifest, ModuleRegistry, Schema,
};
pub use query::{evaluate, parse_query, Entailment, Query, SolutionSet};
pub use rdf::{isomorphic, BlankNode, Graph, Iri, Literal, PrefixMap, Term, Triple};
pub use rules::{materialize, materialize_naive, parse_rules, DerivedTriple, Rule};
pub use turtle::{parse, serialize, Dialect, ParseError};
pub use validate::{validate, ValidationReport, Violation};
