//! Shortcut rules: a safe Horn-clause subset with unary class atoms and
//! binary property atoms, evaluated by forward chaining.

mod engine;
mod syntax;

pub use engine::{inferred_graph, materialize, materialize_naive, Bindings, DerivedTriple};
pub use syntax::{
    check_rule_safety, parse_rules, Arg, ClassAtom, PropertyAtom, Rule, RuleAtom, RuleError, SafetyViolation,
};

/// The rule file shipped with the toolkit (`publisher`, `contactPoint`).
pub const BUNDLED_RULES: &str = include_str!("../../../../rules/shortcuts.rules");
