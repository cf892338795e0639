use std::collections::{BTreeMap, BTreeSet};

use super::schema::Schema;
use crate::rdf::{Graph, Iri, Term, Triple};

/// Types implied by the schema's intersection axioms that `g` does not
/// already assert.
///
/// Two directions are applied until nothing new appears:
/// a node whose types cover every operand (under the subclass closure) gains
/// the defined class unless one of its types already entails it, and a node
/// typed with the defined class gains each operand it does not already carry
/// as an explicit type. Returned triples are always `node rdf:type class`.
pub fn apply_intersection_axioms(g: &Graph, schema: &Schema) -> BTreeSet<Triple> {
    let rdf_type = Iri::rdf_type();
    let closure = schema.class_closure();
    let mut types: BTreeMap<Term, BTreeSet<Iri>> = BTreeMap::new();
    for t in g.match_pattern(None, Some(&rdf_type), None) {
        if let Term::Iri(c) = t.object() {
            types.entry(t.subject().clone()).or_default().insert(c.clone());
        }
    }

    let mut derived = BTreeSet::new();
    loop {
        let mut round = BTreeSet::new();
        for (node, known) in &types {
            for axiom in schema.intersection_axioms() {
                let defined = axiom.defined_class();
                if known.contains(defined) {
                    for op in axiom.operands() {
                        if !known.contains(op) {
                            round.insert((node.clone(), op.clone()));
                        }
                    }
                    continue;
                }
                let entailed = known.iter().any(|c| closure.contains(c, defined));
                let satisfied = axiom
                    .operands()
                    .iter()
                    .all(|op| known.iter().any(|c| closure.contains(c, op)));
                if satisfied && !entailed {
                    round.insert((node.clone(), defined.clone()));
                }
            }
        }
        if round.is_empty() {
            return derived;
        }
        for (node, class) in round {
            types.entry(node.clone()).or_default().insert(class.clone());
            derived.insert(Triple::new(node, rdf_type.clone(), class).expect("typed nodes are never literals"));
        }
    }
}
