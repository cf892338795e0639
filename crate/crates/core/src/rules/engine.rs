use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::syntax::{Arg, PropertyAtom, Rule, RuleAtom};
use crate::ontology::{Closure, Schema};
use crate::rdf::{Graph, Iri, Term, Triple};

pub type Bindings = BTreeMap<String, Term>;

/// A triple produced by a rule, with the variable assignment that fired it
/// and the round (starting at 1) in which it was first derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DerivedTriple {
    pub triple: Triple,
    pub rule_id: String,
    pub bindings: Bindings,
    pub round: usize,
}

/// Derived triples as a graph, without the asserted input.
pub fn inferred_graph(derived: &[DerivedTriple]) -> Graph {
    derived.iter().map(|d| d.triple.clone()).collect()
}

fn instantiate(head: &PropertyAtom, b: &Bindings) -> Option<Triple> {
    let s = head.subject.resolve(b)?.clone();
    let o = head.object.resolve(b)?.clone();
    Triple::new(s, head.property.clone(), o).ok()
}

fn unify(arg: &Arg, value: &Term, b: &mut Bindings) -> bool {
    match arg {
        Arg::Term(t) => t == value,
        Arg::Var(v) => match b.get(v) {
            Some(bound) => bound == value,
            None => {
                b.insert(v.clone(), value.clone());
                true
            }
        },
    }
}

fn match_atom(source: &Graph, atom: &RuleAtom, b: &Bindings, closure: &Closure, rdf_type: &Iri) -> Vec<Bindings> {
    let mut out = Vec::new();
    match atom {
        RuleAtom::Property(p) => {
            let s = p.subject.resolve(b);
            let o = p.object.resolve(b);
            for t in source.match_pattern(s, Some(&p.property), o) {
                let mut next = b.clone();
                if unify(&p.subject, t.subject(), &mut next) && unify(&p.object, t.object(), &mut next) {
                    out.push(next);
                }
            }
        }
        RuleAtom::Class(c) => match c.arg.resolve(b) {
            Some(node) => {
                let typed = source
                    .objects(node, rdf_type)
                    .any(|t| matches!(t, Term::Iri(k) if closure.contains(k, &c.class)));
                if typed {
                    out.push(b.clone());
                }
            }
            None => {
                let mut nodes = BTreeSet::new();
                for sub in closure.descendants(&c.class) {
                    nodes.extend(source.subjects(rdf_type, &Term::Iri(sub.clone())).cloned());
                }
                for node in nodes {
                    let mut next = b.clone();
                    if unify(&c.arg, &node, &mut next) {
                        out.push(next);
                    }
                }
            }
        },
    }
    out
}

fn unbound_count(atom: &RuleAtom, b: &Bindings) -> usize {
    atom.args()
        .into_iter()
        .filter(|a| matches!(a, Arg::Var(v) if !b.contains_key(v)))
        .count()
}

struct Join<'a> {
    rule: &'a Rule,
    total: &'a Graph,
    delta: &'a Graph,
    delta_atom: usize,
    closure: &'a Closure,
    rdf_type: &'a Iri,
}

impl Join<'_> {
    fn run(&self) -> Vec<Bindings> {
        let mut out = Vec::new();
        let body = self.rule.body();
        let mut remaining: Vec<usize> = (0..body.len()).collect();
        remaining.retain(|&i| i != self.delta_atom);
        for b in match_atom(self.delta, &body[self.delta_atom], &Bindings::new(), self.closure, self.rdf_type) {
            self.extend(&remaining, b, &mut out);
        }
        out
    }

    fn extend(&self, remaining: &[usize], b: Bindings, out: &mut Vec<Bindings>) {
        let body = self.rule.body();
        let Some(pos) = (0..remaining.len()).min_by_key(|&k| (unbound_count(&body[remaining[k]], &b), remaining[k]))
        else {
            out.push(b);
            return;
        };
        let atom = &body[remaining[pos]];
        let mut rest = remaining.to_vec();
        rest.remove(pos);
        for next in match_atom(self.total, atom, &b, self.closure, self.rdf_type) {
            self.extend(&rest, next, out);
        }
    }
}

/// Semi-naive forward chaining to a fixpoint.
///
/// Each round joins every rule once per body position, with that position
/// restricted to the previous round's new triples and the others ranging over
/// everything known so far. Class atoms match `rdf:type` triples under the
/// schema's subclass closure. The result holds each new triple once, ordered
/// by round and then by triple.
pub fn materialize(g: &Graph, schema: &Schema, rules: &[Rule]) -> Vec<DerivedTriple> {
    let closure = schema.class_closure();
    let rdf_type = Iri::rdf_type();
    let mut total = g.clone();
    let mut delta = g.clone();
    let mut derived = Vec::new();
    let mut round = 0;
    while !delta.is_empty() {
        round += 1;
        let mut candidates: Vec<(Triple, usize, Bindings)> = Vec::new();
        for (rule_index, rule) in rules.iter().enumerate() {
            for delta_atom in 0..rule.body().len() {
                let join = Join {
                    rule,
                    total: &total,
                    delta: &delta,
                    delta_atom,
                    closure,
                    rdf_type: &rdf_type,
                };
                for b in join.run() {
                    if let Some(t) = instantiate(rule.head(), &b) {
                        if !total.contains(&t) {
                            candidates.push((t, rule_index, b));
                        }
                    }
                }
            }
        }
        candidates.sort();
        candidates.dedup_by(|later, earlier| later.0 == earlier.0);
        delta = Graph::new();
        for (triple, rule_index, bindings) in candidates {
            delta.insert(triple.clone());
            derived.push(DerivedTriple {
                triple,
                rule_id: rules[rule_index].id().to_string(),
                bindings,
                round,
            });
        }
        total.extend(delta.iter());
    }
    derived
}

/// Reference engine: every round re-evaluates every rule against all known
/// triples with a plain left-to-right nested-loop join over a full scan.
pub fn materialize_naive(g: &Graph, schema: &Schema, rules: &[Rule]) -> Vec<DerivedTriple> {
    let rdf_type = Iri::rdf_type();
    let mut total: Vec<Triple> = g.iter().collect();
    let mut known: BTreeSet<Triple> = total.iter().cloned().collect();
    let mut derived = Vec::new();
    let mut round = 0;
    loop {
        round += 1;
        let mut fresh: BTreeMap<Triple, (String, Bindings)> = BTreeMap::new();
        for rule in rules {
            let mut partial = vec![Bindings::new()];
            for atom in rule.body() {
                let mut next = Vec::new();
                for b in &partial {
                    for t in &total {
                        let mut b2 = b.clone();
                        let ok = match atom {
                            RuleAtom::Property(p) => {
                                t.predicate() == &p.property
                                    && unify(&p.subject, t.subject(), &mut b2)
                                    && unify(&p.object, t.object(), &mut b2)
                            }
                            RuleAtom::Class(c) => {
                                t.predicate() == &rdf_type
                                    && matches!(t.object(), Term::Iri(k) if schema.is_subclass(k, &c.class))
                                    && unify(&c.arg, t.subject(), &mut b2)
                            }
                        };
                        if ok && !next.contains(&b2) {
                            next.push(b2);
                        }
                    }
                }
                partial = next;
            }
            for b in partial {
                if let Some(t) = instantiate(rule.head(), &b) {
                    if !known.contains(&t) {
                        fresh.entry(t).or_insert_with(|| (rule.id().to_string(), b));
                    }
                }
            }
        }
        if fresh.is_empty() {
            return derived;
        }
        for (triple, (rule_id, bindings)) in fresh {
            known.insert(triple.clone());
            total.push(triple.clone());
            derived.push(DerivedTriple {
                triple,
                rule_id,
                bindings,
                round,
            });
        }
    }
}
