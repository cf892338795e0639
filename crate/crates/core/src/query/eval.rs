use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::parser::{PatternTerm, Query, TriplePattern};
use super::solution::SolutionSet;
use crate::ontology::Schema;
use crate::rdf::{Graph, Iri, Term, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Entailment {
    /// Plain pattern matching over the asserted triples.
    #[default]
    None,
    /// Patterns also match triples implied by `rdfs:subPropertyOf` and by
    /// `rdfs:subClassOf` applied to `rdf:type`.
    Rdfs,
}

impl FromStr for Entailment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Entailment::None),
            "rdfs" => Ok(Entailment::Rdfs),
            other => Err(format!("unknown entailment `{other}` (expected none or rdfs)")),
        }
    }
}

impl fmt::Display for Entailment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Entailment::None => "none",
            Entailment::Rdfs => "rdfs",
        })
    }
}

type Row = BTreeMap<String, Term>;

/// Evaluates the query's basic graph pattern. Patterns are joined
/// most-selective-first; the result does not depend on their order.
pub fn evaluate(q: &Query, g: &Graph, schema: &Schema, entailment: Entailment) -> SolutionSet {
    let ev = Evaluator {
        g,
        schema,
        entailment,
        rdf_type: Iri::rdf_type(),
    };
    let mut rows = Vec::new();
    let remaining: Vec<&TriplePattern> = q.patterns().iter().collect();
    ev.join(&remaining, Row::new(), &mut rows);
    let header = q.select_vars().to_vec();
    let projected: Vec<Vec<Term>> = rows
        .into_iter()
        .map(|row| {
            header
                .iter()
                .map(|v| row.get(v).cloned().expect("every pattern variable is bound in a solution"))
                .collect()
        })
        .collect();
    SolutionSet::new(header, projected)
}

struct Evaluator<'a> {
    g: &'a Graph,
    schema: &'a Schema,
    entailment: Entailment,
    rdf_type: Iri,
}

fn resolve<'a>(pt: &'a PatternTerm, row: &'a Row) -> Option<&'a Term> {
    match pt {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Var(v) => row.get(v),
    }
}

fn bind(pt: &PatternTerm, value: &Term, row: &mut Row) -> bool {
    match pt {
        PatternTerm::Term(t) => t == value,
        PatternTerm::Var(v) => match row.get(v) {
            Some(bound) => bound == value,
            None => {
                row.insert(v.clone(), value.clone());
                true
            }
        },
    }
}

fn selectivity(p: &TriplePattern, row: &Row) -> usize {
    p.positions().into_iter().filter(|pt| resolve(pt, row).is_none()).count()
}

impl Evaluator<'_> {
    fn join(&self, remaining: &[&TriplePattern], row: Row, out: &mut Vec<Row>) {
        let Some(pos) = (0..remaining.len()).min_by_key(|&i| (selectivity(remaining[i], &row), i)) else {
            out.push(row);
            return;
        };
        let pattern = remaining[pos];
        let mut rest = remaining.to_vec();
        rest.remove(pos);
        let s = resolve(&pattern.subject, &row);
        let o = resolve(&pattern.object, &row);
        let p = match resolve(&pattern.predicate, &row) {
            None => None,
            Some(Term::Iri(p)) => Some(p),
            Some(_) => return,
        };
        if s.is_some_and(Term::is_literal) {
            return;
        }
        for t in self.candidates(s, p, o) {
            let mut next = row.clone();
            if bind(&pattern.subject, t.subject(), &mut next)
                && bind(&pattern.predicate, &Term::Iri(t.predicate().clone()), &mut next)
                && bind(&pattern.object, t.object(), &mut next)
            {
                self.join(&rest, next, out);
            }
        }
    }

    /// Triples of the (possibly entailed) graph matching the partially bound
    /// pattern.
    fn candidates(&self, s: Option<&Term>, p: Option<&Iri>, o: Option<&Term>) -> BTreeSet<Triple> {
        if self.entailment == Entailment::None {
            return self.g.match_pattern(s, p, o).into_iter().collect();
        }
        let props = self.schema.property_closure();
        let classes = self.schema.class_closure();
        let mut out = BTreeSet::new();
        let mut emit = |subject: &Term, predicate: &Iri, object: &Term| {
            out.insert(Triple::new(subject.clone(), predicate.clone(), object.clone()).expect("subjects come from the graph"));
        };

        // Triples whose predicate is a subproperty of the one asked for.
        match p {
            Some(p) => {
                for sub in props.descendants(p) {
                    for t in self.g.match_pattern(s, Some(sub), o) {
                        emit(t.subject(), p, t.object());
                    }
                }
            }
            None => {
                for t in self.g.match_pattern(s, None, o) {
                    for sup in props.ancestors(t.predicate()) {
                        emit(t.subject(), sup, t.object());
                    }
                }
            }
        }

        // Type triples lifted along the class hierarchy.
        if p.is_none_or(|p| p == &self.rdf_type) {
            let typing: Vec<&Iri> = props.descendants(&self.rdf_type).collect();
            match o {
                Some(Term::Iri(class)) => {
                    for sub_class in classes.descendants(class) {
                        let object = Term::Iri(sub_class.clone());
                        for tp in &typing {
                            for t in self.g.match_pattern(s, Some(tp), Some(&object)) {
                                emit(t.subject(), &self.rdf_type, o.expect("matched Some"));
                            }
                        }
                    }
                }
                Some(_) => {}
                None => {
                    for tp in &typing {
                        for t in self.g.match_pattern(s, Some(tp), None) {
                            if let Term::Iri(c) = t.object() {
                                for sup in classes.ancestors(c) {
                                    emit(t.subject(), &self.rdf_type, &Term::Iri(sup.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
