use std::fmt::Write;

use super::Dialect;
use crate::rdf::{escape_string_into, is_plain_local, Graph, Iri, PrefixMap, Term};
use crate::vocab;

/// Writes `graph` deterministically: triples in canonical term order, prefix
/// directives sorted by label. Blank node labels are written verbatim.
pub fn serialize(graph: &Graph, prefixes: &PrefixMap, dialect: Dialect) -> String {
    match dialect {
        Dialect::NTriples => {
            let mut out = String::new();
            for t in graph.iter() {
                writeln!(out, "{t}").expect("write to String");
            }
            out
        }
        Dialect::Turtle => turtle(graph, prefixes),
    }
}

fn turtle(graph: &Graph, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    for (label, ns) in prefixes.iter() {
        writeln!(out, "@prefix {label}: <{ns}> .").expect("write to String");
    }
    if !prefixes.is_empty() && !graph.is_empty() {
        out.push('\n');
    }
    let mut current_subject: Option<Term> = None;
    let mut current_predicate: Option<Iri> = None;
    for t in graph.iter() {
        if current_subject.as_ref() == Some(t.subject()) {
            if current_predicate.as_ref() == Some(t.predicate()) {
                out.push_str(" ,\n        ");
            } else {
                out.push_str(" ;\n    ");
                out.push_str(&predicate(t.predicate(), prefixes));
                out.push(' ');
            }
        } else {
            if current_subject.is_some() {
                out.push_str(" .\n");
            }
            out.push_str(&term(t.subject(), prefixes));
            out.push(' ');
            out.push_str(&predicate(t.predicate(), prefixes));
            out.push(' ');
            current_subject = Some(t.subject().clone());
        }
        current_predicate = Some(t.predicate().clone());
        out.push_str(&term(t.object(), prefixes));
    }
    if current_subject.is_some() {
        out.push_str(" .\n");
    }
    out
}

fn predicate(p: &Iri, prefixes: &PrefixMap) -> String {
    if p.as_str() == vocab::rdf::TYPE {
        "a".to_string()
    } else {
        iri(p, prefixes)
    }
}

pub(crate) fn iri(value: &Iri, prefixes: &PrefixMap) -> String {
    match prefixes.compact(value) {
        Some((label, local)) if is_plain_local(&local) => format!("{label}:{local}"),
        _ => value.to_string(),
    }
}

pub(crate) fn term(value: &Term, prefixes: &PrefixMap) -> String {
    match value {
        Term::Iri(i) => iri(i, prefixes),
        Term::BlankNode(b) => b.to_string(),
        Term::Literal(lit) => {
            let mut out = String::from("\"");
            escape_string_into(lit.lexical(), &mut out);
            out.push('"');
            if let Some(tag) = lit.language() {
                out.push('@');
                out.push_str(tag);
            } else if lit.datatype().as_str() != vocab::xsd::STRING {
                out.push_str("^^");
                out.push_str(&iri(lit.datatype(), prefixes));
            }
            out
        }
    }
}
