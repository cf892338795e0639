use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde_json::{json, Value};

use crate::rdf::{PrefixMap, Term};
use crate::turtle::writer_term;

/// Distinct solution rows in canonical order. Every row binds every header
/// variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolutionSet {
    header: Vec<String>,
    rows: Vec<Vec<Term>>,
}

impl SolutionSet {
    /// Deduplicates and sorts `rows`. Panics if a row's width differs from
    /// the header's.
    pub fn new(header: Vec<String>, rows: impl IntoIterator<Item = Vec<Term>>) -> Self {
        let set: BTreeSet<Vec<Term>> = rows
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), header.len(), "row width must match the header"))
            .collect();
        SolutionSet {
            header,
            rows: set.into_iter().collect(),
        }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Term>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows as variable → term maps.
    pub fn maps(&self) -> BTreeSet<BTreeMap<String, Term>> {
        self.rows
            .iter()
            .map(|row| self.header.iter().cloned().zip(row.iter().cloned()).collect())
            .collect()
    }

    /// Rows as maps with variables renamed through `correspondence`
    /// (`from → to`); variables without an entry keep their name.
    pub fn renamed_maps(&self, correspondence: &BTreeMap<String, String>) -> BTreeSet<BTreeMap<String, Term>> {
        self.rows
            .iter()
            .map(|row| {
                self.header
                    .iter()
                    .map(|v| correspondence.get(v).unwrap_or(v).clone())
                    .zip(row.iter().cloned())
                    .collect()
            })
            .collect()
    }

    /// Tab-separated table with a `?var` header line; IRIs are compacted with
    /// `prefixes` where possible.
    pub fn to_tsv(&self, prefixes: &PrefixMap) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.header.iter().map(|v| format!("?{v}")).collect();
        writeln!(out, "{}", header.join("\t")).expect("write to String");
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|t| writer_term(t, prefixes)).collect();
            writeln!(out, "{}", cells.join("\t")).expect("write to String");
        }
        out
    }

    /// SPARQL 1.1 JSON results layout.
    pub fn to_json(&self) -> Value {
        let bindings: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (var, term) in self.header.iter().zip(row) {
                    obj.insert(var.clone(), term_json(term));
                }
                Value::Object(obj)
            })
            .collect();
        json!({ "head": { "vars": self.header }, "results": { "bindings": bindings } })
    }
}

fn term_json(term: &Term) -> Value {
    match term {
        Term::Iri(i) => json!({ "type": "uri", "value": i.as_str() }),
        Term::BlankNode(b) => json!({ "type": "bnode", "value": b.label() }),
        Term::Literal(l) => match l.language() {
            Some(tag) => json!({ "type": "literal", "value": l.lexical(), "xml:lang": tag }),
            None => json!({ "type": "literal", "value": l.lexical(), "datatype": l.datatype().as_str() }),
        },
    }
}
