//! Structural checks for role/process modelling over instance data.
//!
//! | code | severity |
//! |---|---|
//! | `ROLE_BEARER_NOT_IC` | error |
//! | `ROLE_BEARER_UNTYPED` | warning |
//! | `ROLE_NOT_REALIZED` | error |
//! | `ROLE_WITHOUT_BEARER` | warning |
//! | `CONTINUANT_OCCURRENT_OVERLAP` | error |
//! | `DOMAIN_VIOLATION` | error |
//! | `RANGE_VIOLATION` | error |
//! | `PROCESS_AS_RESOURCE_NOTICE` | notice |

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::ontology::Schema;
use crate::rdf::{Graph, Iri, Term};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Code {
    RoleBearerNotIc,
    RoleBearerUntyped,
    RoleNotRealized,
    RoleWithoutBearer,
    ContinuantOccurrentOverlap,
    DomainViolation,
    RangeViolation,
    ProcessAsResourceNotice,
}

impl Code {
    pub const ALL: [Code; 8] = [
        Code::RoleBearerNotIc,
        Code::RoleBearerUntyped,
        Code::RoleNotRealized,
        Code::RoleWithoutBearer,
        Code::ContinuantOccurrentOverlap,
        Code::DomainViolation,
        Code::RangeViolation,
        Code::ProcessAsResourceNotice,
    ];

    pub fn severity(self) -> Severity {
        match self {
            Code::RoleBearerNotIc
            | Code::RoleNotRealized
            | Code::ContinuantOccurrentOverlap
            | Code::DomainViolation
            | Code::RangeViolation => Severity::Error,
            Code::RoleBearerUntyped | Code::RoleWithoutBearer => Severity::Warning,
            Code::ProcessAsResourceNotice => Severity::Notice,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Code::RoleBearerNotIc => "ROLE_BEARER_NOT_IC",
            Code::RoleBearerUntyped => "ROLE_BEARER_UNTYPED",
            Code::RoleNotRealized => "ROLE_NOT_REALIZED",
            Code::RoleWithoutBearer => "ROLE_WITHOUT_BEARER",
            Code::ContinuantOccurrentOverlap => "CONTINUANT_OCCURRENT_OVERLAP",
            Code::DomainViolation => "DOMAIN_VIOLATION",
            Code::RangeViolation => "RANGE_VIOLATION",
            Code::ProcessAsResourceNotice => "PROCESS_AS_RESOURCE_NOTICE",
        }
    }

    pub fn parse(text: &str) -> Option<Code> {
        Code::ALL.into_iter().find(|c| c.as_str() == text)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Notice,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Notice => "notice",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Violation {
    pub code: Code,
    pub severity: Severity,
    pub focus: Term,
    pub detail: String,
}

impl Violation {
    fn new(code: Code, focus: &Term, detail: String) -> Self {
        Violation {
            code,
            severity: code.severity(),
            focus: focus.clone(),
            detail,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SeverityCounts {
    pub error: usize,
    pub warning: usize,
    pub notice: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub graph_size: usize,
    pub counts: SeverityCounts,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(graph_size: usize, violations: BTreeSet<Violation>) -> Self {
        let violations: Vec<Violation> = violations.into_iter().collect();
        let mut counts = SeverityCounts::default();
        for v in &violations {
            match v.severity {
                Severity::Error => counts.error += 1,
                Severity::Warning => counts.warning += 1,
                Severity::Notice => counts.notice += 1,
            }
        }
        ValidationReport {
            graph_size,
            counts,
            violations,
        }
    }

    pub fn has_errors(&self) -> bool {
        self.counts.error > 0
    }

    pub fn codes(&self) -> BTreeSet<Code> {
        self.violations.iter().map(|v| v.code).collect()
    }
}

/// Runs every check over every node of `g`. Violations are ordered by code,
/// then focus term, then detail.
pub fn validate(g: &Graph, schema: &Schema) -> ValidationReport {
    let checker = Checker::new(g, schema);
    let mut found = BTreeSet::new();
    for node in g.terms() {
        checker.check(&node, &mut found);
    }
    ValidationReport::from_violations(g.len(), found)
}

/// The checks of [`validate`] restricted to violations whose focus is `focus`.
pub fn validate_focus(g: &Graph, schema: &Schema, focus: &Term) -> Vec<Violation> {
    let mut found = BTreeSet::new();
    Checker::new(g, schema).check(focus, &mut found);
    found.into_iter().filter(|v| &v.focus == focus).collect()
}

struct Checker<'a> {
    g: &'a Graph,
    schema: &'a Schema,
    rdf_type: Iri,
    has_role: Iri,
    realized_in: Iri,
    resource: Iri,
}

impl<'a> Checker<'a> {
    fn new(g: &'a Graph, schema: &'a Schema) -> Self {
        Checker {
            g,
            schema,
            rdf_type: Iri::rdf_type(),
            has_role: Iri::from_static(vocab::bfo::HAS_ROLE),
            realized_in: Iri::from_static(vocab::bfo::REALIZED_IN),
            resource: Iri::from_static(vocab::nfdicore::RESOURCE),
        }
    }

    fn types(&self, node: &Term) -> Vec<&'a Iri> {
        self.g
            .objects(node, &self.rdf_type)
            .filter_map(Term::as_iri)
            .collect()
    }

    fn typed_in(&self, node: &Term, set: &BTreeSet<Iri>) -> bool {
        self.types(node).into_iter().any(|t| set.contains(t))
    }

    fn typed_under(&self, node: &Term, class: &Iri) -> bool {
        self.types(node).into_iter().any(|t| self.schema.is_subclass(t, class))
    }

    fn is_role(&self, node: &Term) -> bool {
        self.typed_in(node, self.schema.role_classes())
    }

    fn check(&self, x: &Term, out: &mut BTreeSet<Violation>) {
        if x.is_literal() {
            return;
        }
        self.role_bearer(x, out);
        if self.is_role(x) {
            self.role_realization(x, out);
            if self.g.subjects(&self.has_role, x).next().is_none() {
                out.insert(Violation::new(
                    Code::RoleWithoutBearer,
                    x,
                    "role individual is not borne by anything".to_string(),
                ));
            }
        }
        self.partition(x, out);
        self.domain_range(x, out);
    }

    fn role_bearer(&self, x: &Term, out: &mut BTreeSet<Violation>) {
        for role in self.g.objects(x, &self.has_role) {
            if !self.is_role(role) {
                continue;
            }
            let types = self.types(x);
            if types.is_empty() {
                out.insert(Violation::new(
                    Code::RoleBearerUntyped,
                    x,
                    format!("bearer of role {role} has no asserted type"),
                ));
            } else if !types
                .iter()
                .any(|t| self.schema.independent_continuant_classes().contains(*t))
            {
                out.insert(Violation::new(
                    Code::RoleBearerNotIc,
                    x,
                    format!("bears role {role} but none of its types is an independent continuant"),
                ));
            }
        }
    }

    fn role_realization(&self, role: &Term, out: &mut BTreeSet<Violation>) {
        for p in self.g.objects(role, &self.realized_in) {
            if !self.typed_in(p, self.schema.occurrent_classes()) {
                out.insert(Violation::new(
                    Code::RoleNotRealized,
                    role,
                    format!("realized in {p}, which is not typed as an occurrent"),
                ));
            }
        }
    }

    fn partition(&self, x: &Term, out: &mut BTreeSet<Violation>) {
        let process = self.typed_in(x, self.schema.process_classes());
        let resource = self.typed_under(x, &self.resource);
        if process && resource {
            out.insert(Violation::new(
                Code::ProcessAsResourceNotice,
                x,
                "typed both as a process and as a resource".to_string(),
            ));
            return;
        }
        if self.typed_in(x, self.schema.continuant_classes()) && self.typed_in(x, self.schema.occurrent_classes()) {
            out.insert(Violation::new(
                Code::ContinuantOccurrentOverlap,
                x,
                "typed both as a continuant and as an occurrent".to_string(),
            ));
        }
    }

    fn domain_range(&self, x: &Term, out: &mut BTreeSet<Violation>) {
        for t in self.g.match_pattern(Some(x), None, None) {
            let closure = self.schema.property_closure();
            for p in closure.ancestors(t.predicate()) {
                for domain in self.schema.domains(p) {
                    if let Some(bad) = self.fits(t.subject(), domain) {
                        out.insert(Violation::new(
                            Code::DomainViolation,
                            x,
                            format!("subject of {} but {bad}; expected {domain}", t.predicate()),
                        ));
                    }
                }
                if t.object().is_literal() {
                    self.range(&t, p, x, out);
                }
            }
        }
        for t in self.g.match_pattern(None, None, Some(x)) {
            for p in self.schema.property_closure().ancestors(t.predicate()) {
                self.range(&t, p, x, out);
            }
        }
    }

    fn range(&self, t: &crate::rdf::Triple, p: &Iri, focus: &Term, out: &mut BTreeSet<Violation>) {
        for range in self.schema.ranges(p) {
            if let Some(bad) = self.fits(t.object(), range) {
                out.insert(Violation::new(
                    Code::RangeViolation,
                    focus,
                    format!("object {} of {} {bad}; expected {range}", t.object(), t.predicate()),
                ));
            }
        }
    }

    /// Why `node` does not fit `expected`, if it demonstrably does not.
    /// Untyped resources are given the benefit of the doubt.
    fn fits(&self, node: &Term, expected: &Iri) -> Option<String> {
        let datatype_expected =
            expected.as_str().starts_with(vocab::XSD) || expected.as_str() == vocab::rdfs::LITERAL;
        match node {
            Term::Literal(lit) => {
                if !datatype_expected {
                    Some("is a literal".to_string())
                } else if expected.as_str() == vocab::rdfs::LITERAL || lit.datatype() == expected {
                    None
                } else {
                    Some(format!("has datatype {}", lit.datatype()))
                }
            }
            _ if datatype_expected => Some("is not a literal".to_string()),
            _ => {
                let types = self.types(node);
                if types.is_empty() || types.iter().any(|t| self.schema.is_subclass(t, expected)) {
                    None
                } else {
                    let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                    Some(format!("is typed {}", names.join(", ")))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::extract_schema;
    use crate::turtle::{parse, Dialect};

    const SCHEMA: &str = r#"
@prefix bfo: <http://purl.obolibrary.org/obo/> .
@prefix nfdicore: <https://nfdi.fiz-karlsruhe.de/ontology/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix : <http://ex.org/> .
bfo:IndependentContinuant rdfs:subClassOf bfo:Continuant .
bfo:Role rdfs:subClassOf bfo:Continuant .
bfo:Process rdfs:subClassOf bfo:Occurrent .
nfdicore:Resource rdfs:subClassOf bfo:Continuant .
:Agent rdfs:subClassOf bfo:IndependentContinuant .
:R rdfs:subClassOf bfo:Role .
:p rdfs:domain :Agent ; rdfs:range :Agent .
:sub rdfs:subPropertyOf :p .
"#;

    fn run(data: &str) -> ValidationReport {
        let base = Iri::new("http://ex.org/").unwrap();
        let (sg, _) = parse(SCHEMA, &base, Dialect::Turtle).unwrap();
        let schema = extract_schema(&sg).unwrap();
        let text = format!(
            "@prefix bfo: <http://purl.obolibrary.org/obo/> .\n@prefix nfdicore: <https://nfdi.fiz-karlsruhe.de/ontology/> .\n@prefix : <http://ex.org/> .\n{data}"
        );
        let (g, _) = parse(&text, &base, Dialect::Turtle).unwrap();
        let report = validate(&g, &schema);
        for v in &report.violations {
            assert!(validate_focus(&g, &schema, &v.focus).contains(v), "{v:?} not reproducible");
        }
        report
    }

    fn codes(data: &str) -> Vec<Code> {
        run(data).violations.iter().map(|v| v.code).collect()
    }

    #[test]
    fn empty_graph() {
        let r = run("");
        assert!(r.violations.is_empty());
        assert_eq!(r.graph_size, 0);
    }

    #[test]
    fn clean_role_pattern() {
        assert!(codes(":a a :Agent ; bfo:RO_0000087 :r . :r a :R ; bfo:BFO_0000054 :e . :e a bfo:Process .").is_empty());
    }

    #[test]
    fn bearer_is_process() {
        assert_eq!(
            codes(":a a bfo:Process ; bfo:RO_0000087 :r . :r a :R ; bfo:BFO_0000054 :e . :e a bfo:Process ."),
            vec![Code::RoleBearerNotIc]
        );
    }

    #[test]
    fn untyped_bearer_is_a_warning() {
        let r = run(":a bfo:RO_0000087 :r . :r a :R .");
        assert_eq!(r.codes(), BTreeSet::from([Code::RoleBearerUntyped]));
        assert_eq!(r.counts.warning, 1);
    }

    #[test]
    fn adding_ic_type_clears_c1() {
        let before = ":a a bfo:Process ; bfo:RO_0000087 :r . :r a :R .";
        assert!(codes(before).contains(&Code::RoleBearerNotIc));
        let after = format!("{before}\n:a a :Agent .");
        assert!(!codes(&after).contains(&Code::RoleBearerNotIc));
    }

    #[test]
    fn role_checks() {
        assert_eq!(codes(":r a :R ."), vec![Code::RoleWithoutBearer]);
        assert_eq!(
            codes(":a a :Agent ; bfo:RO_0000087 :r . :r a :R ; bfo:BFO_0000054 :x . :x a :Agent ."),
            vec![Code::RoleNotRealized]
        );
    }

    #[test]
    fn overlap_and_notice() {
        assert_eq!(codes(":x a :Agent , bfo:Process ."), vec![Code::ContinuantOccurrentOverlap]);
        let r = run(":x a nfdicore:Resource , bfo:Process .");
        assert_eq!(r.codes(), BTreeSet::from([Code::ProcessAsResourceNotice]));
        assert_eq!(r.counts.notice, 1);
        assert!(!r.has_errors());
    }

    #[test]
    fn domain_and_range() {
        assert_eq!(codes(":x a bfo:Process . :y a :Agent . :x :p :y ."), vec![Code::DomainViolation]);
        assert_eq!(codes(":x a :Agent . :y a bfo:Process . :x :sub :y ."), vec![Code::RangeViolation]);
        assert_eq!(codes(":x a :Agent . :x :p \"lit\" ."), vec![Code::RangeViolation]);
        assert!(codes(":x :p :y .").is_empty());
    }

    #[test]
    fn report_is_sorted() {
        let r = run(":z a :R . :a a :R . :x a :Agent , bfo:Process .");
        let sorted = {
            let mut v = r.violations.clone();
            v.sort();
            v
        };
        assert_eq!(r.violations, sorted);
        assert_eq!(r.violations.len(), 3);
    }
}
