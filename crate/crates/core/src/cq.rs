//! Competency-question suites: load a JSON case list, run it against an
//! asserted graph and its materialization, and report per-case outcomes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ontology::Schema;
use crate::query::{evaluate, parse_query_with, Entailment, SolutionSet};
use crate::rdf::{Graph, PrefixMap, Term};
use crate::rules::{materialize, Rule};
use crate::turtle::parse_term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Services,
    Standards,
    Processes,
    Events,
    ContactPoints,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Query,
    Equivalence,
    Unanswerable,
}

/// Which graph a query runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphSelector {
    Asserted,
    Materialized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_rows: Option<usize>,
    /// Expected solutions; terms are written as in Turtle (`ex:a`, `<...>`,
    /// `"text"@en`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<BTreeMap<String, String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CqCase {
    pub id: String,
    pub category: Category,
    pub question: String,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_query: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
    /// `query` variable → `altQuery` variable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correspondence: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rationale: Option<String>,
    #[serde(default, with = "entailment_serde")]
    pub entailment: Entailment,
    /// Defaults to `materialized` in query mode and `asserted` in
    /// equivalence mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query_graph: Option<GraphSelector>,
    /// Defaults to `materialized`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_query_graph: Option<GraphSelector>,
}

mod entailment_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::query::Entailment;

    pub fn serialize<S: Serializer>(e: &Entailment, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&e.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Entailment, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl CqCase {
    pub fn query_graph(&self) -> GraphSelector {
        self.query_graph.unwrap_or(match self.mode {
            Mode::Equivalence => GraphSelector::Asserted,
            _ => GraphSelector::Materialized,
        })
    }

    pub fn alt_query_graph(&self) -> GraphSelector {
        self.alt_query_graph.unwrap_or(GraphSelector::Materialized)
    }

    /// The equivalence case with its two sides exchanged: queries, graph
    /// selectors and the direction of the correspondence.
    pub fn swapped(&self) -> CqCase {
        let mut c = self.clone();
        std::mem::swap(&mut c.query, &mut c.alt_query);
        c.query_graph = Some(self.alt_query_graph());
        c.alt_query_graph = Some(self.query_graph());
        c.correspondence = self
            .correspondence
            .as_ref()
            .map(|m| m.iter().map(|(a, b)| (b.clone(), a.clone())).collect());
        c
    }

    fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let blank = |s: &Option<String>| s.as_ref().is_none_or(|t| t.trim().is_empty());
        if self.id.trim().is_empty() {
            out.push("empty id".to_string());
        }
        match self.mode {
            Mode::Query => {
                if blank(&self.query) {
                    out.push("mode `query` needs a `query`".to_string());
                }
                if self.alt_query.is_some() {
                    out.push("mode `query` takes no `altQuery`".to_string());
                }
                match &self.expect {
                    None => out.push("mode `query` needs an `expect` block".to_string()),
                    Some(e) => {
                        if e.min_rows.is_none() && e.exact_rows.is_none() && e.rows.is_none() {
                            out.push("`expect` must give at least one of minRows, exactRows, rows".to_string());
                        }
                        if let (Some(min), Some(exact)) = (e.min_rows, e.exact_rows) {
                            if min > exact {
                                out.push(format!("`expect` minRows {min} exceeds exactRows {exact}"));
                            }
                        }
                    }
                }
            }
            Mode::Equivalence => {
                if blank(&self.query) || blank(&self.alt_query) {
                    out.push("mode `equivalence` needs both `query` and `altQuery`".to_string());
                }
                if self.correspondence.as_ref().is_none_or(BTreeMap::is_empty) {
                    out.push("mode `equivalence` needs a non-empty `correspondence`".to_string());
                }
                if self.expect.is_some() {
                    out.push("mode `equivalence` takes no `expect` block".to_string());
                }
            }
            Mode::Unanswerable => {
                if blank(&self.rationale) {
                    out.push("mode `unanswerable` needs a `rationale`".to_string());
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("malformed suite document: {0}")]
    Malformed(String),
    #[error("duplicate case id `{0}`")]
    DuplicateId(String),
    #[error("{}", .0.iter().map(|(id, msg)| format!("case `{id}`: {msg}")).collect::<Vec<_>>().join("; "))]
    InvalidCases(Vec<(String, String)>),
}

/// Parses and checks a suite: a JSON array of cases.
pub fn load_suite(text: &str) -> Result<Vec<CqCase>, SuiteError> {
    let cases: Vec<CqCase> = serde_json::from_str(text).map_err(|e| SuiteError::Malformed(e.to_string()))?;
    let mut seen = BTreeSet::new();
    for c in &cases {
        if !seen.insert(c.id.as_str()) {
            return Err(SuiteError::DuplicateId(c.id.clone()));
        }
    }
    let problems: Vec<(String, String)> = cases
        .iter()
        .flat_map(|c| c.problems().into_iter().map(|p| (c.id.clone(), p)))
        .collect();
    if problems.is_empty() {
        Ok(cases)
    } else {
        Err(SuiteError::InvalidCases(problems))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedUnanswerable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedUnanswerable => "skipped-unanswerable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseOutcome {
    pub id: String,
    pub category: Category,
    pub mode: Mode,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt_rows: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rationale: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped_unanswerable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CqReport {
    pub summary: Summary,
    pub cases: Vec<CaseOutcome>,
}

impl CqReport {
    fn new(mut cases: Vec<CaseOutcome>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary {
            total: cases.len(),
            ..Summary::default()
        };
        for c in &cases {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::SkippedUnanswerable => summary.skipped_unanswerable += 1,
            }
        }
        CqReport { summary, cases }
    }

    pub fn outcome(&self, id: &str) -> Option<&CaseOutcome> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width terminal table followed by a summary line.
    pub fn to_table(&self) -> String {
        let width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        let mut out = String::new();
        writeln!(out, "{:width$}  {:14}  {:20}  {:>5}  detail", "id", "category", "status", "rows").expect("write");
        for c in &self.cases {
            let category = serde_json::to_value(c.category).expect("category serializes");
            let rows = match (c.rows, c.alt_rows) {
                (Some(a), Some(b)) => format!("{a}/{b}"),
                (Some(a), None) => a.to_string(),
                _ => "-".to_string(),
            };
            let detail = c
                .diagnostics
                .first()
                .or(c.rationale.as_ref())
                .map(String::as_str)
                .unwrap_or("");
            writeln!(
                out,
                "{:width$}  {:14}  {:20}  {:>5}  {}",
                c.id,
                category.as_str().unwrap_or(""),
                c.status.to_string(),
                rows,
                detail
            )
            .expect("write");
        }
        let s = &self.summary;
        writeln!(
            out,
            "{} cases: {} passed, {} failed, {} skipped (unanswerable)",
            s.total, s.passed, s.failed, s.skipped_unanswerable
        )
        .expect("write");
        out
    }
}

/// Runs every case. The rules are applied to `g` once and the result is
/// shared by all cases.
pub fn run_suite(suite: &[CqCase], g: &Graph, schema: &Schema, rules: &[Rule]) -> CqReport {
    let mut materialized = g.clone();
    materialized.extend(materialize(g, schema, rules).into_iter().map(|d| d.triple));
    CqReport::new(suite.iter().map(|c| run_case(c, g, &materialized, schema)).collect())
}

/// Runs one case against a prepared asserted/materialized pair.
pub fn run_case(case: &CqCase, asserted: &Graph, materialized: &Graph, schema: &Schema) -> CaseOutcome {
    let mut outcome = CaseOutcome {
        id: case.id.clone(),
        category: case.category,
        mode: case.mode,
        status: Status::Fail,
        rows: None,
        alt_rows: None,
        diagnostics: Vec::new(),
        rationale: None,
    };
    let pick = |sel: GraphSelector| match sel {
        GraphSelector::Asserted => asserted,
        GraphSelector::Materialized => materialized,
    };
    let prefixes = {
        let mut pm = PrefixMap::standard();
        pm.overlay(asserted.prefixes());
        pm
    };
    let run = |text: &Option<String>, graph: &Graph| -> Result<(SolutionSet, PrefixMap), String> {
        let text = text.as_deref().ok_or("query missing")?;
        let q = parse_query_with(text, &prefixes).map_err(|e| format!("query does not parse: {e}"))?;
        Ok((evaluate(&q, graph, schema, case.entailment), q.prefixes().clone()))
    };

    match case.mode {
        Mode::Unanswerable => {
            outcome.status = Status::SkippedUnanswerable;
            outcome.rationale = case.rationale.clone();
        }
        Mode::Query => match run(&case.query, pick(case.query_graph())) {
            Err(e) => outcome.diagnostics.push(e),
            Ok((solutions, pm)) => {
                outcome.rows = Some(solutions.len());
                match check_expectation(case.expect.as_ref(), &solutions, &pm) {
                    Ok(()) => outcome.status = Status::Pass,
                    Err(e) => outcome.diagnostics.push(e),
                }
            }
        },
        Mode::Equivalence => {
            let left = run(&case.query, pick(case.query_graph()));
            let right = run(&case.alt_query, pick(case.alt_query_graph()));
            match (left, right) {
                (Ok((a, _)), Ok((b, _))) => {
                    outcome.rows = Some(a.len());
                    outcome.alt_rows = Some(b.len());
                    let empty = BTreeMap::new();
                    let corr = case.correspondence.as_ref().unwrap_or(&empty);
                    match compare(&a, &b, corr) {
                        Ok(()) => outcome.status = Status::Pass,
                        Err(e) => outcome.diagnostics.push(e),
                    }
                }
                (l, r) => {
                    outcome.diagnostics.extend(l.err().map(|e| format!("query: {e}")));
                    outcome.diagnostics.extend(r.err().map(|e| format!("altQuery: {e}")));
                }
            }
        }
    }
    outcome
}

fn compare(a: &SolutionSet, b: &SolutionSet, corr: &BTreeMap<String, String>) -> Result<(), String> {
    let renamed: BTreeSet<&String> = a.header().iter().map(|v| corr.get(v).unwrap_or(v)).collect();
    let other: BTreeSet<&String> = b.header().iter().collect();
    if renamed != other {
        return Err(format!(
            "projected variables do not correspond: {:?} vs {:?}",
            renamed.into_iter().collect::<Vec<_>>(),
            other.into_iter().collect::<Vec<_>>()
        ));
    }
    let left = a.renamed_maps(corr);
    let right = b.maps();
    if left == right {
        return Ok(());
    }
    let only_left = left.difference(&right).count();
    let only_right = right.difference(&left).count();
    Err(format!(
        "solution sets differ: {only_left} row(s) only from query, {only_right} only from altQuery"
    ))
}

fn check_expectation(expect: Option<&Expectation>, solutions: &SolutionSet, pm: &PrefixMap) -> Result<(), String> {
    let Some(e) = expect else {
        return Err("no expectation".to_string());
    };
    let n = solutions.len();
    if let Some(min) = e.min_rows {
        if n < min {
            return Err(format!("expected at least {min} row(s), got {n}"));
        }
    }
    if let Some(exact) = e.exact_rows {
        if n != exact {
            return Err(format!("expected exactly {exact} row(s), got {n}"));
        }
    }
    if let Some(rows) = &e.rows {
        let mut expected = BTreeSet::new();
        for row in rows {
            let mut map = BTreeMap::new();
            for (var, text) in row {
                let term: Term = parse_term(text, pm).map_err(|err| format!("expected row term `{text}`: {err}"))?;
                map.insert(var.trim_start_matches('?').to_string(), term);
            }
            expected.insert(map);
        }
        let actual = solutions.maps();
        if actual != expected {
            return Err(format!(
                "expected {} row(s), got {}; {} expected row(s) missing",
                expected.len(),
                actual.len(),
                expected.difference(&actual).count()
            ));
        }
    }
    Ok(())
}
