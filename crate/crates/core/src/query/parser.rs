use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rdf::{Iri, PrefixMap, Term};
use crate::turtle::{iri_token, literal_after, prefix_decl, ErrorKind, Lexer, ParseError, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: prefix `{prefix}:` is not declared")]
    UnknownPrefix { line: usize, column: usize, prefix: String },
    #[error("{line}:{column}: unsupported feature: {feature}")]
    UnsupportedFeature { line: usize, column: usize, feature: String },
    #[error("selected variable ?{0} does not occur in the WHERE clause")]
    UnboundProjection(String),
}

impl From<ParseError> for QueryError {
    fn from(e: ParseError) -> Self {
        if e.kind == ErrorKind::UnknownPrefix {
            let prefix = e
                .message
                .split('`')
                .nth(1)
                .map(|p| p.trim_end_matches(':').to_string())
                .unwrap_or_default();
            return QueryError::UnknownPrefix {
                line: e.line,
                column: e.column,
                prefix,
            };
        }
        QueryError::Syntax {
            line: e.line,
            column: e.column,
            message: e.message,
        }
    }
}

/// Keywords outside the supported subset. Encountering one is reported as
/// an unsupported feature rather than a generic syntax error.
const UNSUPPORTED: &[&str] = &[
    "OPTIONAL", "FILTER", "UNION", "MINUS", "GRAPH", "BIND", "VALUES", "SERVICE", "ORDER", "GROUP", "HAVING",
    "LIMIT", "OFFSET", "ASK", "CONSTRUCT", "DESCRIBE", "FROM", "NAMED", "EXISTS", "NOT", "INSERT", "DELETE",
    "LOAD", "CLEAR", "DROP", "CREATE", "REDUCED",
];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternTerm {
    Var(String),
    Term(Term),
}

impl PatternTerm {
    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Term(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// A SELECT query over one basic graph pattern. Results are always distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    prefixes: PrefixMap,
    select: Vec<String>,
    star: bool,
    patterns: Vec<TriplePattern>,
}

impl Query {
    pub fn new(prefixes: PrefixMap, select: Option<Vec<String>>, patterns: Vec<TriplePattern>) -> Result<Self, QueryError> {
        let vars: BTreeSet<String> = patterns.iter().flat_map(|p| p.variables().map(str::to_string)).collect();
        let star = select.is_none();
        let select = match select {
            None => vars.into_iter().collect(),
            Some(list) => {
                if let Some(missing) = list.iter().find(|v| !vars.contains(*v)) {
                    return Err(QueryError::UnboundProjection(missing.clone()));
                }
                let mut seen = BTreeSet::new();
                list.into_iter().filter(|v| seen.insert(v.clone())).collect()
            }
        };
        Ok(Query {
            prefixes,
            select,
            star,
            patterns,
        })
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    /// Projected variables; for `SELECT *` every pattern variable, sorted.
    pub fn select_vars(&self) -> &[String] {
        &self.select
    }

    pub fn is_star(&self) -> bool {
        self.star
    }

    pub fn patterns(&self) -> &[TriplePattern] {
        &self.patterns
    }

    /// The same query with its patterns in a different order.
    pub fn with_patterns(&self, patterns: Vec<TriplePattern>) -> Self {
        Query {
            patterns,
            ..self.clone()
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SELECT")?;
        if self.star {
            f.write_str(" *")?;
        } else {
            for v in &self.select {
                write!(f, " ?{v}")?;
            }
        }
        f.write_str(" WHERE {\n")?;
        for p in &self.patterns {
            writeln!(f, "  {p}")?;
        }
        f.write_str("}\n")
    }
}

pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    parse_query_with(text, &PrefixMap::new())
}

/// Parses with `prefixes` bound up front; `PREFIX` declarations in the text
/// add to or override them.
pub fn parse_query_with(text: &str, prefixes: &PrefixMap) -> Result<Query, QueryError> {
    let mut p = QueryParser {
        lx: Lexer::new(text),
        prefixes: prefixes.clone(),
    };
    p.query()
}

fn syntax(token: &Token, message: impl Into<String>) -> QueryError {
    QueryError::Syntax {
        line: token.line,
        column: token.column,
        message: message.into(),
    }
}

fn keyword(token: &Token) -> Option<String> {
    match &token.tok {
        Tok::Word(w) => Some(w.to_ascii_uppercase()),
        _ => None,
    }
}

fn unsupported_check(token: &Token) -> Result<(), QueryError> {
    if let Some(k) = keyword(token) {
        if UNSUPPORTED.contains(&k.as_str()) {
            return Err(QueryError::UnsupportedFeature {
                line: token.line,
                column: token.column,
                feature: k,
            });
        }
    }
    Ok(())
}

struct QueryParser {
    lx: Lexer,
    prefixes: PrefixMap,
}

impl QueryParser {
    fn next(&mut self) -> Result<Token, QueryError> {
        let token = self.lx.next_token()?;
        unsupported_check(&token)?;
        Ok(token)
    }

    fn peek(&mut self) -> Result<Token, QueryError> {
        let token = self.lx.peek()?.clone();
        unsupported_check(&token)?;
        Ok(token)
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        loop {
            let token = self.next()?;
            match keyword(&token).as_deref() {
                Some("PREFIX") => prefix_decl(&mut self.lx, &mut self.prefixes, "")?,
                Some("BASE") => {
                    return Err(QueryError::UnsupportedFeature {
                        line: token.line,
                        column: token.column,
                        feature: "BASE".to_string(),
                    })
                }
                Some("SELECT") => break,
                _ => return Err(syntax(&token, format!("expected PREFIX or SELECT, found {}", token.tok.describe()))),
            }
        }

        if keyword(&self.peek()?).as_deref() == Some("DISTINCT") {
            self.next()?;
        }
        let mut select: Option<Vec<String>> = None;
        let first = self.next()?;
        match &first.tok {
            Tok::Star => {}
            Tok::Var(v) => {
                let mut vars = vec![v.clone()];
                while let Tok::Var(v) = &self.peek()?.tok {
                    vars.push(v.clone());
                    self.next()?;
                }
                select = Some(vars);
            }
            Tok::LParen => {
                return Err(QueryError::UnsupportedFeature {
                    line: first.line,
                    column: first.column,
                    feature: "projection expressions".to_string(),
                })
            }
            _ => return Err(syntax(&first, format!("expected '*' or variables after SELECT, found {}", first.tok.describe()))),
        }

        let mut open = self.next()?;
        if keyword(&open).as_deref() == Some("WHERE") {
            open = self.next()?;
        }
        if open.tok != Tok::LBrace {
            return Err(syntax(&open, format!("expected '{{', found {}", open.tok.describe())));
        }

        let mut patterns = Vec::new();
        loop {
            let token = self.peek()?;
            match token.tok {
                Tok::RBrace => {
                    self.next()?;
                    break;
                }
                Tok::Dot => {
                    self.next()?;
                }
                Tok::LBrace => {
                    return Err(QueryError::UnsupportedFeature {
                        line: token.line,
                        column: token.column,
                        feature: "nested group patterns".to_string(),
                    })
                }
                _ => {
                    self.triples(&mut patterns)?;
                    let after = self.peek()?;
                    if !matches!(after.tok, Tok::Dot | Tok::RBrace) {
                        return Err(syntax(&after, format!("expected '.' or '}}', found {}", after.tok.describe())));
                    }
                }
            }
        }
        let end = self.next()?;
        if end.tok != Tok::Eof {
            return Err(syntax(&end, format!("unexpected {} after the WHERE clause", end.tok.describe())));
        }
        if patterns.is_empty() {
            return Err(syntax(&end, "the WHERE clause has no triple patterns"));
        }
        Query::new(self.prefixes.clone(), select, patterns)
    }

    fn triples(&mut self, out: &mut Vec<TriplePattern>) -> Result<(), QueryError> {
        let subject = self.term(Position::Subject)?;
        loop {
            let predicate = self.term(Position::Predicate)?;
            loop {
                let object = self.term(Position::Object)?;
                out.push(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                if self.peek()?.tok == Tok::Comma {
                    self.next()?;
                } else {
                    break;
                }
            }
            if self.peek()?.tok != Tok::Semicolon {
                return Ok(());
            }
            while self.peek()?.tok == Tok::Semicolon {
                self.next()?;
            }
            if matches!(self.peek()?.tok, Tok::Dot | Tok::RBrace) {
                return Ok(());
            }
        }
    }

    fn term(&mut self, position: Position) -> Result<PatternTerm, QueryError> {
        let token = self.next()?;
        let unsupported = |feature: &str| QueryError::UnsupportedFeature {
            line: token.line,
            column: token.column,
            feature: feature.to_string(),
        };
        match &token.tok {
            Tok::Var(v) => Ok(PatternTerm::Var(v.clone())),
            Tok::Word(w) if w == "a" && position == Position::Predicate => Ok(PatternTerm::Term(Term::Iri(Iri::rdf_type()))),
            Tok::PName { .. } | Tok::IriRef(_) => Ok(PatternTerm::Term(Term::Iri(iri_token(&token, &self.prefixes, "")?))),
            Tok::Str(_) if position == Position::Object => {
                Ok(PatternTerm::Term(Term::Literal(literal_after(&mut self.lx, token, &self.prefixes, "")?)))
            }
            Tok::Str(_) => Err(syntax(&token, "literals may only appear in object position")),
            Tok::Blank(_) | Tok::LBracket => Err(unsupported("blank nodes in patterns")),
            Tok::LParen => Err(unsupported("collections")),
            Tok::Number(_) => Err(unsupported("numeric literals")),
            Tok::Caret | Tok::Star => Err(unsupported("property paths")),
            _ => Err(syntax(&token, format!("expected a variable or term, found {}", token.tok.describe()))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    Subject,
    Predicate,
    Object,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_query() {
        let q = parse_query("SELECT * WHERE { ?s ?p ?o . }").unwrap();
        assert!(q.is_star());
        assert_eq!(q.patterns().len(), 1);
        assert_eq!(q.select_vars(), &["o", "p", "s"]);
    }

    #[test]
    fn abbreviations() {
        let q = parse_query(
            "PREFIX : <http://ex.org/>\nSELECT DISTINCT ?x WHERE { ?x a :C ; :p :a , :b ; :q \"v\"@en . :y :r ?x }",
        )
        .unwrap();
        assert_eq!(q.patterns().len(), 5);
        assert_eq!(q.patterns()[0].predicate, PatternTerm::Term(Term::Iri(Iri::rdf_type())));
        assert_eq!(q.patterns()[4].subject, PatternTerm::Term(Term::iri("http://ex.org/y").unwrap()));
    }

    #[test]
    fn unsupported_keywords_are_named() {
        for kw in ["FILTER", "OPTIONAL", "UNION"] {
            let text = format!("SELECT ?x WHERE {{ ?x ?p ?o . {kw} }}");
            match parse_query(&text).unwrap_err() {
                QueryError::UnsupportedFeature { feature, .. } => assert_eq!(feature, kw),
                other => panic!("unexpected {other}"),
            }
        }
        match parse_query("SELECT ?x WHERE { ?x ?p ?o } LIMIT 3").unwrap_err() {
            QueryError::UnsupportedFeature { feature, .. } => assert_eq!(feature, "LIMIT"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_query("SELECT ?x WHERE { ?x zz:p ?o }"), Err(QueryError::UnknownPrefix { .. })));
        assert!(matches!(parse_query("SELECT ?y WHERE { ?x ?p ?o }"), Err(QueryError::UnboundProjection(_))));
        assert!(matches!(parse_query("SELECT ?x WHERE { ?x ?p }"), Err(QueryError::Syntax { .. })));
        assert!(matches!(parse_query("SELECT ?x { \"l\" ?p ?x }"), Err(QueryError::Syntax { line: 1, column: 13, .. })));
    }

    #[test]
    fn default_prefixes() {
        let pm = PrefixMap::standard();
        let q = parse_query_with("SELECT ?x WHERE { ?x a bfo:Role }", &pm).unwrap();
        assert_eq!(q.patterns().len(), 1);
    }

    #[test]
    fn display_reparses() {
        let q = parse_query("PREFIX : <http://ex.org/>\nSELECT ?x ?y WHERE { ?x :p ?y ; a :C }").unwrap();
        let again = parse_query(&q.to_string()).unwrap();
        assert_eq!(again.patterns(), q.patterns());
        assert_eq!(again.select_vars(), q.select_vars());
    }
}
