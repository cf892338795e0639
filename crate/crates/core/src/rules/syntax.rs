use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::rdf::{Iri, PrefixMap, Term};
use crate::turtle::{iri_token, literal_after, prefix_decl, ErrorKind, Lexer, ParseError, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: prefix `{prefix}:` is not declared")]
    UnknownPrefix { line: usize, column: usize, prefix: String },
    #[error("line {line}: {violation}")]
    Unsafe { line: usize, violation: SafetyViolation },
    #[error("line {line}: rule id `{id}` is already used")]
    DuplicateId { line: usize, id: String },
}

impl From<ParseError> for RuleError {
    fn from(e: ParseError) -> Self {
        if e.kind == ErrorKind::UnknownPrefix {
            let prefix = e
                .message
                .split('`')
                .nth(1)
                .map(|p| p.trim_end_matches(':').to_string())
                .unwrap_or_default();
            return RuleError::UnknownPrefix {
                line: e.line,
                column: e.column,
                prefix,
            };
        }
        RuleError::Syntax {
            line: e.line,
            column: e.column,
            message: e.message,
        }
    }
}

/// Head variables that no body atom binds.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rule `{rule}` is unsafe: head variable(s) {} do not occur in the body", .variables.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join(", "))]
pub struct SafetyViolation {
    pub rule: String,
    pub variables: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arg {
    Var(String),
    Term(Term),
}

impl Arg {
    pub fn var(name: &str) -> Self {
        Arg::Var(name.to_string())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Arg::Var(v) => Some(v),
            Arg::Term(_) => None,
        }
    }

    /// The term this argument denotes under `bindings`, if determined.
    pub fn resolve<'a>(&'a self, bindings: &'a BTreeMap<String, Term>) -> Option<&'a Term> {
        match self {
            Arg::Var(v) => bindings.get(v),
            Arg::Term(t) => Some(t),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Var(v) => write!(f, "?{v}"),
            Arg::Term(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassAtom {
    pub class: Iri,
    pub arg: Arg,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropertyAtom {
    pub property: Iri,
    pub subject: Arg,
    pub object: Arg,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleAtom {
    Class(ClassAtom),
    Property(PropertyAtom),
}

impl RuleAtom {
    pub fn class(class: Iri, arg: Arg) -> Self {
        RuleAtom::Class(ClassAtom { class, arg })
    }

    pub fn property(property: Iri, subject: Arg, object: Arg) -> Self {
        RuleAtom::Property(PropertyAtom { property, subject, object })
    }

    pub fn args(&self) -> Vec<&Arg> {
        match self {
            RuleAtom::Class(c) => vec![&c.arg],
            RuleAtom::Property(p) => vec![&p.subject, &p.object],
        }
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args().into_iter().filter_map(Arg::as_var)
    }
}

impl fmt::Display for RuleAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleAtom::Class(c) => write!(f, "{}({})", c.class, c.arg),
            RuleAtom::Property(p) => write!(f, "{}({}, {})", p.property, p.subject, p.object),
        }
    }
}

impl fmt::Display for PropertyAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.property, self.subject, self.object)
    }
}

/// A safe Horn rule with a single property-atom head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    id: String,
    body: Vec<RuleAtom>,
    head: PropertyAtom,
}

impl Rule {
    pub fn new(id: impl Into<String>, body: Vec<RuleAtom>, head: PropertyAtom) -> Result<Self, SafetyViolation> {
        let id = id.into();
        check_rule_safety(&id, &body, &head)?;
        Ok(Rule { id, body, head })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn body(&self) -> &[RuleAtom] {
        &self.body
    }

    pub fn head(&self) -> &PropertyAtom {
        &self.head
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.id)?;
        for (i, atom) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(" ^ ")?;
            }
            write!(f, "{atom}")?;
        }
        write!(f, " -> {}", self.head)
    }
}

/// Ok iff the body is non-empty and binds every head variable.
pub fn check_rule_safety(id: &str, body: &[RuleAtom], head: &PropertyAtom) -> Result<(), SafetyViolation> {
    let bound: BTreeSet<&str> = body.iter().flat_map(RuleAtom::variables).collect();
    let mut missing: Vec<String> = [&head.subject, &head.object]
        .into_iter()
        .filter_map(Arg::as_var)
        .filter(|v| !bound.contains(v))
        .map(str::to_string)
        .collect();
    missing.dedup();
    if body.is_empty() && missing.is_empty() {
        return Err(SafetyViolation {
            rule: id.to_string(),
            variables: Vec::new(),
        });
    }
    if missing.is_empty() {
        Ok(())
    } else {
        Err(SafetyViolation {
            rule: id.to_string(),
            variables: missing,
        })
    }
}

/// Parses a rule file: an optional `@prefix` / `PREFIX` header followed by
/// rules of the form `id: Atom ^ Atom ... -> Atom`. `prefixes` supplies
/// bindings in effect before the header; the header may add or override them.
pub fn parse_rules(text: &str, prefixes: &PrefixMap) -> Result<Vec<Rule>, RuleError> {
    let mut p = RuleParser {
        lx: Lexer::new(text),
        prefixes: prefixes.clone(),
    };
    let mut rules: Vec<Rule> = Vec::new();
    loop {
        let token = p.lx.next_token()?;
        match &token.tok {
            Tok::Eof => return Ok(rules),
            Tok::Directive(d) if d == "prefix" => {
                prefix_decl(&mut p.lx, &mut p.prefixes, "")?;
                p.expect(Tok::Dot, "'.' after @prefix")?;
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("prefix") => {
                prefix_decl(&mut p.lx, &mut p.prefixes, "")?;
            }
            Tok::PName { prefix, local } if local.is_empty() => {
                let id = prefix.clone();
                if rules.iter().any(|r| r.id == id) {
                    return Err(RuleError::DuplicateId { line: token.line, id });
                }
                let rule = p.rule_rest(&id, &token)?;
                rules.push(rule);
            }
            _ => return Err(syntax(&token, format!("expected a rule id such as `r1:`, found {}", token.tok.describe()))),
        }
    }
}

fn syntax(token: &Token, message: impl Into<String>) -> RuleError {
    RuleError::Syntax {
        line: token.line,
        column: token.column,
        message: message.into(),
    }
}

struct RuleParser {
    lx: Lexer,
    prefixes: PrefixMap,
}

impl RuleParser {
    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, RuleError> {
        let token = self.lx.next_token()?;
        if token.tok == tok {
            Ok(token)
        } else {
            Err(syntax(&token, format!("expected {what}, found {}", token.tok.describe())))
        }
    }

    fn rule_rest(&mut self, id: &str, id_token: &Token) -> Result<Rule, RuleError> {
        let mut body = vec![self.atom()?];
        loop {
            let token = self.lx.next_token()?;
            match token.tok {
                Tok::Caret => body.push(self.atom()?),
                Tok::Arrow => break,
                _ => return Err(syntax(&token, format!("expected '^' or '->', found {}", token.tok.describe()))),
            }
        }
        let head_token = self.lx.peek()?.clone();
        let head = match self.atom()? {
            RuleAtom::Property(p) => p,
            RuleAtom::Class(_) => {
                return Err(syntax(&head_token, "rule heads must be property atoms; class-atom heads are not supported"))
            }
        };
        if let Arg::Term(t) = &head.subject {
            if t.is_literal() {
                return Err(syntax(&head_token, "a literal cannot be the subject of a head atom"));
            }
        }
        if self.lx.peek()?.tok == Tok::Dot {
            self.lx.next_token()?;
        }
        Rule::new(id, body, head).map_err(|violation| RuleError::Unsafe {
            line: id_token.line,
            violation,
        })
    }

    fn atom(&mut self) -> Result<RuleAtom, RuleError> {
        let pred_token = self.lx.next_token()?;
        let predicate = match pred_token.tok {
            Tok::PName { .. } | Tok::IriRef(_) => iri_token(&pred_token, &self.prefixes, "")?,
            _ => return Err(syntax(&pred_token, format!("expected an atom predicate, found {}", pred_token.tok.describe()))),
        };
        self.expect(Tok::LParen, "'(' after atom predicate")?;
        let mut args = vec![self.arg()?];
        loop {
            let token = self.lx.next_token()?;
            match token.tok {
                Tok::Comma => args.push(self.arg()?),
                Tok::RParen => break,
                _ => return Err(syntax(&token, format!("expected ',' or ')', found {}", token.tok.describe()))),
            }
        }
        let mut args = args.into_iter();
        match (args.next(), args.next(), args.next()) {
            (Some(arg), None, None) => Ok(RuleAtom::class(predicate, arg)),
            (Some(subject), Some(object), None) => {
                if let Arg::Term(t) = &subject {
                    if t.is_literal() {
                        return Err(syntax(&pred_token, "a literal cannot be the subject of a property atom"));
                    }
                }
                Ok(RuleAtom::property(predicate, subject, object))
            }
            _ => Err(syntax(&pred_token, "atoms take one (class) or two (property) arguments")),
        }
    }

    fn arg(&mut self) -> Result<Arg, RuleError> {
        let token = self.lx.next_token()?;
        match &token.tok {
            Tok::Var(v) => Ok(Arg::Var(v.clone())),
            Tok::PName { .. } | Tok::IriRef(_) => Ok(Arg::Term(Term::Iri(iri_token(&token, &self.prefixes, "")?))),
            Tok::Str(_) => Ok(Arg::Term(Term::Literal(literal_after(&mut self.lx, token, &self.prefixes, "")?))),
            _ => Err(syntax(&token, format!("expected a variable or constant, found {}", token.tok.describe()))),
        }
    }
}
