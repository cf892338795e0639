use std::collections::HashSet;

use super::lexer::{Lexer, Tok, Token};
use super::{Dialect, ErrorKind, ParseError};
use crate::rdf::{BlankNode, Graph, Iri, Literal, PrefixMap, Term, Triple};

/// Parses a whole document. Relative IRIs are resolved against `base`.
/// Parsing stops at the first error.
pub fn parse(text: &str, base: &Iri, dialect: Dialect) -> Result<(Graph, PrefixMap), ParseError> {
    let mut parser = DocParser {
        lx: Lexer::new(text),
        base: base.as_str().to_string(),
        prefixes: PrefixMap::new(),
        triples: Vec::new(),
        user_labels: scan_user_labels(text),
        anon_count: 0,
    };
    match dialect {
        Dialect::Turtle => parser.turtle_document()?,
        Dialect::NTriples => parser.ntriples_document()?,
    }
    let DocParser { prefixes, triples, .. } = parser;
    let mut graph = Graph::with_prefixes(prefixes.clone());
    graph.extend(triples);
    Ok((graph, prefixes))
}

/// Parses a single term such as `nfdicore:Dataset`, `<http://x>`,
/// `"text"@en` or `_:b0`.
pub fn parse_term(text: &str, prefixes: &PrefixMap) -> Result<Term, ParseError> {
    let mut parser = DocParser {
        lx: Lexer::new(text),
        base: String::new(),
        prefixes: prefixes.clone(),
        triples: Vec::new(),
        user_labels: HashSet::new(),
        anon_count: 0,
    };
    let token = parser.lx.next_token()?;
    let term = match token.tok {
        Tok::Str(_) => Term::Literal(parser.literal_rest(token)?),
        Tok::Blank(ref label) => Term::BlankNode(blank(label, &token)?),
        _ => Term::Iri(parser.iri_from(&token)?),
    };
    let rest = parser.lx.next_token()?;
    if rest.tok != Tok::Eof {
        return Err(structure(&rest, "expected a single term"));
    }
    Ok(term)
}

const ANON_PREFIX: &str = "anon";

struct DocParser {
    lx: Lexer,
    base: String,
    prefixes: PrefixMap,
    triples: Vec<Triple>,
    user_labels: HashSet<String>,
    anon_count: usize,
}

fn structure(token: &Token, message: impl Into<String>) -> ParseError {
    ParseError {
        line: token.line,
        column: token.column,
        kind: ErrorKind::BadStructure,
        message: message.into(),
    }
}

fn unexpected(token: &Token, expected: &str) -> ParseError {
    let kind = match token.tok {
        Tok::Eof => ErrorKind::BadStructure,
        _ => ErrorKind::BadToken,
    };
    ParseError {
        line: token.line,
        column: token.column,
        kind,
        message: format!("expected {expected}, found {}", token.tok.describe()),
    }
}

fn blank(label: &str, token: &Token) -> Result<BlankNode, ParseError> {
    BlankNode::new(label).map_err(|e| ParseError {
        line: token.line,
        column: token.column,
        kind: ErrorKind::BadToken,
        message: e.to_string(),
    })
}

/// Reserved for unsupported shorthand.
fn reject_shorthand(token: &Token) -> Option<ParseError> {
    match &token.tok {
        Tok::Number(n) => Some(structure(token, format!("numeric shorthand `{n}` is not supported; use a typed literal"))),
        Tok::Word(w) if w == "true" || w == "false" => {
            Some(structure(token, format!("boolean shorthand `{w}` is not supported; use a typed literal")))
        }
        Tok::LParen => Some(structure(token, "collections are not supported")),
        _ => None,
    }
}

/// Reads an IRI reference or prefixed name; relative references resolve
/// against `base` (an empty base leaves them relative, which is an error).
pub(crate) fn iri_token(token: &Token, prefixes: &PrefixMap, base: &str) -> Result<Iri, ParseError> {
    let raw = match &token.tok {
        Tok::IriRef(r) => resolve_iri(base, r),
        Tok::PName { prefix, local } => {
            let ns = prefixes.get(prefix).ok_or_else(|| ParseError {
                line: token.line,
                column: token.column,
                kind: ErrorKind::UnknownPrefix,
                message: format!("prefix `{prefix}:` is not declared"),
            })?;
            format!("{ns}{local}")
        }
        _ => {
            if let Some(err) = reject_shorthand(token) {
                return Err(err);
            }
            return Err(unexpected(token, "an IRI"));
        }
    };
    Iri::new(&raw).map_err(|_| ParseError {
        line: token.line,
        column: token.column,
        kind: ErrorKind::BadIri,
        message: format!("`{raw}` is not an absolute IRI"),
    })
}

/// Completes a literal whose string token has just been consumed, reading an
/// optional language tag or `^^datatype`.
pub(crate) fn literal_after(lx: &mut Lexer, token: Token, prefixes: &PrefixMap, base: &str) -> Result<Literal, ParseError> {
    let Tok::Str(lexical) = token.tok else {
        unreachable!("called on string tokens")
    };
    match lx.peek()?.tok {
        Tok::LangTag(_) => {
            let tag_token = lx.next_token()?;
            let Tok::LangTag(tag) = &tag_token.tok else { unreachable!() };
            Literal::lang(&lexical, tag).map_err(|e| ParseError {
                line: tag_token.line,
                column: tag_token.column,
                kind: ErrorKind::BadToken,
                message: e.to_string(),
            })
        }
        Tok::DoubleCaret => {
            lx.next_token()?;
            let dt_token = lx.next_token()?;
            let datatype = iri_token(&dt_token, prefixes, base)?;
            Literal::typed(&lexical, datatype).map_err(|e| structure(&dt_token, e.to_string()))
        }
        _ => Ok(Literal::simple(&lexical)),
    }
}

/// Reads `label: <namespace>` after a prefix keyword and binds it.
pub(crate) fn prefix_decl(lx: &mut Lexer, prefixes: &mut PrefixMap, base: &str) -> Result<(), ParseError> {
    let name = lx.next_token()?;
    let Tok::PName { prefix, local } = &name.tok else {
        return Err(unexpected(&name, "a prefix label such as `ex:`"));
    };
    if !local.is_empty() {
        return Err(structure(&name, "prefix label must end with ':'"));
    }
    let iri_token = lx.next_token()?;
    let Tok::IriRef(raw) = &iri_token.tok else {
        return Err(unexpected(&iri_token, "a namespace IRI"));
    };
    let ns = resolve_iri(base, raw);
    prefixes.insert(prefix, &ns).map_err(|e| ParseError {
        line: iri_token.line,
        column: iri_token.column,
        kind: ErrorKind::BadIri,
        message: e.to_string(),
    })
}

pub(crate) fn resolve_iri(base: &str, reference: &str) -> String {
    let has_scheme = reference
        .find(':')
        .map(|i| {
            let scheme = &reference[..i];
            !scheme.is_empty()
                && scheme.starts_with(|c: char| c.is_ascii_alphabetic())
                && scheme.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        })
        .unwrap_or(false);
    if has_scheme || base.is_empty() {
        return reference.to_string();
    }
    let without_fragment = base.split('#').next().unwrap_or(base);
    if reference.is_empty() {
        return without_fragment.to_string();
    }
    if reference.starts_with('#') {
        return format!("{without_fragment}{reference}");
    }
    let without_query = without_fragment.split('?').next().unwrap_or(without_fragment);
    let scheme_end = without_query.find(':').map(|i| i + 1).unwrap_or(0);
    if reference.starts_with("//") {
        return format!("{}{reference}", &without_query[..scheme_end]);
    }
    let rest = &without_query[scheme_end..];
    let authority_end = if let Some(stripped) = rest.strip_prefix("//") {
        scheme_end + 2 + stripped.find('/').unwrap_or(stripped.len())
    } else {
        scheme_end
    };
    if reference.starts_with('/') {
        return format!("{}{reference}", &without_query[..authority_end]);
    }
    match without_query[authority_end..].rfind('/') {
        Some(i) => format!("{}{reference}", &without_query[..authority_end + i + 1]),
        None => format!("{}/{reference}", &without_query[..authority_end]),
    }
}

/// Labels that follow `_:` anywhere in the text. Over-approximates (it also
/// sees `_:` inside strings), which only makes generated labels skip more.
fn scan_user_labels(text: &str) -> HashSet<String> {
    text.match_indices("_:")
        .map(|(i, _)| {
            text[i + 2..]
                .chars()
                .take_while(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
                .collect::<String>()
                .trim_end_matches('.')
                .to_string()
        })
        .filter(|l| !l.is_empty())
        .collect()
}

impl DocParser {
    fn fresh_blank(&mut self) -> Term {
        loop {
            let label = format!("{ANON_PREFIX}{}", self.anon_count);
            self.anon_count += 1;
            if !self.user_labels.contains(&label) {
                return Term::blank(label).expect("generated labels are valid");
            }
        }
    }

    fn emit(&mut self, s: Term, p: Iri, o: Term) {
        self.triples
            .push(Triple::new(s, p, o).expect("subjects are never literals here"));
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, ParseError> {
        let token = self.lx.next_token()?;
        if token.tok == want {
            Ok(token)
        } else {
            Err(unexpected(&token, what))
        }
    }

    fn iri_from(&self, token: &Token) -> Result<Iri, ParseError> {
        iri_token(token, &self.prefixes, &self.base)
    }

    fn literal_rest(&mut self, token: Token) -> Result<Literal, ParseError> {
        literal_after(&mut self.lx, token, &self.prefixes, &self.base)
    }

    fn turtle_document(&mut self) -> Result<(), ParseError> {
        loop {
            let token = self.lx.peek()?.clone();
            match &token.tok {
                Tok::Eof => return Ok(()),
                Tok::Directive(d) if d == "prefix" => {
                    self.lx.next_token()?;
                    self.prefix_decl()?;
                    self.expect(Tok::Dot, "'.' after @prefix")?;
                }
                Tok::Directive(d) if d == "base" => {
                    self.lx.next_token()?;
                    self.base_decl()?;
                    self.expect(Tok::Dot, "'.' after @base")?;
                }
                Tok::Directive(d) => {
                    return Err(structure(&token, format!("unknown directive @{d}")));
                }
                Tok::Word(w) if w.eq_ignore_ascii_case("prefix") => {
                    self.lx.next_token()?;
                    self.prefix_decl()?;
                }
                Tok::Word(w) if w.eq_ignore_ascii_case("base") => {
                    self.lx.next_token()?;
                    self.base_decl()?;
                }
                _ => {
                    self.triples_statement()?;
                    self.expect(Tok::Dot, "'.' at end of statement")?;
                }
            }
        }
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        prefix_decl(&mut self.lx, &mut self.prefixes, &self.base)
    }

    fn base_decl(&mut self) -> Result<(), ParseError> {
        let iri_token = self.lx.next_token()?;
        let Tok::IriRef(raw) = &iri_token.tok else {
            return Err(unexpected(&iri_token, "a base IRI"));
        };
        self.base = resolve_iri(&self.base, raw);
        Ok(())
    }

    fn triples_statement(&mut self) -> Result<(), ParseError> {
        let token = self.lx.next_token()?;
        let subject = match &token.tok {
            Tok::LBracket => {
                let node = self.fresh_blank();
                if self.lx.peek()?.tok == Tok::RBracket {
                    self.lx.next_token()?;
                    self.predicate_object_list(&node, false)?;
                } else {
                    self.predicate_object_list(&node, true)?;
                    self.expect(Tok::RBracket, "']'")?;
                    if self.lx.peek()?.tok != Tok::Dot {
                        self.predicate_object_list(&node, false)?;
                    }
                }
                return Ok(());
            }
            Tok::Blank(label) => Term::BlankNode(blank(label, &token)?),
            Tok::Str(_) => return Err(structure(&token, "a literal cannot be a subject")),
            _ => Term::Iri(self.iri_from(&token)?),
        };
        self.predicate_object_list(&subject, false)
    }

    fn predicate_object_list(&mut self, subject: &Term, nested: bool) -> Result<(), ParseError> {
        loop {
            let verb_token = self.lx.next_token()?;
            let verb = match &verb_token.tok {
                Tok::Word(w) if w == "a" => Iri::rdf_type(),
                Tok::IriRef(_) | Tok::PName { .. } => self.iri_from(&verb_token)?,
                _ => return Err(unexpected(&verb_token, "a predicate")),
            };
            loop {
                let object = self.object(nested)?;
                self.emit(subject.clone(), verb.clone(), object);
                if self.lx.peek()?.tok == Tok::Comma {
                    self.lx.next_token()?;
                } else {
                    break;
                }
            }
            if self.lx.peek()?.tok != Tok::Semicolon {
                return Ok(());
            }
            while self.lx.peek()?.tok == Tok::Semicolon {
                self.lx.next_token()?;
            }
            if matches!(self.lx.peek()?.tok, Tok::Dot | Tok::RBracket | Tok::Eof) {
                return Ok(());
            }
        }
    }

    fn object(&mut self, nested: bool) -> Result<Term, ParseError> {
        let token = self.lx.next_token()?;
        match &token.tok {
            Tok::Str(_) => Ok(Term::Literal(self.literal_rest(token)?)),
            Tok::Blank(label) => Ok(Term::BlankNode(blank(label, &token)?)),
            Tok::LBracket => {
                if nested {
                    return Err(structure(&token, "nested anonymous blank nodes are not supported"));
                }
                let node = self.fresh_blank();
                if self.lx.peek()?.tok == Tok::RBracket {
                    self.lx.next_token()?;
                    return Ok(node);
                }
                self.predicate_object_list(&node, true)?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(node)
            }
            Tok::IriRef(_) | Tok::PName { .. } => Ok(Term::Iri(self.iri_from(&token)?)),
            _ => Err(reject_shorthand(&token).unwrap_or_else(|| unexpected(&token, "an object"))),
        }
    }

    fn ntriples_document(&mut self) -> Result<(), ParseError> {
        loop {
            let token = self.lx.next_token()?;
            let subject = match &token.tok {
                Tok::Eof => return Ok(()),
                Tok::IriRef(_) => Term::Iri(self.absolute_iri(&token)?),
                Tok::Blank(label) => Term::BlankNode(blank(label, &token)?),
                _ => return Err(structure(&token, format!("expected subject, found {}", token.tok.describe()))),
            };
            let p_token = self.lx.next_token()?;
            let predicate = match &p_token.tok {
                Tok::IriRef(_) => self.absolute_iri(&p_token)?,
                _ => return Err(structure(&p_token, format!("expected predicate IRI, found {}", p_token.tok.describe()))),
            };
            let o_token = self.lx.next_token()?;
            let object = match &o_token.tok {
                Tok::IriRef(_) => Term::Iri(self.absolute_iri(&o_token)?),
                Tok::Blank(label) => Term::BlankNode(blank(label, &o_token)?),
                Tok::Str(_) => {
                    if self.lx.peek()?.tok == Tok::DoubleCaret {
                        self.lx.next_token()?;
                        let dt = self.lx.next_token()?;
                        if !matches!(dt.tok, Tok::IriRef(_)) {
                            return Err(structure(&dt, "datatype must be an absolute IRI"));
                        }
                        let datatype = self.absolute_iri(&dt)?;
                        let Tok::Str(lex) = o_token.tok else { unreachable!() };
                        Term::Literal(Literal::typed(lex, datatype).map_err(|e| structure(&dt, e.to_string()))?)
                    } else {
                        Term::Literal(self.literal_rest(o_token)?)
                    }
                }
                _ => return Err(structure(&o_token, format!("expected object, found {}", o_token.tok.describe()))),
            };
            self.expect(Tok::Dot, "'.' at end of triple")?;
            self.emit(subject, predicate, object);
        }
    }

    fn absolute_iri(&self, token: &Token) -> Result<Iri, ParseError> {
        let Tok::IriRef(raw) = &token.tok else {
            return Err(unexpected(token, "an IRI"));
        };
        Iri::new(raw).map_err(|_| ParseError {
            line: token.line,
            column: token.column,
            kind: ErrorKind::BadIri,
            message: format!("`{raw}` is not an absolute IRI"),
        })
    }
}
