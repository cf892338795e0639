use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid IRI `{0}`")]
    InvalidIri(String),
    #[error("invalid blank node label `{0}`")]
    InvalidBlankLabel(String),
    #[error("invalid language tag `{0}`")]
    InvalidLanguageTag(String),
    #[error("language tag given for non-language-string datatype `{0}`")]
    TagWithoutLangString(String),
    #[error("rdf:langString literal requires a language tag")]
    LangStringWithoutTag,
    #[error("literal `{0}` cannot be the subject of a triple")]
    LiteralSubject(String),
}

/// Characters excluded from IRIs. Rejecting them up front keeps the canonical
/// `<...>` form escape-free, which the term order relies on.
fn forbidden_iri_char(c: char) -> bool {
    c.is_whitespace()
        || c.is_control()
        || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

/// An absolute IRI.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, TermError> {
        let value = value.as_ref();
        if !is_valid_iri(value) {
            return Err(TermError::InvalidIri(value.to_string()));
        }
        Ok(Iri(Arc::from(value)))
    }

    /// Builds an IRI from a compile-time constant.
    ///
    /// Panics if `value` is not a valid IRI.
    pub fn from_static(value: &'static str) -> Self {
        Iri::new(value).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn rdf_type() -> Self {
        Iri::from_static(vocab::rdf::TYPE)
    }
}

pub(crate) fn is_valid_iri(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    let scheme_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
    scheme_ok && !value.chars().any(forbidden_iri_char)
}

impl Ord for Iri {
    fn cmp(&self, other: &Self) -> Ordering {
        // `<a>` vs `<ab>` compares '>' against 'b', so the closing bracket
        // takes part in the comparison.
        let a = self.0.bytes().chain(std::iter::once(b'>'));
        let b = other.0.bytes().chain(std::iter::once(b'>'));
        a.cmp(b)
    }
}

impl PartialOrd for Iri {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankNode(Arc<str>);

impl BlankNode {
    /// Labels use the Turtle `BLANK_NODE_LABEL` character set so they can be
    /// written back verbatim.
    pub fn new(label: impl AsRef<str>) -> Result<Self, TermError> {
        let label = label.as_ref();
        if !is_valid_blank_label(label) {
            return Err(TermError::InvalidBlankLabel(label.to_string()));
        }
        Ok(BlankNode(Arc::from(label)))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_blank_label(label: &str) -> bool {
    let mut chars = label.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_alphanumeric() || first == '_')
        && label.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !label.ends_with('.')
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

impl fmt::Debug for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Iri,
    language: Option<Arc<str>>,
}

impl Literal {
    /// A plain `xsd:string` literal.
    pub fn simple(lexical: impl AsRef<str>) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: Iri::from_static(vocab::xsd::STRING),
            language: None,
        }
    }

    pub fn typed(lexical: impl AsRef<str>, datatype: Iri) -> Result<Self, TermError> {
        if datatype.as_str() == vocab::rdf::LANG_STRING {
            return Err(TermError::LangStringWithoutTag);
        }
        Ok(Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype,
            language: None,
        })
    }

    /// A language-tagged string. The tag is normalized to lowercase.
    pub fn lang(lexical: impl AsRef<str>, tag: impl AsRef<str>) -> Result<Self, TermError> {
        let tag = tag.as_ref();
        if !is_valid_lang_tag(tag) {
            return Err(TermError::InvalidLanguageTag(tag.to_string()));
        }
        Ok(Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: Iri::from_static(vocab::rdf::LANG_STRING),
            language: Some(Arc::from(tag.to_ascii_lowercase().as_str())),
        })
    }

    pub fn new(
        lexical: impl AsRef<str>,
        datatype: Iri,
        language: Option<&str>,
    ) -> Result<Self, TermError> {
        match language {
            Some(tag) if datatype.as_str() == vocab::rdf::LANG_STRING => Literal::lang(lexical, tag),
            Some(_) => Err(TermError::TagWithoutLangString(datatype.as_str().to_string())),
            None => Literal::typed(lexical, datatype),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    /// N-Triples form; `xsd:string` is left implicit.
    pub fn canonical(&self) -> String {
        let mut out = String::with_capacity(self.lexical.len() + 2);
        out.push('"');
        escape_string_into(&self.lexical, &mut out);
        out.push('"');
        if let Some(tag) = &self.language {
            out.push('@');
            out.push_str(tag);
        } else if self.datatype.as_str() != vocab::xsd::STRING {
            out.push_str("^^");
            out.push_str(&self.datatype.to_string());
        }
        out
    }
}

fn is_valid_lang_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let primary_ok = parts
        .next()
        .is_some_and(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphabetic()));
    primary_ok && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

pub(crate) fn escape_string_into(value: &str, out: &mut String) {
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.canonical().cmp(&other.canonical())
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// An RDF term. Ordered IRIs < blank nodes < literals, then by canonical
/// N-Triples serialization.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    BlankNode(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn iri(value: impl AsRef<str>) -> Result<Self, TermError> {
        Iri::new(value).map(Term::Iri)
    }

    pub fn blank(label: impl AsRef<str>) -> Result<Self, TermError> {
        BlankNode::new(label).map(Term::BlankNode)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<BlankNode> for Term {
    fn from(node: BlankNode) -> Self {
        Term::BlankNode(node)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => iri.fmt(f),
            Term::BlankNode(node) => node.fmt(f),
            Term::Literal(lit) => lit.fmt(f),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl Serialize for Iri {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    /// Fails when the subject is a literal.
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> Result<Self, TermError> {
        let subject = subject.into();
        if let Term::Literal(lit) = &subject {
            return Err(TermError::LiteralSubject(lit.canonical()));
        }
        Ok(Triple {
            subject,
            predicate,
            object: object.into(),
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn into_parts(self) -> (Term, Iri, Term) {
        (self.subject, self.predicate, self.object)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// `{"subject", "predicate", "object"}`, each in N-Triples form.
impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Triple", 3)?;
        st.serialize_field("subject", &self.subject.to_string())?;
        st.serialize_field("predicate", &self.predicate.to_string())?;
        st.serialize_field("object", &self.object.to_string())?;
        st.end()
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_validation_is_shallow() {
        assert!(Iri::new("http://example.org/a").is_ok());
        assert!(Iri::new("urn:x").is_ok());
        assert!(Iri::new("").is_err());
        assert!(Iri::new("no-scheme").is_err());
        assert!(Iri::new("http://example.org/a b").is_err());
        assert!(Iri::new(":x").is_err());
    }

    #[test]
    fn kind_order() {
        let iri = Term::iri("http://z.org/").unwrap();
        let blank = Term::blank("a").unwrap();
        let lit = Term::Literal(Literal::simple("a"));
        assert!(iri < blank && blank < lit);
    }

    #[test]
    fn iri_order_follows_serialization() {
        // "<ab#x>" < "<ab>" because '#' (0x23) < '>' (0x3E)
        let a = Iri::new("http://x/ab#x").unwrap();
        let b = Iri::new("http://x/ab").unwrap();
        assert!(a < b);
        assert_eq!(a.to_string() < b.to_string(), a < b);
    }

    #[test]
    fn language_literals() {
        let lit = Literal::lang("Was Ihr Wollt", "DE").unwrap();
        assert_eq!(lit.language(), Some("de"));
        assert_eq!(lit.canonical(), "\"Was Ihr Wollt\"@de");
        assert!(Literal::lang("x", "").is_err());
        assert!(Literal::typed("x", Iri::from_static(vocab::rdf::LANG_STRING)).is_err());
        assert!(Literal::new("x", Iri::from_static(vocab::xsd::STRING), Some("en")).is_err());
    }

    #[test]
    fn literal_subject_rejected() {
        let err = Triple::new(Literal::simple("x"), Iri::rdf_type(), Literal::simple("y")).unwrap_err();
        assert!(matches!(err, TermError::LiteralSubject(_)));
    }

    #[test]
    fn escapes() {
        let lit = Literal::simple("a\"b\\c\nd");
        assert_eq!(lit.canonical(), r#""a\"b\\c\nd""#);
    }
}
