//! Turtle and N-Triples reading and writing.
//!
//! The Turtle dialect covers prefixed names, absolute and relative IRIs, the
//! `a` keyword, predicate lists (`;`), object lists (`,`), plain, typed and
//! language-tagged strings, blank node labels and one level of `[ ... ]`.
//! Collections, nested anonymous blank nodes and numeric/boolean shorthand
//! are rejected with [`ErrorKind::BadStructure`].

use std::fmt;

use serde::Serialize;
use thiserror::Error;

mod lexer;
mod parser;
mod writer;

pub(crate) use lexer::{Lexer, Tok, Token};
pub use parser::{parse, parse_term};
pub(crate) use parser::{iri_token, literal_after, prefix_decl};
pub use writer::serialize;
pub(crate) use writer::term as writer_term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    BadToken,
    UnterminatedLiteral,
    UnknownPrefix,
    BadIri,
    BadStructure,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::BadToken => "bad-token",
            ErrorKind::UnterminatedLiteral => "unterminated-literal",
            ErrorKind::UnknownPrefix => "unknown-prefix",
            ErrorKind::BadIri => "bad-iri",
            ErrorKind::BadStructure => "bad-structure",
        })
    }
}

/// First error encountered while reading a document. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    Turtle,
    NTriples,
}

impl Dialect {
    /// Guesses the dialect from a file extension; anything but `.nt` is Turtle.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("nt") => Dialect::NTriples,
            _ => Dialect::Turtle,
        }
    }
}

impl std::str::FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "turtle" | "ttl" => Ok(Dialect::Turtle),
            "ntriples" | "n-triples" | "nt" => Ok(Dialect::NTriples),
            other => Err(format!("unknown dialect `{other}`")),
        }
    }
}
