//! Tokenizer shared by the Turtle, rule and query front ends. Tokens are
//! produced on demand so a parser can stop at the first construct it rejects.

use super::{ErrorKind, ParseError};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    /// `<...>` with escapes decoded, not yet resolved against a base.
    IriRef(String),
    PName { prefix: String, local: String },
    Blank(String),
    Var(String),
    Str(String),
    LangTag(String),
    Number(String),
    Word(String),
    /// `@prefix` / `@base`
    Directive(String),
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    DoubleCaret,
    /// `^` or `∧`
    Caret,
    /// `->` or `→`
    Arrow,
    Star,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::IriRef(i) => format!("<{i}>"),
            Tok::PName { prefix, local } => format!("{prefix}:{local}"),
            Tok::Blank(b) => format!("_:{b}"),
            Tok::Var(v) => format!("?{v}"),
            Tok::Str(_) => "string literal".into(),
            Tok::LangTag(t) => format!("@{t}"),
            Tok::Number(n) => n.clone(),
            Tok::Word(w) => w.clone(),
            Tok::Directive(d) => format!("@{d}"),
            Tok::Dot => "'.'".into(),
            Tok::Semicolon => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::DoubleCaret => "'^^'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Star => "'*'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    last_was_string: bool,
    peeked: Option<Token>,
}

fn name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '.'
}

const LOCAL_ESCAPABLE: &str = "_~.-!$&'()*+,;=/?#@%";

impl Lexer {
    pub(crate) fn new(text: &str) -> Self {
        Self::at(text, 1, 1)
    }

    /// A lexer whose positions start at `line`/`column`, for text embedded in
    /// a larger document.
    pub(crate) fn at(text: &str, line: usize, column: usize) -> Self {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line,
            column,
            last_was_string: false,
            peeked: None,
        }
    }

    pub(crate) fn peek(&mut self) -> Result<&Token, ParseError> {
        if self.peeked.is_none() {
            let token = self.lex()?;
            self.peeked = Some(token);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    pub(crate) fn next_token(&mut self) -> Result<Token, ParseError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn cur(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_offset(&self, n: usize) -> Option<char> {
        self.chars.get(self.pos + n).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.cur()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, column: usize, kind: ErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            kind,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.cur() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.cur() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn lex(&mut self) -> Result<Token, ParseError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let after_string = std::mem::replace(&mut self.last_was_string, false);
        let Some(c) = self.cur() else {
            return Ok(Token { tok: Tok::Eof, line, column });
        };
        let tok = match c {
            '<' => self.iri_ref(line, column)?,
            '"' | '\'' => {
                let s = self.string(line, column)?;
                self.last_was_string = true;
                s
            }
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if word.is_empty() {
                    return Err(self.err(line, column, ErrorKind::BadToken, "expected a name after '@'"));
                }
                if after_string {
                    Tok::LangTag(word)
                } else {
                    Tok::Directive(word)
                }
            }
            '?' | '$' => {
                self.bump();
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                if name.is_empty() {
                    return Err(self.err(line, column, ErrorKind::BadToken, format!("empty variable name after '{c}'")));
                }
                Tok::Var(name)
            }
            '_' if self.at_offset(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.name_run(|c| c.is_alphanumeric() || c == '_');
                if label.is_empty() {
                    return Err(self.err(line, column, ErrorKind::BadToken, "empty blank node label"));
                }
                Tok::Blank(label)
            }
            '.' => {
                self.bump();
                Tok::Dot
            }
            ';' => {
                self.bump();
                Tok::Semicolon
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '[' => {
                self.bump();
                Tok::LBracket
            }
            ']' => {
                self.bump();
                Tok::RBracket
            }
            '(' => {
                self.bump();
                Tok::LParen
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            '{' => {
                self.bump();
                Tok::LBrace
            }
            '}' => {
                self.bump();
                Tok::RBrace
            }
            '*' => {
                self.bump();
                Tok::Star
            }
            '∧' => {
                self.bump();
                Tok::Caret
            }
            '→' => {
                self.bump();
                Tok::Arrow
            }
            '^' => {
                self.bump();
                if self.cur() == Some('^') {
                    self.bump();
                    Tok::DoubleCaret
                } else {
                    Tok::Caret
                }
            }
            '-' if self.at_offset(1) == Some('>') => {
                self.bump();
                self.bump();
                Tok::Arrow
            }
            c if c.is_ascii_digit() || ((c == '+' || c == '-') && self.at_offset(1).is_some_and(|d| d.is_ascii_digit())) => {
                self.number()
            }
            c if c.is_alphabetic() || c == ':' => self.name(line, column)?,
            other => {
                return Err(self.err(line, column, ErrorKind::BadToken, format!("unexpected character '{other}'")));
            }
        };
        Ok(Token { tok, line, column })
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.cur() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    /// A run of name characters starting with `first`; a trailing '.' is
    /// left in the input.
    fn name_run(&mut self, first: impl Fn(char) -> bool) -> String {
        if !self.cur().is_some_and(&first) {
            return String::new();
        }
        let mut end = self.pos;
        while self.chars.get(end).copied().is_some_and(name_char) {
            end += 1;
        }
        while end > self.pos && self.chars[end - 1] == '.' {
            end -= 1;
        }
        let mut out = String::new();
        while self.pos < end {
            out.push(self.bump().expect("in bounds"));
        }
        out
    }

    fn number(&mut self) -> Tok {
        let mut out = String::new();
        if matches!(self.cur(), Some('+' | '-')) {
            out.push(self.bump().expect("sign"));
        }
        out.push_str(&self.take_while(|c| c.is_ascii_digit()));
        if self.cur() == Some('.') && self.at_offset(1).is_some_and(|c| c.is_ascii_digit()) {
            out.push(self.bump().expect("dot"));
            out.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        if matches!(self.cur(), Some('e' | 'E')) {
            out.push(self.bump().expect("exponent"));
            if matches!(self.cur(), Some('+' | '-')) {
                out.push(self.bump().expect("sign"));
            }
            out.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        Tok::Number(out)
    }

    fn name(&mut self, line: usize, column: usize) -> Result<Tok, ParseError> {
        let mut end = self.pos;
        while self.chars.get(end).copied().is_some_and(name_char) {
            end += 1;
        }
        if self.chars.get(end) != Some(&':') {
            let word = self.take_while(|c| c.is_alphanumeric() || c == '_');
            return Ok(Tok::Word(word));
        }
        if end > self.pos && self.chars[end - 1] == '.' {
            return Err(self.err(line, column, ErrorKind::BadToken, "prefix label may not end with '.'"));
        }
        let mut prefix = String::new();
        while self.pos < end {
            prefix.push(self.bump().expect("in bounds"));
        }
        self.bump(); // ':'
        let local = self.local_name()?;
        Ok(Tok::PName { prefix, local })
    }

    fn local_name(&mut self) -> Result<String, ParseError> {
        let mut out = String::new();
        loop {
            let Some(c) = self.cur() else { break };
            let first = out.is_empty();
            if c.is_alphanumeric() || c == '_' || c == ':' {
                out.push(c);
                self.bump();
            } else if (c == '-' || c == '.') && !first {
                if c == '.' {
                    // keep '.' only if more name characters follow
                    let mut k = 0;
                    while self.at_offset(k) == Some('.') {
                        k += 1;
                    }
                    let next = self.at_offset(k);
                    let continues = next.is_some_and(|n| n.is_alphanumeric() || matches!(n, '_' | ':' | '-' | '%' | '\\'));
                    if !continues {
                        break;
                    }
                }
                out.push(c);
                self.bump();
            } else if c == '%' {
                let h1 = self.at_offset(1);
                let h2 = self.at_offset(2);
                if !(h1.is_some_and(|h| h.is_ascii_hexdigit()) && h2.is_some_and(|h| h.is_ascii_hexdigit())) {
                    return Err(self.err(self.line, self.column, ErrorKind::BadToken, "bad percent escape in local name"));
                }
                for _ in 0..3 {
                    out.push(self.bump().expect("hex"));
                }
            } else if c == '\\' {
                let escaped = self.at_offset(1);
                match escaped {
                    Some(e) if LOCAL_ESCAPABLE.contains(e) => {
                        self.bump();
                        self.bump();
                        out.push(e);
                    }
                    _ => {
                        return Err(self.err(self.line, self.column, ErrorKind::BadToken, "bad escape in local name"));
                    }
                }
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn iri_ref(&mut self, line: usize, column: usize) -> Result<Tok, ParseError> {
        self.bump(); // '<'
        let mut out = String::new();
        loop {
            match self.cur() {
                None | Some('\n') => {
                    return Err(self.err(line, column, ErrorKind::BadIri, "unterminated IRI"));
                }
                Some('>') => {
                    self.bump();
                    return Ok(Tok::IriRef(out));
                }
                Some('\\') => {
                    let (l, c) = (self.line, self.column);
                    self.bump();
                    let ch = self.unicode_escape(l, c, ErrorKind::BadIri)?;
                    out.push(ch);
                }
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.err(self.line, self.column, ErrorKind::BadIri, format!("character {c:?} not allowed in IRI")));
                }
                Some(c) => {
                    out.push(c);
                    self.bump();
                }
            }
        }
    }

    /// After a backslash: `uXXXX` or `UXXXXXXXX`.
    fn unicode_escape(&mut self, line: usize, column: usize, kind: ErrorKind) -> Result<char, ParseError> {
        let width = match self.cur() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.err(line, column, kind, "invalid escape sequence")),
        };
        self.bump();
        let mut hex = String::new();
        for _ in 0..width {
            match self.cur() {
                Some(h) if h.is_ascii_hexdigit() => {
                    hex.push(h);
                    self.bump();
                }
                _ => return Err(self.err(line, column, kind, "truncated unicode escape")),
            }
        }
        u32::from_str_radix(&hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.err(line, column, kind, "escape is not a unicode scalar value"))
    }

    fn string(&mut self, line: usize, column: usize) -> Result<Tok, ParseError> {
        let quote = self.cur().expect("quote");
        let long = self.at_offset(1) == Some(quote) && self.at_offset(2) == Some(quote);
        let delimiter = if long { 3 } else { 1 };
        for _ in 0..delimiter {
            self.bump();
        }
        let mut out = String::new();
        loop {
            let Some(c) = self.cur() else {
                return Err(self.err(line, column, ErrorKind::UnterminatedLiteral, "unterminated string literal"));
            };
            if c == quote {
                if !long {
                    self.bump();
                    return Ok(Tok::Str(out));
                }
                if self.at_offset(1) == Some(quote) && self.at_offset(2) == Some(quote) {
                    // a quote directly before the closing delimiter belongs to the content
                    if self.at_offset(3) == Some(quote) {
                        out.push(c);
                        self.bump();
                        continue;
                    }
                    for _ in 0..3 {
                        self.bump();
                    }
                    return Ok(Tok::Str(out));
                }
                out.push(c);
                self.bump();
                continue;
            }
            if (c == '\n' || c == '\r') && !long {
                return Err(self.err(line, column, ErrorKind::UnterminatedLiteral, "line break in short string literal"));
            }
            if c == '\\' {
                let (l, col) = (self.line, self.column);
                self.bump();
                let decoded = match self.cur() {
                    Some('t') => '\t',
                    Some('b') => '\u{8}',
                    Some('n') => '\n',
                    Some('r') => '\r',
                    Some('f') => '\u{c}',
                    Some('"') => '"',
                    Some('\'') => '\'',
                    Some('\\') => '\\',
                    Some('u' | 'U') => {
                        out.push(self.unicode_escape(l, col, ErrorKind::BadToken)?);
                        continue;
                    }
                    None => {
                        return Err(self.err(line, column, ErrorKind::UnterminatedLiteral, "unterminated string literal"));
                    }
                    Some(other) => {
                        return Err(self.err(l, col, ErrorKind::BadToken, format!("invalid escape '\\{other}'")));
                    }
                };
                self.bump();
                out.push(decoded);
                continue;
            }
            out.push(c);
            self.bump();
        }
    }
}
