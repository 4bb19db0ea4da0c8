//! Line-oriented parser for triple statements.
//!
//! Each non-empty line outside comments holds one statement:
//!
//! ```text
//! <subject> <predicate> <object> .
//! ```
//!
//! Terms are absolute IRIs in angle brackets, double-quoted literals with
//! `\"` and `\\` escapes, blank nodes `_:name`, and quoted triples in
//! `<< ... >>`. Lines starting with `#` and blank lines are skipped.
//! Repeated statements are kept once, preserving first occurrence order.

use std::collections::HashSet;
use thiserror::Error;

use super::term::{RdfTerm, Triple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    src: &'a str,
}

impl Scanner<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_spaces(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        self.src[self.byte_pos()..].starts_with(s)
    }

    fn byte_pos(&self) -> usize {
        self.chars[..self.pos].iter().map(|c| c.len_utf8()).sum()
    }

    fn iri(&mut self) -> Result<RdfTerm, ParseError> {
        let start = self.column();
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some(c) if c.is_whitespace() => {
                    return Err(self.err(self.column() - 1, "whitespace inside an IRI"))
                }
                Some(c) => out.push(c),
                None => return Err(self.err(start, "unterminated IRI")),
            }
        }
        if !out.contains(':') {
            return Err(self.err(start, format!("IRI {out:?} is not absolute (no scheme)")));
        }
        Ok(RdfTerm::Iri(out))
    }

    fn literal(&mut self) -> Result<RdfTerm, ParseError> {
        let start = self.column();
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => {
                    let escape_col = self.column() - 1;
                    match self.bump() {
                        Some('"') => out.push('"'),
                        Some('\\') => out.push('\\'),
                        Some(c) => {
                            return Err(self.err(escape_col, format!("unknown escape \\{c}")))
                        }
                        None => return Err(self.err(start, "unterminated literal")),
                    }
                }
                Some(c) => out.push(c),
                None => return Err(self.err(start, "unterminated literal")),
            }
        }
        Ok(RdfTerm::Literal(out))
    }

    fn blank(&mut self) -> Result<RdfTerm, ParseError> {
        let start = self.column();
        self.pos += 2;
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                name.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err(self.err(start, "blank node without a name"));
        }
        Ok(RdfTerm::Blank(name))
    }

    fn quoted_triple(&mut self) -> Result<RdfTerm, ParseError> {
        let start = self.column();
        self.pos += 2;
        let triple = self.triple()?;
        self.skip_spaces();
        if self.starts_with(">>") {
            self.pos += 2;
            Ok(RdfTerm::TripleTerm(Box::new(triple)))
        } else {
            Err(self.err(start, "quoted triple is not closed with '>>'"))
        }
    }

    fn term(&mut self) -> Result<RdfTerm, ParseError> {
        self.skip_spaces();
        if self.starts_with("<<") {
            return self.quoted_triple();
        }
        if self.starts_with("_:") {
            return self.blank();
        }
        match self.peek() {
            Some('<') => self.iri(),
            Some('"') => self.literal(),
            Some(c) => Err(self.err(self.column(), format!("unexpected character {c:?}"))),
            None => Err(self.err(self.column(), "expected a term")),
        }
    }

    /// Three terms validated as a triple; errors point at the offending term.
    fn triple(&mut self) -> Result<Triple, ParseError> {
        self.skip_spaces();
        let subject_col = self.column();
        let subject = self.term()?;
        self.skip_spaces();
        let predicate_col = self.column();
        let predicate = self.term()?;
        self.skip_spaces();
        let object = self.term()?;
        Triple::new(subject, predicate, object).map_err(|e| {
            let column = match e {
                super::term::TripleError::Subject(_) => subject_col,
                super::term::TripleError::Predicate(_) => predicate_col,
            };
            self.err(column, e.to_string())
        })
    }

    fn statement(&mut self) -> Result<Triple, ParseError> {
        let triple = self.triple()?;
        self.skip_spaces();
        match self.bump() {
            Some('.') => {}
            Some(c) => {
                return Err(self.err(self.column() - 1, format!("expected '.', found {c:?}")))
            }
            None => return Err(self.err(self.column(), "statement is not closed with '.'")),
        }
        self.skip_spaces();
        if let Some(c) = self.peek() {
            return Err(self.err(self.column(), format!("trailing content {c:?} after '.'")));
        }
        Ok(triple)
    }
}

/// Parses a whole document into its distinct statements in source order.
pub fn parse_triples(src: &str) -> Result<Vec<Triple>, ParseError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut scanner = Scanner {
            chars: raw.chars().collect(),
            pos: 0,
            line: i + 1,
            src: raw,
        };
        let triple = scanner.statement()?;
        if seen.insert(triple.clone()) {
            out.push(triple);
        }
    }
    Ok(out)
}
