//! RDF terms and well-formed triples.
//!
//! A term is an IRI, a literal, a blank node, or a quoted triple. Triples
//! carry their position rules in the constructor: the subject is an IRI or a
//! blank node, the predicate an IRI, the object any term. Quoted triples nest
//! through ownership, so a term can never contain itself and term trees are
//! acyclic by construction.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    Iri,
    Literal,
    Blank,
    TripleTerm,
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TermKind::Iri => "IRI",
            TermKind::Literal => "literal",
            TermKind::Blank => "blank node",
            TermKind::TripleTerm => "triple term",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RdfTerm {
    Iri(String),
    Literal(String),
    Blank(String),
    TripleTerm(Box<Triple>),
}

impl RdfTerm {
    pub fn kind(&self) -> TermKind {
        match self {
            RdfTerm::Iri(_) => TermKind::Iri,
            RdfTerm::Literal(_) => TermKind::Literal,
            RdfTerm::Blank(_) => TermKind::Blank,
            RdfTerm::TripleTerm(_) => TermKind::TripleTerm,
        }
    }
}

impl fmt::Display for RdfTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RdfTerm::Iri(iri) => write!(f, "<{iri}>"),
            RdfTerm::Literal(text) => {
                f.write_str("\"")?;
                for c in text.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        other => write!(f, "{other}")?,
                    }
                }
                f.write_str("\"")
            }
            RdfTerm::Blank(name) => write!(f, "_:{name}"),
            RdfTerm::TripleTerm(t) => write!(f, "<< {t} >>"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error("subject must be an IRI or a blank node, not a {0}")]
    Subject(TermKind),
    #[error("predicate must be an IRI, not a {0}")]
    Predicate(TermKind),
}

/// A well-formed triple; position rules are checked once at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    subject: RdfTerm,
    predicate: RdfTerm,
    object: RdfTerm,
}

impl Triple {
    pub fn new(subject: RdfTerm, predicate: RdfTerm, object: RdfTerm) -> Result<Self, TripleError> {
        match subject.kind() {
            TermKind::Iri | TermKind::Blank => {}
            kind => return Err(TripleError::Subject(kind)),
        }
        if predicate.kind() != TermKind::Iri {
            return Err(TripleError::Predicate(predicate.kind()));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &RdfTerm {
        &self.subject
    }

    pub fn predicate(&self) -> &RdfTerm {
        &self.predicate
    }

    /// The predicate IRI text; total because of the constructor invariant.
    pub fn predicate_iri(&self) -> &str {
        match &self.predicate {
            RdfTerm::Iri(iri) => iri,
            _ => unreachable!("constructor enforces an IRI predicate"),
        }
    }

    pub fn object(&self) -> &RdfTerm {
        &self.object
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}
