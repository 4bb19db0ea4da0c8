//! RDF graphs with quoted triples, their node encoding, and recognition.
//!
//! [`term`] defines terms and well-formed triples; [`parser`] reads a
//! line-oriented triple syntax; [`network`] encodes a triple set as a graph
//! with one extra node per distinct triple; [`recognize`] decides whether an
//! arbitrary two-part graph is such an encoding, returning a construction
//! sequence or a rejection witness; [`project`] turns an encoded graph into
//! a [`crate::network::Network`].

pub mod network;
pub mod parser;
pub mod project;
pub mod recognize;
pub mod term;

pub use network::{Fact, RdfNetwork, SimpleLabel};
pub use parser::{parse_triples, ParseError};
pub use project::{project_to_network, ProjectError, ENTITY_MODE, STATEMENT_MODE};
pub use recognize::{
    parse_partitioned_graph, recognize, ConstructionSequence, ConstructionStep, PartitionedGraph,
    PgNode, RecognitionResult, RejectionWitness, StepRule,
};
pub use term::{RdfTerm, TermKind, Triple, TripleError};
