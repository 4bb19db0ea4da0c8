//! Networks as graphs plus data.
//!
//! This crate models networks whose nodes are split into named modes and whose
//! links are grouped into named relations, with node properties and scalar or
//! interval-valued (temporal) link weights. On top of the model it provides:
//!
//! - a pluggable value algebra ([`semiring::Semiring`]) with real, boolean,
//!   and counting instances,
//! - temporal quantities ([`tq::TemporalQuantity`]): partial functions of
//!   discrete time stored as disjoint constant-valued intervals, closed under
//!   pointwise sum and product,
//! - a line-oriented triple parser with nested triple terms, the bipartite
//!   triple-node encoding of a triple set, recognition of such encodings with
//!   replayable construction sequences or rejection witnesses, and projection
//!   to multi-relational networks with attribute folding,
//! - sparse relation matrices over a semiring with transpose, product, and a
//!   small expression evaluator for derived networks,
//! - event-data ingestion (dated actor-to-actor event lines) and a
//!   Pajek-style text interchange format.

pub mod derive;
pub mod keds;
pub mod matrix;
pub mod network;
pub mod pajek;
pub mod rdf;
pub mod semiring;
pub mod tq;

pub use network::{LinkId, Network, NetworkCollection, NodeId, PropValue, Weight};
pub use semiring::{Domain, Semiring};
pub use tq::TemporalQuantity;
