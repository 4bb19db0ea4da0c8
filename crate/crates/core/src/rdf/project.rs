//! Projection of an encoded triple set onto the network model.
//!
//! Simple nodes become nodes of an `entities` mode; triple nodes whose
//! statements are quoted by other statements become nodes of a `statements`
//! mode, labelled by their statement text. Each predicate becomes one
//! relation holding an arc per statement, except attribute predicates, whose
//! literal objects turn into node properties on the subject instead of arcs.

use std::collections::BTreeSet;
use std::collections::HashMap;
use thiserror::Error;

use super::network::{Fact, RdfNetwork, RdfNode, SimpleLabel};
use crate::network::{Network, NetworkError, NodeId, PropValue};

pub const ENTITY_MODE: &str = "entities";
pub const STATEMENT_MODE: &str = "statements";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectError {
    #[error("attribute {predicate:?} needs a literal object in: {statement}")]
    NonLiteralAttribute {
        predicate: String,
        statement: String,
    },
    #[error("conflicting values for attribute {property:?} of {subject:?}")]
    PropertyConflict { subject: String, property: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// The trailing IRI segment after the last `#`, `/`, or `:`.
pub fn local_name(iri: &str) -> &str {
    iri.rsplit(['#', '/', ':']).next().unwrap_or(iri)
}

fn is_attribute(predicate: &str, attrs: &BTreeSet<String>) -> bool {
    attrs.contains(predicate) || attrs.contains(local_name(predicate))
}

/// Projects the encoding onto a network. `attrs` names attribute predicates
/// by full IRI or by local name; the matching statements must carry literal
/// objects and become properties named by the predicate's local name.
pub fn project_to_network(
    rdf: &RdfNetwork,
    attrs: &BTreeSet<String>,
) -> Result<Network, ProjectError> {
    let mut net = Network::new();
    net.add_mode(ENTITY_MODE);
    let mut node_of: HashMap<usize, NodeId> = HashMap::new();
    let facts_by_node: HashMap<usize, &Fact> = rdf.facts().iter().map(|f| (f.node, f)).collect();
    let mut ensure_node = |net: &mut Network, index: usize| -> NodeId {
        if let Some(&id) = node_of.get(&index) {
            return id;
        }
        let id = match &rdf.nodes()[index] {
            RdfNode::Simple(label) => net.add_node(ENTITY_MODE, label.text()),
            RdfNode::TripleNode(_) => {
                let fact = facts_by_node[&index];
                net.add_node(STATEMENT_MODE, rdf.fact_text(fact))
            }
        };
        node_of.insert(index, id);
        id
    };
    for fact in rdf.facts() {
        let predicate = fact.triple.predicate_iri();
        let subject = ensure_node(&mut net, fact.subject);
        if is_attribute(predicate, attrs) {
            let value = match &rdf.nodes()[fact.object] {
                RdfNode::Simple(SimpleLabel::Literal(v)) => v.clone(),
                _ => {
                    return Err(ProjectError::NonLiteralAttribute {
                        predicate: predicate.to_string(),
                        statement: rdf.fact_text(fact),
                    })
                }
            };
            let property = local_name(predicate).to_string();
            match net.property(&property, subject).cloned() {
                Some(PropValue::Text(have)) if have == value => {}
                Some(_) => {
                    return Err(ProjectError::PropertyConflict {
                        subject: net.label_of(subject).unwrap_or_default().to_string(),
                        property,
                    })
                }
                None => net.set_property(&property, subject, PropValue::Text(value))?,
            }
        } else {
            let object = ensure_node(&mut net, fact.object);
            net.add_arc(predicate, subject, object)?;
        }
    }
    Ok(net)
}
