//! Triple-node encoding of a triple set.
//!
//! Every distinct triple in the closure of a document (asserted statements
//! plus all triples quoted inside them, each counted once) becomes one fresh
//! triple node `t` carrying the predicate, with exactly two arcs: subject to
//! `t` and `t` to object. Simple nodes are created once per distinct IRI,
//! literal, or blank node label. With `k` distinct triples the encoding has
//! exactly `k` triple nodes and `2k` arcs.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::recognize::{PartitionedGraph, PgLabels, PgNode};
use super::term::{RdfTerm, Triple};

/// Label of a simple node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleLabel {
    Iri(String),
    Literal(String),
    Blank(String),
}

impl SimpleLabel {
    pub fn text(&self) -> &str {
        match self {
            SimpleLabel::Iri(s) | SimpleLabel::Literal(s) | SimpleLabel::Blank(s) => s,
        }
    }

    fn of(term: &RdfTerm) -> Option<SimpleLabel> {
        match term {
            RdfTerm::Iri(s) => Some(SimpleLabel::Iri(s.clone())),
            RdfTerm::Literal(s) => Some(SimpleLabel::Literal(s.clone())),
            RdfTerm::Blank(s) => Some(SimpleLabel::Blank(s.clone())),
            RdfTerm::TripleTerm(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RdfNode {
    Simple(SimpleLabel),
    /// Triple node labelled by its predicate IRI.
    TripleNode(String),
}

/// One encoded triple: its triple node and the end nodes of its two arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub node: usize,
    pub subject: usize,
    pub object: usize,
    pub triple: Triple,
}

/// The encoded graph. Node indices are global over simple and triple nodes
/// in creation order; arcs reference those indices.
#[derive(Debug, Clone, Default)]
pub struct RdfNetwork {
    nodes: Vec<RdfNode>,
    arcs: Vec<(usize, usize)>,
    facts: Vec<Fact>,
}

impl RdfNetwork {
    pub fn from_triples(triples: &[Triple]) -> RdfNetwork {
        let mut net = RdfNetwork::default();
        let mut simple_index: HashMap<SimpleLabel, usize> = HashMap::new();
        let mut triple_index: HashMap<Triple, usize> = HashMap::new();
        for triple in triples {
            net.ensure_triple(triple, &mut simple_index, &mut triple_index);
        }
        net
    }

    fn ensure_term(
        &mut self,
        term: &RdfTerm,
        simple_index: &mut HashMap<SimpleLabel, usize>,
        triple_index: &mut HashMap<Triple, usize>,
    ) -> usize {
        match SimpleLabel::of(term) {
            Some(label) => match simple_index.get(&label) {
                Some(&i) => i,
                None => {
                    self.nodes.push(RdfNode::Simple(label.clone()));
                    let i = self.nodes.len() - 1;
                    simple_index.insert(label, i);
                    i
                }
            },
            None => {
                let RdfTerm::TripleTerm(inner) = term else {
                    unreachable!()
                };
                self.ensure_triple(inner, simple_index, triple_index)
            }
        }
    }

    /// Encodes one triple, reusing an existing triple node for a repeat.
    /// Quoted operands are encoded first, so nesting builds innermost-first.
    fn ensure_triple(
        &mut self,
        triple: &Triple,
        simple_index: &mut HashMap<SimpleLabel, usize>,
        triple_index: &mut HashMap<Triple, usize>,
    ) -> usize {
        if let Some(&i) = triple_index.get(triple) {
            return i;
        }
        let subject = self.ensure_term(triple.subject(), simple_index, triple_index);
        let object = self.ensure_term(triple.object(), simple_index, triple_index);
        self.nodes
            .push(RdfNode::TripleNode(triple.predicate_iri().to_string()));
        let node = self.nodes.len() - 1;
        triple_index.insert(triple.clone(), node);
        self.arcs.push((subject, node));
        self.arcs.push((node, object));
        self.facts.push(Fact {
            node,
            subject,
            object,
            triple: triple.clone(),
        });
        node
    }

    pub fn nodes(&self) -> &[RdfNode] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn n_simple(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, RdfNode::Simple(_)))
            .count()
    }

    pub fn n_triple(&self) -> usize {
        self.facts.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn predicate_of(&self, node: usize) -> Option<&str> {
        match self.nodes.get(node) {
            Some(RdfNode::TripleNode(p)) => Some(p),
            _ => None,
        }
    }

    /// Source-syntax text of a fact's triple, nested quotes included.
    pub fn fact_text(&self, fact: &Fact) -> String {
        fact.triple.to_string()
    }

    /// The same graph with nodes renumbered into the two partition classes,
    /// simple and triple nodes separately in creation order, labels kept.
    pub fn to_partitioned(&self) -> PartitionedGraph {
        let mut mapping = Vec::with_capacity(self.nodes.len());
        let mut simple_labels = Vec::new();
        let mut triple_labels = Vec::new();
        for node in &self.nodes {
            match node {
                RdfNode::Simple(label) => {
                    mapping.push(PgNode::Simple(simple_labels.len()));
                    simple_labels.push(label.clone());
                }
                RdfNode::TripleNode(pred) => {
                    mapping.push(PgNode::Triple(triple_labels.len()));
                    triple_labels.push(pred.clone());
                }
            }
        }
        let arcs = self.arcs.iter().map(|&(u, v)| (mapping[u], mapping[v]));
        PartitionedGraph::new(simple_labels.len(), triple_labels.len(), arcs)
            .expect("encoding arcs reference existing nodes")
            .with_labels(PgLabels {
                simple: simple_labels,
                triple: triple_labels,
            })
            .expect("one label per node by construction")
    }

    /// Multi-line description: nodes, then arcs, in index order.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (i, node) in self.nodes.iter().enumerate() {
            match node {
                RdfNode::Simple(SimpleLabel::Iri(s)) => writeln!(out, "{i} iri <{s}>"),
                RdfNode::Simple(SimpleLabel::Literal(s)) => writeln!(out, "{i} literal {s:?}"),
                RdfNode::Simple(SimpleLabel::Blank(s)) => writeln!(out, "{i} blank _:{s}"),
                RdfNode::TripleNode(p) => writeln!(out, "{i} triple <{p}>"),
            }
            .expect("writing to a string cannot fail");
        }
        for &(u, v) in &self.arcs {
            writeln!(out, "{u} -> {v}").expect("writing to a string cannot fail");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_triples;
    use super::*;

    fn build(src: &str) -> RdfNetwork {
        RdfNetwork::from_triples(&parse_triples(src).unwrap())
    }

    #[test]
    fn one_triple_node_and_two_arcs_per_triple() {
        let net = build("<ex:a> <ex:p> <ex:b> .\n<ex:a> <ex:q> \"x\" .");
        assert_eq!(net.n_simple(), 3);
        assert_eq!(net.n_triple(), 2);
        assert_eq!(net.arc_count(), 4);
    }

    #[test]
    fn repeated_terms_share_their_simple_node() {
        let net = build("<ex:a> <ex:p> <ex:b> .\n<ex:b> <ex:p> <ex:a> .");
        assert_eq!(net.n_simple(), 2);
        assert_eq!(net.n_triple(), 2);
    }

    #[test]
    fn iri_and_literal_of_equal_text_stay_distinct() {
        let net = build("<ex:a> <ex:p> \"ex:a\" .");
        assert_eq!(net.n_simple(), 2);
    }

    #[test]
    fn quoted_triples_join_the_closure_once() {
        // The quoted triple is also asserted; it must map to one node.
        let src = "<ex:a> <ex:p> <ex:b> .\n<ex:g> <ex:said> << <ex:a> <ex:p> <ex:b> >> .";
        let net = build(src);
        assert_eq!(net.n_triple(), 2);
        assert_eq!(net.arc_count(), 4);
        // The quoted node is the object of the quoting one.
        let quoting = net
            .facts()
            .iter()
            .find(|f| f.triple.predicate_iri() == "ex:said")
            .unwrap();
        let quoted = net
            .facts()
            .iter()
            .find(|f| f.triple.predicate_iri() == "ex:p")
            .unwrap();
        assert_eq!(quoting.object, quoted.node);
    }

    #[test]
    fn nesting_builds_innermost_first() {
        let net = build("<ex:g> <ex:said> << <ex:a> <ex:p> << <ex:b> <ex:q> \"x\" >> >> .");
        assert_eq!(net.n_triple(), 3);
        assert_eq!(net.arc_count(), 6);
        let preds: Vec<_> = net
            .facts()
            .iter()
            .map(|f| f.triple.predicate_iri().to_string())
            .collect();
        assert_eq!(preds, vec!["ex:q", "ex:p", "ex:said"]);
    }

    #[test]
    fn fact_text_renders_nested_quotes() {
        let net = build("<ex:g> <ex:said> << <ex:a> <ex:p> <ex:b> >> .");
        let outer = net.facts().last().unwrap();
        assert_eq!(
            net.fact_text(outer),
            "<ex:g> <ex:said> << <ex:a> <ex:p> <ex:b> >>"
        );
    }

    #[test]
    fn partitioned_view_preserves_counts_and_labels() {
        let src = "<ex:a> <ex:p> <ex:b> .\n<ex:g> <ex:said> << <ex:a> <ex:p> <ex:b> >> .";
        let g = build(src).to_partitioned();
        assert_eq!(g.n_simple(), 3);
        assert_eq!(g.n_triple(), 2);
        assert_eq!(g.arcs().len(), 4);
        let labels = g.labels().unwrap();
        assert_eq!(labels.simple[0], SimpleLabel::Iri("ex:a".into()));
        assert_eq!(
            labels.triple,
            vec!["ex:p".to_string(), "ex:said".to_string()]
        );
    }
}
