//! Recognition of triple-node encodings among arbitrary two-part graphs.
//!
//! The input is a directed graph whose nodes are split into simple nodes
//! `S1..` and triple-node candidates `T1..`, optionally labelled. The graph
//! is an encoding exactly when every candidate has one subject arc from a
//! simple node and one object arc out, no arc joins two simple nodes, the
//! quotation chains between candidates are acyclic, the arc count is twice
//! the candidate count, no simple node is isolated, and no literal-labelled
//! node sources an arc. Acceptance returns a construction sequence that
//! rebuilds the graph step by step; rejection returns the first violated
//! condition as a witness, checked in the order above with nodes and arcs
//! visited in ascending order, so the answer is deterministic.

use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

use super::network::SimpleLabel;

/// Node of a partitioned graph: either class indexes from 0, prints from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PgNode {
    Simple(usize),
    Triple(usize),
}

impl fmt::Display for PgNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PgNode::Simple(i) => write!(f, "S{}", i + 1),
            PgNode::Triple(i) => write!(f, "T{}", i + 1),
        }
    }
}

/// Optional node labels: term labels for simple nodes, predicate IRIs for
/// triple-node candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgLabels {
    pub simple: Vec<SimpleLabel>,
    pub triple: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc end {node} is outside the graph ({n_simple} simple, {n_triple} triple nodes)")]
    NodeOutOfRange {
        node: PgNode,
        n_simple: usize,
        n_triple: usize,
    },
    #[error("{got} {kind} labels for {expected} {kind} nodes")]
    LabelCount {
        kind: &'static str,
        got: usize,
        expected: usize,
    },
}

/// A directed graph over two node classes; arcs are kept as an ordered set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    n_simple: usize,
    n_triple: usize,
    arcs: BTreeSet<(PgNode, PgNode)>,
    labels: Option<PgLabels>,
}

impl PartitionedGraph {
    pub fn new(
        n_simple: usize,
        n_triple: usize,
        arcs: impl IntoIterator<Item = (PgNode, PgNode)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            for node in [u, v] {
                let in_range = match node {
                    PgNode::Simple(i) => i < n_simple,
                    PgNode::Triple(i) => i < n_triple,
                };
                if !in_range {
                    return Err(GraphError::NodeOutOfRange {
                        node,
                        n_simple,
                        n_triple,
                    });
                }
            }
            set.insert((u, v));
        }
        Ok(PartitionedGraph {
            n_simple,
            n_triple,
            arcs: set,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: PgLabels) -> Result<Self, GraphError> {
        if labels.simple.len() != self.n_simple {
            return Err(GraphError::LabelCount {
                kind: "simple",
                got: labels.simple.len(),
                expected: self.n_simple,
            });
        }
        if labels.triple.len() != self.n_triple {
            return Err(GraphError::LabelCount {
                kind: "triple",
                got: labels.triple.len(),
                expected: self.n_triple,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n_simple(&self) -> usize {
        self.n_simple
    }

    pub fn n_triple(&self) -> usize {
        self.n_triple
    }

    pub fn arcs(&self) -> &BTreeSet<(PgNode, PgNode)> {
        &self.arcs
    }

    pub fn labels(&self) -> Option<&PgLabels> {
        self.labels.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    SimpleObject,
    TripleObject,
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepRule::SimpleObject => f.write_str("simple-object"),
            StepRule::TripleObject => f.write_str("triple-object"),
        }
    }
}

/// One construction step: triple node `triple_node` is created with its
/// subject arc from `subject` and its object arc to `object`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionStep {
    pub rule: StepRule,
    pub triple_node: usize,
    pub subject: usize,
    pub object: PgNode,
}

impl fmt::Display for ConstructionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "apply {}: S{} -> T{} -> {}",
            self.rule,
            self.subject + 1,
            self.triple_node + 1,
            self.object
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("step {step} references {node}, which is outside the graph")]
    NodeOutOfRange { step: usize, node: PgNode },
    #[error("step {step} rebuilds triple node T{}", .triple_node + 1)]
    TripleAlreadyBuilt { step: usize, triple_node: usize },
    #[error("step {step} quotes T{}, which is not built yet", .object + 1)]
    ObjectNotBuilt { step: usize, object: usize },
    #[error("step {step} applies {rule} to a {} object", if matches!(.rule, StepRule::SimpleObject) { "triple" } else { "simple" })]
    RuleMismatch { step: usize, rule: StepRule },
    #[error("sequence builds {built} of {expected} triple nodes")]
    MissingTriples { built: usize, expected: usize },
}

/// Steps that rebuild an accepted graph from its bare node classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstructionSequence {
    pub steps: Vec<ConstructionStep>,
}

impl ConstructionSequence {
    /// Replays the steps against empty node classes of the given sizes,
    /// checking every precondition, and returns the arc set they generate.
    pub fn replay(
        &self,
        n_simple: usize,
        n_triple: usize,
    ) -> Result<BTreeSet<(PgNode, PgNode)>, ReplayError> {
        let mut built = vec![false; n_triple];
        let mut arcs = BTreeSet::new();
        for (i, step) in self.steps.iter().enumerate() {
            let step_no = i + 1;
            if step.triple_node >= n_triple {
                return Err(ReplayError::NodeOutOfRange {
                    step: step_no,
                    node: PgNode::Triple(step.triple_node),
                });
            }
            if step.subject >= n_simple {
                return Err(ReplayError::NodeOutOfRange {
                    step: step_no,
                    node: PgNode::Simple(step.subject),
                });
            }
            if built[step.triple_node] {
                return Err(ReplayError::TripleAlreadyBuilt {
                    step: step_no,
                    triple_node: step.triple_node,
                });
            }
            match (step.rule, step.object) {
                (StepRule::SimpleObject, PgNode::Simple(o)) => {
                    if o >= n_simple {
                        return Err(ReplayError::NodeOutOfRange {
                            step: step_no,
                            node: step.object,
                        });
                    }
                }
                (StepRule::TripleObject, PgNode::Triple(o)) => {
                    if o >= n_triple {
                        return Err(ReplayError::NodeOutOfRange {
                            step: step_no,
                            node: step.object,
                        });
                    }
                    if !built[o] {
                        return Err(ReplayError::ObjectNotBuilt {
                            step: step_no,
                            object: o,
                        });
                    }
                }
                (rule, _) => {
                    return Err(ReplayError::RuleMismatch {
                        step: step_no,
                        rule,
                    })
                }
            }
            built[step.triple_node] = true;
            arcs.insert((
                PgNode::Simple(step.subject),
                PgNode::Triple(step.triple_node),
            ));
            arcs.insert((PgNode::Triple(step.triple_node), step.object));
        }
        let done = built.iter().filter(|&&b| b).count();
        if done != n_triple {
            return Err(ReplayError::MissingTriples {
                built: done,
                expected: n_triple,
            });
        }
        Ok(arcs)
    }
}

/// The first violated recognition condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectionWitness {
    SubjectArcCount { triple_node: usize, count: usize },
    ObjectArcCount { triple_node: usize, count: usize },
    SimpleToSimpleArc { from: usize, to: usize },
    ChainCycle { triple_node: usize },
    ArcCountMismatch { arcs: usize, expected: usize },
    IsolatedSimpleNode { node: usize },
    LiteralSubject { node: usize },
}

impl fmt::Display for RejectionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectionWitness::SubjectArcCount { triple_node, count } => write!(
                f,
                "triple node T{} has {count} subject arcs instead of exactly one",
                triple_node + 1
            ),
            RejectionWitness::ObjectArcCount { triple_node, count } => write!(
                f,
                "triple node T{} has {count} object arcs instead of exactly one",
                triple_node + 1
            ),
            RejectionWitness::SimpleToSimpleArc { from, to } => {
                write!(f, "arc S{} -> S{} joins two simple nodes", from + 1, to + 1)
            }
            RejectionWitness::ChainCycle { triple_node } => {
                write!(
                    f,
                    "triple node T{} lies on a quotation cycle",
                    triple_node + 1
                )
            }
            RejectionWitness::ArcCountMismatch { arcs, expected } => {
                write!(
                    f,
                    "graph has {arcs} arcs where the encoding needs {expected}"
                )
            }
            RejectionWitness::IsolatedSimpleNode { node } => {
                write!(f, "simple node S{} is isolated", node + 1)
            }
            RejectionWitness::LiteralSubject { node } => {
                write!(f, "literal node S{} is the source of an arc", node + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecognitionResult {
    Accepted(ConstructionSequence),
    Rejected(RejectionWitness),
}

impl RecognitionResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, RecognitionResult::Accepted(_))
    }
}

/// Decides whether `g` is a triple-node encoding.
pub fn recognize(g: &PartitionedGraph) -> RecognitionResult {
    use RejectionWitness as W;
    let nt = g.n_triple;
    let mut s_in = vec![0usize; nt];
    let mut out_deg = vec![0usize; nt];
    let mut subject_of = vec![0usize; nt];
    let mut object_of = vec![PgNode::Simple(0); nt];
    let mut first_s2s = None;
    let mut incident = vec![false; g.n_simple];
    for &(u, v) in &g.arcs {
        for node in [u, v] {
            if let PgNode::Simple(i) = node {
                incident[i] = true;
            }
        }
        match (u, v) {
            (PgNode::Simple(a), PgNode::Simple(b)) => {
                if first_s2s.is_none() {
                    first_s2s = Some((a, b));
                }
            }
            (PgNode::Simple(a), PgNode::Triple(t)) => {
                s_in[t] += 1;
                subject_of[t] = a;
            }
            (PgNode::Triple(t), x) => {
                out_deg[t] += 1;
                object_of[t] = x;
            }
        }
    }
    for t in 0..nt {
        if s_in[t] != 1 {
            return RecognitionResult::Rejected(W::SubjectArcCount {
                triple_node: t,
                count: s_in[t],
            });
        }
        if out_deg[t] != 1 {
            return RecognitionResult::Rejected(W::ObjectArcCount {
                triple_node: t,
                count: out_deg[t],
            });
        }
    }
    if let Some((from, to)) = first_s2s {
        return RecognitionResult::Rejected(W::SimpleToSimpleArc { from, to });
    }
    // Quotation chains: t waits on its object when that object is itself a
    // triple node. Each candidate has exactly one object by now.
    let mut quoters: Vec<Vec<usize>> = vec![Vec::new(); nt];
    let mut ready = BTreeSet::new();
    for (t, object) in object_of.iter().enumerate() {
        match object {
            PgNode::Triple(q) => quoters[*q].push(t),
            PgNode::Simple(_) => {
                ready.insert(t);
            }
        }
    }
    let mut steps = Vec::with_capacity(nt);
    let mut built = vec![false; nt];
    while let Some(&t) = ready.iter().next() {
        ready.remove(&t);
        built[t] = true;
        let rule = match object_of[t] {
            PgNode::Simple(_) => StepRule::SimpleObject,
            PgNode::Triple(_) => StepRule::TripleObject,
        };
        steps.push(ConstructionStep {
            rule,
            triple_node: t,
            subject: subject_of[t],
            object: object_of[t],
        });
        for &q in &quoters[t] {
            ready.insert(q);
        }
    }
    if steps.len() < nt {
        // Some candidate was never released, so the chain walk from the
        // smallest unbuilt node must return to a visited node.
        let start = (0..nt)
            .find(|&t| !built[t])
            .expect("an unbuilt node exists");
        let mut seen = vec![false; nt];
        let mut cur = start;
        let on_cycle = loop {
            if seen[cur] {
                break cur;
            }
            seen[cur] = true;
            match object_of[cur] {
                PgNode::Triple(q) => cur = q,
                PgNode::Simple(_) => unreachable!("unbuilt nodes wait on triple objects"),
            }
        };
        return RecognitionResult::Rejected(W::ChainCycle {
            triple_node: on_cycle,
        });
    }
    let expected = 2 * nt;
    if g.arcs.len() != expected {
        return RecognitionResult::Rejected(W::ArcCountMismatch {
            arcs: g.arcs.len(),
            expected,
        });
    }
    if let Some(node) = (0..g.n_simple).find(|&s| !incident[s]) {
        return RecognitionResult::Rejected(W::IsolatedSimpleNode { node });
    }
    if let Some(labels) = &g.labels {
        for &(u, _) in &g.arcs {
            if let PgNode::Simple(a) = u {
                if matches!(labels.simple[a], SimpleLabel::Literal(_)) {
                    return RecognitionResult::Rejected(W::LiteralSubject { node: a });
                }
            }
        }
    }
    RecognitionResult::Accepted(ConstructionSequence { steps })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct GraphParseError {
    pub line: usize,
    pub message: String,
}

fn parse_pg_node(
    token: &str,
    n_simple: usize,
    n_triple: usize,
    line: usize,
) -> Result<PgNode, GraphParseError> {
    let err = |message: String| GraphParseError { line, message };
    let (class, digits) = if let Some(d) = token.strip_prefix('S') {
        ("S", d)
    } else if let Some(d) = token.strip_prefix('T') {
        ("T", d)
    } else {
        return Err(err(format!("node token {token:?} must start with S or T")));
    };
    let index: usize = digits
        .parse()
        .map_err(|_| err(format!("malformed node token {token:?}")))?;
    if index == 0 {
        return Err(err(format!("node token {token:?} is not 1-based")));
    }
    match class {
        "S" if index <= n_simple => Ok(PgNode::Simple(index - 1)),
        "T" if index <= n_triple => Ok(PgNode::Triple(index - 1)),
        "S" | "T" => Err(err(format!("node token {token:?} is out of range"))),
        _ => Err(err(format!("node token {token:?} must start with S or T"))),
    }
}

/// Parses the plain text graph format:
///
/// ```text
/// # comment
/// S 1
/// T 3
/// S1 T1
/// T1 T2
/// ```
///
/// The two header lines give the class sizes; each further line is one arc
/// between 1-based node tokens.
pub fn parse_partitioned_graph(src: &str) -> Result<PartitionedGraph, GraphParseError> {
    let mut n_simple = None;
    let mut n_triple = None;
    let mut arcs = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| GraphParseError {
            line: line_no,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["S", n] if n_simple.is_none() && arcs.is_empty() => {
                n_simple = Some(
                    n.parse()
                        .map_err(|_| err(format!("malformed S count {n:?}")))?,
                );
            }
            ["T", n] if n_triple.is_none() && arcs.is_empty() => {
                n_triple = Some(
                    n.parse()
                        .map_err(|_| err(format!("malformed T count {n:?}")))?,
                );
            }
            [from, to] => {
                let (Some(ns), Some(nt)) = (n_simple, n_triple) else {
                    return Err(err("arcs before the S and T header lines".to_string()));
                };
                let u = parse_pg_node(from, ns, nt, line_no)?;
                let v = parse_pg_node(to, ns, nt, line_no)?;
                arcs.push((u, v));
            }
            _ => return Err(err(format!("malformed line {line:?}"))),
        }
    }
    let (Some(ns), Some(nt)) = (n_simple, n_triple) else {
        return Err(GraphParseError {
            line: src.lines().count() + 1,
            message: "missing S and T header lines".to_string(),
        });
    };
    Ok(PartitionedGraph::new(ns, nt, arcs).expect("arc ranges were checked per line"))
}
