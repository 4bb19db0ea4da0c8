//! The network model: modes, relations, properties, weights.
//!
//! A [`Network`] is a node set split into ordered, named, disjoint modes,
//! plus named relations of directed or undirected links, node properties, and
//! link weights that are either scalars or temporal quantities. Links are
//! stored per relation in adjacency maps keyed by source node, so one
//! relation's matrix can be extracted without scanning the others. Parallel
//! links are kept distinct and only combined at matrix extraction.
//!
//! Networks are built single-threaded through `&mut` methods and are freely
//! shareable once construction stops; there is no interior mutability.
//!
//! A [`NetworkCollection`] holds member networks that may share nodes; node
//! identity across members is by node id. [`Network::to_collection`] splits a
//! network into one member per relation and [`Network::from_collection`]
//! merges members back; the round trip preserves node labels, relation
//! names, link multisets, and weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

use crate::semiring::Semiring;
use crate::tq::TemporalQuantity;

/// Node identifier, unique across all modes of one network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Link identifier, unique within one network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkId(pub u64);

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A link weight: a plain scalar or a temporal quantity.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Scalar(f64),
    Temporal(TemporalQuantity),
}

impl Weight {
    /// Collapses to one scalar with plain addition: a scalar is itself, a
    /// temporal quantity contributes the sum of its interval values.
    pub fn total(&self) -> f64 {
        match self {
            Weight::Scalar(v) => *v,
            Weight::Temporal(tq) => tq.intervals().iter().map(|iv| iv.value).sum(),
        }
    }

    /// Collapses to one scalar folding interval values with the semiring
    /// addition; the scalar case is unchanged.
    pub fn collapse(&self, sr: &Semiring) -> f64 {
        match self {
            Weight::Scalar(v) => *v,
            Weight::Temporal(tq) => tq
                .intervals()
                .iter()
                .map(|iv| iv.value)
                .reduce(|a, b| sr.add(a, b))
                .unwrap_or_else(|| sr.zero()),
        }
    }
}

impl From<f64> for Weight {
    fn from(v: f64) -> Self {
        Weight::Scalar(v)
    }
}

impl From<TemporalQuantity> for Weight {
    fn from(tq: TemporalQuantity) -> Self {
        Weight::Temporal(tq)
    }
}

/// A node property value.
#[derive(Debug, Clone, PartialEq)]
pub enum PropValue {
    Text(String),
    Int(i64),
    Real(f64),
    Temporal(TemporalQuantity),
}

/// Property name under which a temporal quantity marks node activity.
/// Nodes without it are treated as active at every time point.
pub const ACTIVITY_PROP: &str = "activity";

#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub id: LinkId,
    pub from: NodeId,
    pub to: NodeId,
    pub directed: bool,
    pub weight: Weight,
}

impl Link {
    /// True when `n` is one of the link's end nodes.
    pub fn touches(&self, n: NodeId) -> bool {
        self.from == n || self.to == n
    }
}

/// A named set of links. The optional label carries source metadata such as
/// an event name; the optional mode pair constrains and orients the links.
#[derive(Debug, Clone)]
pub struct Relation {
    name: String,
    label: Option<String>,
    mode_pair: Option<(String, String)>,
    adjacency: BTreeMap<NodeId, Vec<Link>>,
    link_count: usize,
}

impl Relation {
    fn new(name: String) -> Self {
        Relation {
            name,
            label: None,
            mode_pair: None,
            adjacency: BTreeMap::new(),
            link_count: 0,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Declared source/target modes, if any. Equal modes constrain links to
    /// stay inside one mode; distinct modes make the relation two-mode.
    pub fn mode_pair(&self) -> Option<(&str, &str)> {
        self.mode_pair
            .as_ref()
            .map(|(u, v)| (u.as_str(), v.as_str()))
    }

    pub fn is_two_mode(&self) -> bool {
        matches!(&self.mode_pair, Some((u, v)) if u != v)
    }

    pub fn link_count(&self) -> usize {
        self.link_count
    }

    /// All links, ordered by source node and then by insertion.
    pub fn links(&self) -> impl Iterator<Item = &Link> {
        self.adjacency.values().flatten()
    }

    /// Links stored under source node `n`.
    pub fn links_from(&self, n: NodeId) -> &[Link] {
        self.adjacency.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Links incident to `n` from either end.
    pub fn links_at(&self, n: NodeId) -> Vec<&Link> {
        self.links().filter(|l| l.touches(n)).collect()
    }

    fn push(&mut self, link: Link) {
        self.adjacency.entry(link.from).or_default().push(link);
        self.link_count += 1;
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("node id {0} is already taken")]
    NodeIdTaken(NodeId),
    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error("relation {0:?} is not two-mode")]
    NotTwoMode(String),
    #[error(
        "link {from}->{to} violates the declared modes ({source_mode}, {target_mode}) of relation {relation:?}"
    )]
    TwoModeViolation {
        relation: String,
        from: NodeId,
        to: NodeId,
        source_mode: String,
        target_mode: String,
    },
    #[error("node {node} has conflicting labels {left:?} and {right:?}")]
    LabelConflict {
        node: NodeId,
        left: String,
        right: String,
    },
    #[error("node {node} is placed in conflicting modes {left:?} and {right:?}")]
    ModeConflict {
        node: NodeId,
        left: String,
        right: String,
    },
    #[error("conflicting values for property {property:?} on node {node}")]
    PropertyConflict { node: NodeId, property: String },
    #[error("members declare conflicting mode pairs for relation {relation:?}")]
    RelationModeConflict { relation: String },
    #[error("unknown mode {0:?}")]
    UnknownMode(String),
    #[error("link {link} is active at t={t} but its end node {node} is not")]
    DanglingActivity { link: LinkId, node: NodeId, t: i64 },
}

/// A multi-relational, multi-mode network with node properties.
#[derive(Debug, Clone, Default)]
pub struct Network {
    modes: Vec<String>,
    nodes: BTreeMap<NodeId, (usize, String)>,
    relations: Vec<Relation>,
    relation_index: BTreeMap<String, usize>,
    properties: BTreeMap<String, BTreeMap<NodeId, PropValue>>,
    next_node: u32,
    next_link: u64,
}

impl Network {
    pub fn new() -> Self {
        Network {
            next_node: 1,
            next_link: 1,
            ..Default::default()
        }
    }

    fn mode_index(&mut self, mode: &str) -> usize {
        match self.modes.iter().position(|m| m == mode) {
            Some(i) => i,
            None => {
                self.modes.push(mode.to_string());
                self.modes.len() - 1
            }
        }
    }

    /// Declares a mode (possibly empty), keeping declaration order.
    pub fn add_mode(&mut self, mode: &str) {
        self.mode_index(mode);
    }

    /// Adds a node to `mode`, creating the mode on first use. Ids are
    /// assigned sequentially from 1.
    pub fn add_node(&mut self, mode: &str, label: impl Into<String>) -> NodeId {
        let id = NodeId(self.next_node.max(1));
        self.add_node_with_id(id, mode, label)
            .expect("fresh id cannot collide")
    }

    /// Adds a node under a caller-chosen id.
    pub fn add_node_with_id(
        &mut self,
        id: NodeId,
        mode: &str,
        label: impl Into<String>,
    ) -> Result<NodeId, NetworkError> {
        if self.nodes.contains_key(&id) {
            return Err(NetworkError::NodeIdTaken(id));
        }
        let mi = self.mode_index(mode);
        self.nodes.insert(id, (mi, label.into()));
        self.next_node = self.next_node.max(id.0 + 1);
        Ok(id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.relations.iter().map(Relation::link_count).sum()
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        self.nodes.contains_key(&id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn modes(&self) -> &[String] {
        &self.modes
    }

    pub fn mode_of(&self, id: NodeId) -> Option<&str> {
        self.nodes.get(&id).map(|(mi, _)| self.modes[*mi].as_str())
    }

    pub fn label_of(&self, id: NodeId) -> Option<&str> {
        self.nodes.get(&id).map(|(_, label)| label.as_str())
    }

    /// Node ids of one mode, in id order.
    pub fn nodes_in_mode(&self, mode: &str) -> Vec<NodeId> {
        match self.modes.iter().position(|m| m == mode) {
            Some(mi) => self
                .nodes
                .iter()
                .filter(|(_, (m, _))| *m == mi)
                .map(|(id, _)| *id)
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relation_index.get(name).map(|&i| &self.relations[i])
    }

    fn relation_mut(&mut self, name: &str) -> &mut Relation {
        let idx = match self.relation_index.get(name) {
            Some(&i) => i,
            None => {
                self.relations.push(Relation::new(name.to_string()));
                let i = self.relations.len() - 1;
                self.relation_index.insert(name.to_string(), i);
                i
            }
        };
        &mut self.relations[idx]
    }

    /// Creates an empty relation (or leaves an existing one untouched).
    pub fn add_relation(&mut self, name: &str) {
        self.relation_mut(name);
    }

    pub fn set_relation_label(&mut self, name: &str, label: impl Into<String>) {
        self.relation_mut(name).label = Some(label.into());
    }

    /// Declares source and target modes for a relation, validating links
    /// already present. Distinct modes make the relation two-mode.
    pub fn declare_relation_modes(
        &mut self,
        name: &str,
        source_mode: &str,
        target_mode: &str,
    ) -> Result<(), NetworkError> {
        for m in [source_mode, target_mode] {
            if !self.modes.iter().any(|x| x == m) {
                return Err(NetworkError::UnknownMode(m.to_string()));
            }
        }
        let pair = (source_mode.to_string(), target_mode.to_string());
        let rel = self.relation(name).cloned();
        if let Some(rel) = rel {
            for link in rel.links() {
                self.check_link_modes(name, link.from, link.to, link.directed, &pair)?;
            }
        }
        self.relation_mut(name).mode_pair = Some(pair);
        Ok(())
    }

    fn check_link_modes(
        &self,
        relation: &str,
        from: NodeId,
        to: NodeId,
        directed: bool,
        pair: &(String, String),
    ) -> Result<(), NetworkError> {
        let (u, v) = pair;
        let fm = self.mode_of(from).expect("checked");
        let tm = self.mode_of(to).expect("checked");
        let ok = if directed {
            fm == u && tm == v
        } else {
            (fm == u && tm == v) || (fm == v && tm == u)
        };
        if ok {
            Ok(())
        } else {
            Err(NetworkError::TwoModeViolation {
                relation: relation.to_string(),
                from,
                to,
                source_mode: u.clone(),
                target_mode: v.clone(),
            })
        }
    }

    fn add_link(
        &mut self,
        relation: &str,
        from: NodeId,
        to: NodeId,
        directed: bool,
        weight: Weight,
    ) -> Result<LinkId, NetworkError> {
        if !self.contains_node(from) {
            return Err(NetworkError::UnknownNode(from));
        }
        if !self.contains_node(to) {
            return Err(NetworkError::UnknownNode(to));
        }
        if let Some(rel) = self.relation(relation) {
            if let Some(pair) = rel.mode_pair.clone() {
                self.check_link_modes(relation, from, to, directed, &pair)?;
            }
        }
        let id = LinkId(self.next_link);
        self.next_link += 1;
        self.relation_mut(relation).push(Link {
            id,
            from,
            to,
            directed,
            weight,
        });
        Ok(id)
    }

    /// Adds an arc (directed link) with the default weight 1.
    pub fn add_arc(
        &mut self,
        relation: &str,
        from: NodeId,
        to: NodeId,
    ) -> Result<LinkId, NetworkError> {
        self.add_link(relation, from, to, true, Weight::Scalar(1.0))
    }

    pub fn add_arc_with(
        &mut self,
        relation: &str,
        from: NodeId,
        to: NodeId,
        weight: impl Into<Weight>,
    ) -> Result<LinkId, NetworkError> {
        self.add_link(relation, from, to, true, weight.into())
    }

    /// Adds an edge (undirected link) with the default weight 1. For
    /// operations that require directedness an edge behaves as two opposite
    /// arcs of equal weight.
    pub fn add_edge(
        &mut self,
        relation: &str,
        from: NodeId,
        to: NodeId,
    ) -> Result<LinkId, NetworkError> {
        self.add_link(relation, from, to, false, Weight::Scalar(1.0))
    }

    pub fn add_edge_with(
        &mut self,
        relation: &str,
        from: NodeId,
        to: NodeId,
        weight: impl Into<Weight>,
    ) -> Result<LinkId, NetworkError> {
        self.add_link(relation, from, to, false, weight.into())
    }

    /// Re-inserts a fully formed link, keeping its id. The id must be fresh.
    pub(crate) fn push_link(&mut self, relation: &str, link: Link) -> Result<(), NetworkError> {
        if !self.contains_node(link.from) {
            return Err(NetworkError::UnknownNode(link.from));
        }
        if !self.contains_node(link.to) {
            return Err(NetworkError::UnknownNode(link.to));
        }
        self.next_link = self.next_link.max(link.id.0 + 1);
        self.relation_mut(relation).push(link);
        Ok(())
    }

    pub fn set_property(
        &mut self,
        name: &str,
        node: NodeId,
        value: PropValue,
    ) -> Result<(), NetworkError> {
        if !self.contains_node(node) {
            return Err(NetworkError::UnknownNode(node));
        }
        self.properties
            .entry(name.to_string())
            .or_default()
            .insert(node, value);
        Ok(())
    }

    pub fn property(&self, name: &str, node: NodeId) -> Option<&PropValue> {
        self.properties.get(name).and_then(|m| m.get(&node))
    }

    pub fn properties(&self) -> &BTreeMap<String, BTreeMap<NodeId, PropValue>> {
        &self.properties
    }

    /// Splits into one member network per relation, each restricted to the
    /// nodes incident to that relation, carrying their properties. Node ids
    /// are preserved, which is what lets members share nodes.
    pub fn to_collection(&self) -> NetworkCollection {
        let mut members = Vec::new();
        for rel in &self.relations {
            let mut incident: BTreeSet<NodeId> = BTreeSet::new();
            for link in rel.links() {
                incident.insert(link.from);
                incident.insert(link.to);
            }
            let mut member = Network::new();
            for mode in &self.modes {
                if self
                    .nodes_in_mode(mode)
                    .iter()
                    .any(|id| incident.contains(id))
                {
                    member.add_mode(mode);
                }
            }
            for &id in &incident {
                let (mi, label) = &self.nodes[&id];
                member
                    .add_node_with_id(id, &self.modes[*mi], label.clone())
                    .expect("ids are unique within one network");
            }
            member.add_relation(&rel.name);
            if let Some(label) = &rel.label {
                member.set_relation_label(&rel.name, label.clone());
            }
            if let Some((u, v)) = &rel.mode_pair {
                member
                    .declare_relation_modes(&rel.name, u, v)
                    .expect("declaration was valid in the source network");
            }
            for link in rel.links() {
                member
                    .push_link(&rel.name, link.clone())
                    .expect("incident nodes were added");
            }
            for (pname, values) in &self.properties {
                for (&node, value) in values {
                    if incident.contains(&node) {
                        member
                            .set_property(pname, node, value.clone())
                            .expect("node present in member");
                    }
                }
            }
            members.push(member);
        }
        NetworkCollection::new(members)
    }

    /// Merges collection members into one network, matching nodes by id.
    /// Conflicting labels, modes, property values, or relation declarations
    /// across members are errors.
    pub fn from_collection(coll: &NetworkCollection) -> Result<Network, NetworkError> {
        let mut net = Network::new();
        for member in &coll.members {
            for mode in member.modes() {
                net.add_mode(mode);
            }
            for id in member.nodes() {
                let mode = member.mode_of(id).expect("listed node");
                let label = member.label_of(id).expect("listed node");
                if net.contains_node(id) {
                    let have_mode = net.mode_of(id).expect("present");
                    if have_mode != mode {
                        return Err(NetworkError::ModeConflict {
                            node: id,
                            left: have_mode.to_string(),
                            right: mode.to_string(),
                        });
                    }
                    let have_label = net.label_of(id).expect("present");
                    if have_label != label {
                        return Err(NetworkError::LabelConflict {
                            node: id,
                            left: have_label.to_string(),
                            right: label.to_string(),
                        });
                    }
                } else {
                    net.add_node_with_id(id, mode, label)?;
                }
            }
        }
        for member in &coll.members {
            for rel in member.relations() {
                net.add_relation(rel.name());
                if let Some(label) = rel.label() {
                    let existing = net.relation(rel.name()).and_then(Relation::label);
                    if existing.is_none() {
                        net.set_relation_label(rel.name(), label);
                    }
                }
                if let Some((u, v)) = rel.mode_pair() {
                    let existing = net.relation(rel.name()).and_then(Relation::mode_pair);
                    match existing {
                        None => net.declare_relation_modes(rel.name(), u, v)?,
                        Some(have) if have == (u, v) => {}
                        Some(_) => {
                            return Err(NetworkError::RelationModeConflict {
                                relation: rel.name().to_string(),
                            })
                        }
                    }
                }
                for link in rel.links() {
                    net.add_link(
                        rel.name(),
                        link.from,
                        link.to,
                        link.directed,
                        link.weight.clone(),
                    )?;
                }
            }
            for (pname, values) in member.properties() {
                for (&node, value) in values {
                    match net.property(pname, node) {
                        Some(have) if have != value => {
                            return Err(NetworkError::PropertyConflict {
                                node,
                                property: pname.clone(),
                            })
                        }
                        Some(_) => {}
                        None => net.set_property(pname, node, value.clone())?,
                    }
                }
            }
        }
        Ok(net)
    }

    /// The rectangular matrix of a two-mode relation: one row per node of the
    /// source mode, one column per node of the target mode, entries summing
    /// the weights of parallel links (temporal weights contribute their
    /// interval-value total).
    pub fn two_mode_matrix(&self, relation: &str) -> Result<TwoModeMatrix, NetworkError> {
        let rel = self
            .relation(relation)
            .ok_or_else(|| NetworkError::UnknownRelation(relation.to_string()))?;
        let (u, v) = match rel.mode_pair() {
            Some((u, v)) if u != v => (u.to_string(), v.to_string()),
            _ => return Err(NetworkError::NotTwoMode(relation.to_string())),
        };
        let row_nodes = self.nodes_in_mode(&u);
        let col_nodes = self.nodes_in_mode(&v);
        let row_of: BTreeMap<NodeId, usize> =
            row_nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let col_of: BTreeMap<NodeId, usize> =
            col_nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut values = vec![vec![0.0; col_nodes.len()]; row_nodes.len()];
        for link in rel.links() {
            // Edges may be stored with either orientation; map the end in the
            // source mode to the row.
            let (r, c) = if let Some(&r) = row_of.get(&link.from) {
                (r, col_of[&link.to])
            } else {
                (row_of[&link.to], col_of[&link.from])
            };
            values[r][c] += link.weight.total();
        }
        Ok(TwoModeMatrix {
            row_nodes,
            col_nodes,
            values,
        })
    }

    fn node_active_at(&self, node: NodeId, t: i64) -> bool {
        match self.property(ACTIVITY_PROP, node) {
            Some(PropValue::Temporal(tq)) => tq.value_at(t).is_some(),
            _ => true,
        }
    }

    /// The time slice at `t`: nodes and links active at `t`, with temporal
    /// weights and properties collapsed to their value at `t`. Scalars count
    /// as always active. A link that is active while one of its end nodes is
    /// not is a dangling-activity error.
    pub fn time_slice(&self, t: i64) -> Result<Network, NetworkError> {
        let mut out = Network::new();
        for mode in &self.modes {
            out.add_mode(mode);
        }
        for (&id, (mi, label)) in &self.nodes {
            if !self.node_active_at(id, t) {
                continue;
            }
            out.add_node_with_id(id, &self.modes[*mi], label.clone())?;
            for (pname, values) in &self.properties {
                match values.get(&id) {
                    Some(PropValue::Temporal(tq)) => {
                        if let Some(v) = tq.value_at(t) {
                            out.set_property(pname, id, PropValue::Real(v))?;
                        }
                    }
                    Some(other) => out.set_property(pname, id, other.clone())?,
                    None => {}
                }
            }
        }
        for rel in &self.relations {
            out.add_relation(&rel.name);
            if let Some(label) = &rel.label {
                out.set_relation_label(&rel.name, label.clone());
            }
            if let Some((u, v)) = &rel.mode_pair {
                out.declare_relation_modes(&rel.name, u, v)?;
            }
            for link in rel.links() {
                let weight_at = match &link.weight {
                    Weight::Scalar(v) => Some(*v),
                    Weight::Temporal(tq) => tq.value_at(t),
                };
                let Some(w) = weight_at else { continue };
                for end in [link.from, link.to] {
                    if !out.contains_node(end) {
                        return Err(NetworkError::DanglingActivity {
                            link: link.id,
                            node: end,
                            t,
                        });
                    }
                }
                out.push_link(
                    &rel.name,
                    Link {
                        id: link.id,
                        from: link.from,
                        to: link.to,
                        directed: link.directed,
                        weight: Weight::Scalar(w),
                    },
                )?;
            }
        }
        Ok(out)
    }
}

/// Dense rectangular matrix of a two-mode relation.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeMatrix {
    row_nodes: Vec<NodeId>,
    col_nodes: Vec<NodeId>,
    values: Vec<Vec<f64>>,
}

impl TwoModeMatrix {
    pub fn row_nodes(&self) -> &[NodeId] {
        &self.row_nodes
    }

    pub fn col_nodes(&self) -> &[NodeId] {
        &self.col_nodes
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row][col]
    }
}

/// Member networks that may share nodes through common node ids.
#[derive(Debug, Clone, Default)]
pub struct NetworkCollection {
    members: Vec<Network>,
    registry: BTreeMap<NodeId, Vec<usize>>,
}

impl NetworkCollection {
    /// Builds a collection, recording in the registry every node id that
    /// occurs in two or more members (with the member indices holding it).
    pub fn new(members: Vec<Network>) -> Self {
        let mut occurrences: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
        for (i, member) in members.iter().enumerate() {
            for id in member.nodes() {
                occurrences.entry(id).or_default().push(i);
            }
        }
        let registry = occurrences
            .into_iter()
            .filter(|(_, ms)| ms.len() >= 2)
            .collect();
        NetworkCollection { members, registry }
    }

    pub fn members(&self) -> &[Network] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Shared-node registry: node id to indices of the members holding it.
    pub fn registry(&self) -> &BTreeMap<NodeId, Vec<usize>> {
        &self.registry
    }
}
