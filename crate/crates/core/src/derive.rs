//! Derived networks through matrix expressions over relations.
//!
//! Each relation of a network maps to a sparse matrix whose row and column
//! spaces come from the relation's declared modes (or from the full node set
//! when nothing is declared). Matrix expressions such as `WA^T * WA` then
//! combine those matrices under a chosen semiring; names, products, grouping
//! parentheses, and the transpose suffix `^T` are the entire grammar:
//!
//! ```text
//! expr   := factor ('*' factor)*
//! factor := (NAME | '(' expr ')') ['^T']
//! ```
//!
//! Names are taken from `[A-Za-z0-9_]+`, so purely numeric relation names
//! like `224` work unquoted.

use std::collections::BTreeMap;
use thiserror::Error;

use crate::matrix::{MatrixError, Space, SparseMatrix};
use crate::network::{Network, NodeId, Weight};
use crate::semiring::{Semiring, SemiringError};

#[derive(Debug, Error)]
pub enum DeriveError {
    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error("expression error at character {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("expression names no relation {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Value(#[from] SemiringError),
}

/// Row/column spaces and node order for one relation of `net`.
///
/// A declared mode pair yields one space per mode; otherwise both spaces run
/// over the full node set in id order, under the single mode's name when the
/// network has exactly one mode and under `nodes` otherwise.
fn relation_spaces(net: &Network, relation: &str) -> Result<(SpaceIndex, SpaceIndex), DeriveError> {
    let rel = net
        .relation(relation)
        .ok_or_else(|| DeriveError::UnknownRelation(relation.to_string()))?;
    match rel.mode_pair() {
        Some((u, v)) => {
            let row = SpaceIndex::for_mode(net, u);
            let col = if v == u {
                row.clone()
            } else {
                SpaceIndex::for_mode(net, v)
            };
            Ok((row, col))
        }
        None => {
            let all = SpaceIndex::for_all_nodes(net);
            Ok((all.clone(), all))
        }
    }
}

#[derive(Clone)]
struct SpaceIndex {
    space: Space,
    index: BTreeMap<NodeId, usize>,
}

impl SpaceIndex {
    fn from_nodes(mode: &str, nodes: Vec<NodeId>, net: &Network) -> Self {
        let labels = nodes
            .iter()
            .map(|&id| {
                let label = net.label_of(id).unwrap_or("");
                if label.is_empty() {
                    format!("#{id}")
                } else {
                    label.to_string()
                }
            })
            .collect();
        let index = nodes.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        SpaceIndex {
            space: Space::new(mode, labels),
            index,
        }
    }

    fn for_mode(net: &Network, mode: &str) -> Self {
        Self::from_nodes(mode, net.nodes_in_mode(mode), net)
    }

    fn for_all_nodes(net: &Network) -> Self {
        let mode = match net.modes() {
            [single] => single.clone(),
            _ => "nodes".to_string(),
        };
        Self::from_nodes(&mode, net.nodes().collect(), net)
    }
}

/// The matrix of one relation under `sr`: entry (u, v) is the semiring sum
/// of the collapsed weights of all links from u to v. Undirected links
/// contribute in both directions when row and column spaces coincide and are
/// oriented row-mode to column-mode otherwise. Collapsed weights must lie in
/// the semiring's domain.
pub fn relation_matrix(
    net: &Network,
    relation: &str,
    sr: &Semiring,
) -> Result<SparseMatrix, DeriveError> {
    let (row, col) = relation_spaces(net, relation)?;
    let rel = net.relation(relation).expect("checked by relation_spaces");
    let square = row.space.compatible(&col.space);
    let mut triplets = Vec::new();
    for link in rel.links() {
        let w = link.weight.collapse(sr);
        sr.check_value(w)?;
        let oriented = if row.index.contains_key(&link.from) && col.index.contains_key(&link.to) {
            (link.from, link.to)
        } else {
            (link.to, link.from)
        };
        let (r, c) = (row.index[&oriented.0], col.index[&oriented.1]);
        triplets.push((r, c, w));
        if !link.directed && square && link.from != link.to {
            triplets.push((c, r, w));
        }
    }
    Ok(SparseMatrix::from_triplets(
        row.space, col.space, triplets, sr,
    )?)
}

/// Matrices of every relation of `net`, keyed by relation name.
pub fn relation_env(
    net: &Network,
    sr: &Semiring,
) -> Result<BTreeMap<String, SparseMatrix>, DeriveError> {
    let mut env = BTreeMap::new();
    for rel in net.relations() {
        env.insert(
            rel.name().to_string(),
            relation_matrix(net, rel.name(), sr)?,
        );
    }
    Ok(env)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Star,
    LParen,
    RParen,
    Transpose,
}

/// Tokens paired with their 1-based character positions.
fn lex(expr: &str) -> Result<Vec<(Token, usize)>, DeriveError> {
    let chars: Vec<char> = expr.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let pos = i + 1;
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '*' => {
                tokens.push((Token::Star, pos));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, pos));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, pos));
                i += 1;
            }
            '^' => {
                if chars.get(i + 1) == Some(&'T') {
                    tokens.push((Token::Transpose, pos));
                    i += 2;
                } else {
                    return Err(DeriveError::Parse {
                        position: pos,
                        message: "'^' must be followed by 'T'".to_string(),
                    });
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push((Token::Name(chars[start..i].iter().collect()), start + 1));
            }
            other => {
                return Err(DeriveError::Parse {
                    position: pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    env: &'a BTreeMap<String, SparseMatrix>,
    sr: &'a Semiring,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<SparseMatrix, DeriveError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.matmul(&rhs, self.sr)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparseMatrix, DeriveError> {
        let position = self.here();
        let mut m = match self.peek().cloned() {
            Some(Token::Name(name)) => {
                self.pos += 1;
                self.env
                    .get(&name)
                    .cloned()
                    .ok_or(DeriveError::UnknownName(name))?
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() == Some(&Token::RParen) {
                    self.pos += 1;
                    inner
                } else {
                    return Err(DeriveError::Parse {
                        position: self.here(),
                        message: "expected ')'".to_string(),
                    });
                }
            }
            _ => {
                return Err(DeriveError::Parse {
                    position,
                    message: "expected a relation name or '('".to_string(),
                })
            }
        };
        while self.peek() == Some(&Token::Transpose) {
            self.pos += 1;
            m = m.transpose();
        }
        Ok(m)
    }
}

/// Evaluates a matrix expression against named relation matrices.
pub fn eval_expression(
    expr: &str,
    env: &BTreeMap<String, SparseMatrix>,
    sr: &Semiring,
) -> Result<SparseMatrix, DeriveError> {
    let tokens = lex(expr)?;
    let end = expr.chars().count() + 1;
    let mut parser = Parser {
        tokens,
        pos: 0,
        env,
        sr,
        end,
    };
    let result = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(DeriveError::Parse {
            position: parser.here(),
            message: "unexpected trailing input".to_string(),
        });
    }
    Ok(result)
}

fn combine_weights(a: Weight, b: &Weight, sr: &Semiring) -> Weight {
    match (a, b) {
        (Weight::Scalar(x), Weight::Scalar(y)) => Weight::Scalar(sr.add(x, *y)),
        (Weight::Temporal(p), Weight::Temporal(q)) => Weight::Temporal(p.sum(q, sr)),
        (a, b) => Weight::Scalar(sr.add(a.total(), b.total())),
    }
}

/// Flattens all relations into one relation `all`, combining parallel links
/// between the same node pair: arcs with arcs by orientation, edges with
/// edges regardless of orientation. Scalar weights combine with the semiring
/// addition, temporal weights with temporal sum, and a mixed pair collapses
/// the temporal side to its total first. Nodes, modes, and properties carry
/// over unchanged.
pub fn simplify_structure(net: &Network, sr: &Semiring) -> Network {
    let mut out = Network::new();
    for mode in net.modes() {
        out.add_mode(mode);
    }
    for id in net.nodes() {
        out.add_node_with_id(
            id,
            net.mode_of(id).expect("listed"),
            net.label_of(id).expect("listed"),
        )
        .expect("ids unique in source");
    }
    for (pname, values) in net.properties() {
        for (&node, value) in values {
            out.set_property(pname, node, value.clone())
                .expect("node copied");
        }
    }
    let mut arcs: BTreeMap<(NodeId, NodeId), Weight> = BTreeMap::new();
    let mut edges: BTreeMap<(NodeId, NodeId), Weight> = BTreeMap::new();
    for rel in net.relations() {
        for link in rel.links() {
            let (bucket, key) = if link.directed {
                (&mut arcs, (link.from, link.to))
            } else {
                (&mut edges, (link.from.min(link.to), link.from.max(link.to)))
            };
            match bucket.remove(&key) {
                Some(have) => {
                    bucket.insert(key, combine_weights(have, &link.weight, sr));
                }
                None => {
                    bucket.insert(key, link.weight.clone());
                }
            }
        }
    }
    out.add_relation("all");
    for ((from, to), weight) in arcs {
        out.add_arc_with("all", from, to, weight)
            .expect("nodes copied");
    }
    for ((from, to), weight) in edges {
        out.add_edge_with("all", from, to, weight)
            .expect("nodes copied");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::PropValue;
    use crate::tq::TemporalQuantity;

    fn tq(raw: &[(i64, i64, f64)]) -> TemporalQuantity {
        TemporalQuantity::new(raw.iter().copied()).unwrap()
    }

    /// Works w1, w2 and authors a1, a2 with WA = {w1->a1, w1->a2, w2->a2}
    /// plus a one-mode citation w2->w1.
    fn small_biblio() -> Network {
        let mut net = Network::new();
        let w1 = net.add_node("works", "w1");
        let w2 = net.add_node("works", "w2");
        let a1 = net.add_node("authors", "a1");
        let a2 = net.add_node("authors", "a2");
        net.add_relation("WA");
        net.declare_relation_modes("WA", "works", "authors")
            .unwrap();
        net.add_arc("WA", w1, a1).unwrap();
        net.add_arc("WA", w1, a2).unwrap();
        net.add_arc("WA", w2, a2).unwrap();
        net.add_relation("Cite");
        net.declare_relation_modes("Cite", "works", "works")
            .unwrap();
        net.add_arc("Cite", w2, w1).unwrap();
        net
    }

    fn dense(m: &SparseMatrix) -> Vec<Vec<f64>> {
        (0..m.n_rows())
            .map(|r| {
                (0..m.n_cols())
                    .map(|c| m.get(r, c).unwrap_or(0.0))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn declared_relation_maps_to_a_rectangular_matrix() {
        let net = small_biblio();
        let sr = Semiring::counting();
        let wa = relation_matrix(&net, "WA", &sr).unwrap();
        assert_eq!(wa.row_space().mode, "works");
        assert_eq!(wa.col_space().mode, "authors");
        assert_eq!(wa.row_space().labels, vec!["w1", "w2"]);
        assert_eq!(dense(&wa), vec![vec![1.0, 1.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn undeclared_relation_spans_the_full_node_set() {
        let mut net = Network::new();
        let a = net.add_node("m", "a");
        let b = net.add_node("m", "b");
        let c = net.add_node("persons", "c");
        net.add_arc("r", a, c).unwrap();
        net.add_edge("r", b, c).unwrap();
        let sr = Semiring::counting();
        let m = relation_matrix(&net, "r", &sr).unwrap();
        assert_eq!(m.row_space().mode, "nodes");
        assert_eq!(m.n_rows(), 3);
        // The arc is one-directional, the edge shows up both ways.
        assert_eq!(
            dense(&m),
            vec![
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 1.0],
                vec![0.0, 1.0, 0.0]
            ]
        );
    }

    #[test]
    fn single_mode_networks_keep_their_mode_name() {
        let mut net = Network::new();
        let a = net.add_node("persons", "a");
        let b = net.add_node("persons", "b");
        net.add_arc("knows", a, b).unwrap();
        let m = relation_matrix(&net, "knows", &Semiring::real()).unwrap();
        assert_eq!(m.row_space().mode, "persons");
    }

    #[test]
    fn parallel_links_accumulate_with_the_semiring_addition() {
        let mut net = Network::new();
        let a = net.add_node("m", "a");
        let b = net.add_node("m", "b");
        net.add_arc_with("r", a, b, 2.0).unwrap();
        net.add_arc_with("r", a, b, 3.0).unwrap();
        let count = relation_matrix(&net, "r", &Semiring::counting()).unwrap();
        assert_eq!(count.get(0, 1), Some(5.0));
        let mut bnet = Network::new();
        let x = bnet.add_node("m", "x");
        let y = bnet.add_node("m", "y");
        bnet.add_arc_with("r", x, y, 1.0).unwrap();
        bnet.add_arc_with("r", x, y, 1.0).unwrap();
        let boolean = relation_matrix(&bnet, "r", &Semiring::boolean()).unwrap();
        assert_eq!(boolean.get(0, 1), Some(1.0));
    }

    #[test]
    fn temporal_weights_collapse_before_entering_the_matrix() {
        let mut net = Network::new();
        let a = net.add_node("m", "a");
        let b = net.add_node("m", "b");
        net.add_arc_with("r", a, b, tq(&[(1, 3, 2.0), (5, 6, 1.0)]))
            .unwrap();
        let m = relation_matrix(&net, "r", &Semiring::real()).unwrap();
        assert_eq!(m.get(0, 1), Some(3.0));
        let mut bnet = Network::new();
        let x = bnet.add_node("m", "x");
        let y = bnet.add_node("m", "y");
        bnet.add_arc_with("r", x, y, tq(&[(1, 3, 0.0), (5, 6, 1.0)]))
            .unwrap();
        let m = relation_matrix(&bnet, "r", &Semiring::boolean()).unwrap();
        assert_eq!(m.get(0, 1), Some(1.0));
    }

    #[test]
    fn out_of_domain_weights_are_reported() {
        let mut net = Network::new();
        let a = net.add_node("m", "a");
        let b = net.add_node("m", "b");
        net.add_arc_with("r", a, b, 2.0).unwrap();
        let err = relation_matrix(&net, "r", &Semiring::boolean()).unwrap_err();
        assert!(matches!(err, DeriveError::Value(_)), "got {err:?}");
    }

    #[test]
    fn empty_relation_yields_a_zero_matrix_of_declared_shape() {
        let mut net = Network::new();
        net.add_node("works", "w1");
        net.add_node("authors", "a1");
        net.add_node("authors", "a2");
        net.add_relation("WA");
        net.declare_relation_modes("WA", "works", "authors")
            .unwrap();
        let m = relation_matrix(&net, "WA", &Semiring::counting()).unwrap();
        assert_eq!((m.n_rows(), m.n_cols(), m.nnz()), (1, 2, 0));
    }

    #[test]
    fn coauthorship_expression_on_the_small_fixture() {
        let net = small_biblio();
        let sr = Semiring::counting();
        let env = relation_env(&net, &sr).unwrap();
        let co = eval_expression("WA^T * WA", &env, &sr).unwrap();
        assert_eq!(co.row_space().mode, "authors");
        assert_eq!(dense(&co), vec![vec![1.0, 1.0], vec![1.0, 2.0]]);
        let grouped = eval_expression("(WA^T) * (WA)", &env, &sr).unwrap();
        assert_eq!(dense(&grouped), dense(&co));
    }

    #[test]
    fn transpose_is_an_involution_in_expressions() {
        let net = small_biblio();
        let sr = Semiring::counting();
        let env = relation_env(&net, &sr).unwrap();
        let back = eval_expression("WA^T^T", &env, &sr).unwrap();
        assert_eq!(dense(&back), dense(&env["WA"]));
    }

    #[test]
    fn numeric_relation_names_parse_as_names() {
        let mut net = Network::new();
        let a = net.add_node("actors", "YUG");
        let b = net.add_node("actors", "KSV");
        net.add_arc("224", a, b).unwrap();
        let sr = Semiring::counting();
        let env = relation_env(&net, &sr).unwrap();
        let m = eval_expression("224 * 224^T", &env, &sr).unwrap();
        assert_eq!(m.get(0, 0), Some(1.0));
    }

    #[test]
    fn parse_errors_carry_character_positions() {
        let sr = Semiring::real();
        let space = Space::new("m", vec!["n".to_string()]);
        let unit = SparseMatrix::identity(space, &sr);
        let env: BTreeMap<String, SparseMatrix> =
            [("WA".to_string(), unit.clone()), ("WK".to_string(), unit)].into();
        let cases: &[(&str, usize)] = &[
            ("WA^", 3),
            ("^T", 1),
            ("WA *", 5),
            ("* WA", 1),
            ("(WA", 4),
            ("WA)", 3),
            ("WA $ WK", 4),
            ("", 1),
        ];
        for &(expr, want_pos) in cases {
            match eval_expression(expr, &env, &sr) {
                Err(DeriveError::Parse { position, .. }) => {
                    assert_eq!(position, want_pos, "expr {expr:?}");
                }
                other => panic!("expr {expr:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn unknown_names_are_reported_by_name() {
        let net = small_biblio();
        let sr = Semiring::counting();
        let env = relation_env(&net, &sr).unwrap();
        match eval_expression("WA^T * Nope", &env, &sr) {
            Err(DeriveError::UnknownName(name)) => assert_eq!(name, "Nope"),
            other => panic!("expected unknown name, got {other:?}"),
        }
    }

    #[test]
    fn incompatible_products_surface_the_space_mismatch() {
        let net = small_biblio();
        let sr = Semiring::counting();
        let env = relation_env(&net, &sr).unwrap();
        let err = eval_expression("WA * WA", &env, &sr).unwrap_err();
        assert!(matches!(
            err,
            DeriveError::Matrix(MatrixError::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn simplify_merges_relations_into_one() {
        let mut net = Network::new();
        let a = net.add_node("m", "a");
        let b = net.add_node("m", "b");
        let c = net.add_node("m", "c");
        net.add_arc_with("r1", a, b, 2.0).unwrap();
        net.add_arc_with("r2", a, b, 3.0).unwrap();
        net.add_arc_with("r1", b, a, 1.0).unwrap();
        net.add_edge_with("r1", b, c, 1.0).unwrap();
        net.add_edge_with("r2", c, b, 4.0).unwrap();
        net.set_property("tag", a, PropValue::Text("x".into()))
            .unwrap();
        let sr = Semiring::real();
        let simple = simplify_structure(&net, &sr);
        assert_eq!(simple.relations().len(), 1);
        let all = simple.relation("all").unwrap();
        assert_eq!(all.link_count(), 3);
        let arcs: Vec<_> = all.links().filter(|l| l.directed).collect();
        let ab = arcs.iter().find(|l| l.from == a && l.to == b).unwrap();
        assert_eq!(ab.weight, Weight::Scalar(5.0));
        let edge = all.links().find(|l| !l.directed).unwrap();
        assert_eq!(edge.weight, Weight::Scalar(5.0));
        assert_eq!(simple.property("tag", a), net.property("tag", a));
    }

    #[test]
    fn simplify_sums_temporal_weights_temporally() {
        let mut net = Network::new();
        let a = net.add_node("m", "a");
        let b = net.add_node("m", "b");
        net.add_arc_with("r1", a, b, tq(&[(1, 5, 2.0)])).unwrap();
        net.add_arc_with("r2", a, b, tq(&[(3, 7, 1.0)])).unwrap();
        let sr = Semiring::real();
        let simple = simplify_structure(&net, &sr);
        let link = simple.relation("all").unwrap().links().next().unwrap();
        assert_eq!(
            link.weight,
            Weight::Temporal(tq(&[(1, 3, 2.0), (3, 5, 3.0), (5, 7, 1.0)]))
        );
    }

    #[test]
    fn simplify_collapses_mixed_weight_kinds() {
        let mut net = Network::new();
        let a = net.add_node("m", "a");
        let b = net.add_node("m", "b");
        net.add_arc_with("r1", a, b, 2.0).unwrap();
        net.add_arc_with("r2", a, b, tq(&[(1, 5, 2.0), (6, 8, 1.0)]))
            .unwrap();
        let sr = Semiring::real();
        let simple = simplify_structure(&net, &sr);
        let link = simple.relation("all").unwrap().links().next().unwrap();
        assert_eq!(link.weight, Weight::Scalar(5.0));
    }

    #[test]
    fn simplified_matrix_is_the_sum_of_per_relation_matrices() {
        let mut net = Network::new();
        let nodes: Vec<_> = (0..5).map(|i| net.add_node("m", format!("n{i}"))).collect();
        let links = [
            ("r1", 0, 1, 2.0, true),
            ("r1", 1, 2, 1.0, true),
            ("r2", 0, 1, 3.0, true),
            ("r2", 2, 0, 1.5, true),
            ("r3", 3, 4, 1.0, false),
            ("r1", 4, 3, 2.0, false),
            ("r2", 2, 2, 1.0, true),
        ];
        for &(rel, f, t, w, directed) in &links {
            if directed {
                net.add_arc_with(rel, nodes[f], nodes[t], w).unwrap();
            } else {
                net.add_edge_with(rel, nodes[f], nodes[t], w).unwrap();
            }
        }
        let sr = Semiring::real();
        let simple = simplify_structure(&net, &sr);
        let flat = relation_matrix(&simple, "all", &sr).unwrap();
        let mut expect = vec![vec![0.0; 5]; 5];
        for rel in net.relations() {
            let m = relation_matrix(&net, rel.name(), &sr).unwrap();
            for (r, c, v) in m.entries() {
                expect[r][c] += v;
            }
        }
        assert_eq!(dense(&flat), expect);
    }
}
