//! Pajek text format with extensions for modes, relations, and time.
//!
//! The exported layout is:
//!
//! ```text
//! *Vertices 9 5
//! % mode works 5
//! % mode authors 4
//! 1 "w1"
//! ...
//! *Arcs :1 "WA" "authorship"
//! 1 6 1
//! *Arcs :2 "224" "RIOT"
//! 2 7 1 [7031-7032]
//! ```
//!
//! Extensions over plain Pajek: a `% mode name count` line per mode right
//! after `*Vertices` (the classic second vertex count is still written when
//! the network has exactly two modes); named relation sections `:r "name"`
//! with an optional second quoted string for the relation label; an optional
//! trailing interval list on a link line for temporal weights. Interval
//! values equal to the weight field are written bare as `s-f`, deviating
//! values as `s-f(v)`, and an empty temporal weight as `[]`.
//!
//! Export renumbers nodes mode-contiguously in mode declaration order (id
//! order within a mode), so vertex ids on file are always `1..n`. Import
//! accepts plain Pajek as the degenerate case: no `% mode` lines means modes
//! come from the second vertex count (`mode1`/`mode2`) or default to a
//! single `nodes` mode, and a bare `*Arcs`/`*Edges` header names its
//! relation `arcs`/`edges`. Relations get their mode pair re-inferred from
//! the link endpoints when that is unambiguous. Node properties are outside
//! the format and do not survive a round trip.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

use crate::network::{Network, NodeId, Weight};
use crate::tq::TemporalQuantity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PajekError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown section {section:?}")]
    UnknownSection { line: usize, section: String },
    #[error("the file has no *Vertices section")]
    MissingVertices,
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            other => out.push(other),
        }
    }
    out.push('"');
    out
}

fn format_weight(weight: &Weight) -> String {
    match weight {
        Weight::Scalar(v) => format!("{v}"),
        Weight::Temporal(tq) => {
            let intervals = tq.intervals();
            let base = intervals.first().map(|iv| iv.value).unwrap_or(1.0);
            let mut out = format!("{base} [");
            for (i, iv) in intervals.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{}-{}", iv.start, iv.end).expect("string write");
                if iv.value != base {
                    write!(out, "({})", iv.value).expect("string write");
                }
            }
            out.push(']');
            out
        }
    }
}

/// Serializes a network; the inverse of [`import_pajek`] up to node ids.
pub fn export_pajek(net: &Network) -> String {
    let mut order: Vec<NodeId> = Vec::new();
    let mut mode_counts: Vec<(String, usize)> = Vec::new();
    for mode in net.modes() {
        let ids = net.nodes_in_mode(mode);
        mode_counts.push((mode.clone(), ids.len()));
        order.extend(ids);
    }
    let file_id: BTreeMap<NodeId, usize> = order
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i + 1))
        .collect();
    let mut out = String::new();
    write!(out, "*Vertices {}", order.len()).expect("string write");
    if mode_counts.len() == 2 {
        write!(out, " {}", mode_counts[0].1).expect("string write");
    }
    out.push('\n');
    for (name, count) in &mode_counts {
        writeln!(out, "% mode {name} {count}").expect("string write");
    }
    for (i, &id) in order.iter().enumerate() {
        let label = net.label_of(id).expect("listed node");
        writeln!(out, "{} {}", i + 1, quote(label)).expect("string write");
    }
    for (r, rel) in net.relations().iter().enumerate() {
        let header = |kind: &str, out: &mut String| {
            write!(out, "*{kind} :{} {}", r + 1, quote(rel.name())).expect("string write");
            if let Some(label) = rel.label() {
                write!(out, " {}", quote(label)).expect("string write");
            }
            out.push('\n');
        };
        let arcs: Vec<_> = rel.links().filter(|l| l.directed).collect();
        let edges: Vec<_> = rel.links().filter(|l| !l.directed).collect();
        if !arcs.is_empty() || edges.is_empty() {
            header("Arcs", &mut out);
            for link in arcs {
                writeln!(
                    out,
                    "{} {} {}",
                    file_id[&link.from],
                    file_id[&link.to],
                    format_weight(&link.weight)
                )
                .expect("string write");
            }
        }
        if !edges.is_empty() {
            header("Edges", &mut out);
            for link in edges {
                writeln!(
                    out,
                    "{} {} {}",
                    file_id[&link.from],
                    file_id[&link.to],
                    format_weight(&link.weight)
                )
                .expect("string write");
            }
        }
    }
    out
}

/// Reads a quoted string off the front of `s`, returning it and the rest.
fn scan_quoted(s: &str) -> Result<(String, &str), String> {
    let rest = s.trim_start();
    let mut chars = rest.char_indices();
    match chars.next() {
        Some((_, '"')) => {}
        _ => return Err(format!("expected a quoted string at {rest:?}")),
    }
    let mut out = String::new();
    while let Some((i, c)) = chars.next() {
        match c {
            '"' => return Ok((out, &rest[i + 1..])),
            '\\' => match chars.next() {
                Some((_, '"')) => out.push('"'),
                Some((_, '\\')) => out.push('\\'),
                Some((_, other)) => return Err(format!("unknown escape \\{other}")),
                None => return Err("unterminated quoted string".to_string()),
            },
            other => out.push(other),
        }
    }
    Err("unterminated quoted string".to_string())
}

/// One `s-f` or `s-f(v)` interval piece; the range separator is the first
/// `-` that follows a digit, so negative bounds parse.
fn parse_interval(piece: &str) -> Result<(i64, i64, Option<f64>), String> {
    let chars: Vec<char> = piece.chars().collect();
    let split = (1..chars.len())
        .find(|&i| chars[i] == '-' && chars[i - 1].is_ascii_digit())
        .ok_or_else(|| format!("interval {piece:?} has no range separator"))?;
    let start: i64 = piece[..split]
        .parse()
        .map_err(|_| format!("malformed interval start in {piece:?}"))?;
    let rest = &piece[split + 1..];
    let (end_text, value) = match rest.find('(') {
        Some(p) => {
            let inner = rest[p..]
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| format!("malformed interval value in {piece:?}"))?;
            let v: f64 = inner
                .parse()
                .map_err(|_| format!("malformed interval value in {piece:?}"))?;
            (&rest[..p], Some(v))
        }
        None => (rest, None),
    };
    let end: i64 = end_text
        .parse()
        .map_err(|_| format!("malformed interval end in {piece:?}"))?;
    Ok((start, end, value))
}

fn parse_link_weight(weight_token: &str, bracket: Option<&str>) -> Result<Weight, String> {
    let w: f64 = weight_token
        .parse()
        .map_err(|_| format!("malformed weight {weight_token:?}"))?;
    let Some(bracket) = bracket else {
        return Ok(Weight::Scalar(w));
    };
    let inner = bracket
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| format!("malformed interval list {bracket:?}"))?;
    if inner.trim().is_empty() {
        return Ok(Weight::Temporal(TemporalQuantity::empty()));
    }
    let mut raw = Vec::new();
    for piece in inner.split(',') {
        let (start, end, value) = parse_interval(piece.trim())?;
        raw.push((start, end, value.unwrap_or(w)));
    }
    let tq = TemporalQuantity::new(raw).map_err(|e| e.to_string())?;
    Ok(Weight::Temporal(tq))
}

struct SectionHeader {
    directed: bool,
    name: String,
    label: Option<String>,
}

fn parse_section_header(line: &str, line_no: usize) -> Result<Option<SectionHeader>, PajekError> {
    let syntax = |message: String| PajekError::Syntax {
        line: line_no,
        message,
    };
    let mut rest = line;
    let keyword: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
    rest = rest[keyword.len()..].trim_start();
    let directed = match keyword.to_ascii_lowercase().as_str() {
        "*arcs" => true,
        "*edges" => false,
        "*vertices" => return Err(syntax("duplicate *Vertices section".to_string())),
        _ => {
            return Err(PajekError::UnknownSection {
                line: line_no,
                section: keyword,
            })
        }
    };
    if let Some(tail) = rest.strip_prefix(':') {
        let index: String = tail.chars().take_while(|c| c.is_ascii_digit()).collect();
        if index.is_empty() {
            return Err(syntax("relation index ':' without digits".to_string()));
        }
        rest = tail[index.len()..].trim_start();
    }
    let (name, label) = if rest.is_empty() {
        (if directed { "arcs" } else { "edges" }.to_string(), None)
    } else {
        let (name, after) = scan_quoted(rest).map_err(&syntax)?;
        let after = after.trim();
        if after.is_empty() {
            (name, None)
        } else {
            let (label, tail) = scan_quoted(after).map_err(&syntax)?;
            if !tail.trim().is_empty() {
                return Err(syntax(format!(
                    "trailing content {:?} after header",
                    tail.trim()
                )));
            }
            (name, Some(label))
        }
    };
    Ok(Some(SectionHeader {
        directed,
        name,
        label,
    }))
}

/// Parses the dialect back into a network.
pub fn import_pajek(src: &str) -> Result<Network, PajekError> {
    let mut n: Option<usize> = None;
    let mut n1: Option<usize> = None;
    let mut mode_decls: Vec<(String, usize)> = Vec::new();
    let mut node_labels: BTreeMap<usize, String> = BTreeMap::new();
    let mut net: Option<Network> = None;
    let mut section: Option<SectionHeader> = None;

    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        let syntax = |message: String| PajekError::Syntax {
            line: line_no,
            message,
        };
        if line.is_empty() {
            continue;
        }
        if let Some(percent) = line.strip_prefix('%') {
            let tokens: Vec<&str> = percent.split_whitespace().collect();
            if let ["mode", name, count] = tokens.as_slice() {
                if net.is_some() {
                    return Err(syntax("% mode line after the vertex list".to_string()));
                }
                let count: usize = count
                    .parse()
                    .map_err(|_| syntax(format!("malformed mode count {count:?}")))?;
                mode_decls.push((name.to_string(), count));
            }
            continue;
        }
        if line.starts_with('*') {
            let keyword: String = line.chars().take_while(|c| !c.is_whitespace()).collect();
            if keyword.eq_ignore_ascii_case("*vertices") {
                if n.is_some() {
                    return Err(syntax("duplicate *Vertices section".to_string()));
                }
                let counts: Vec<&str> = line[keyword.len()..].split_whitespace().collect();
                match counts.as_slice() {
                    [total] => {
                        n = Some(
                            total
                                .parse()
                                .map_err(|_| syntax(format!("malformed vertex count {total:?}")))?,
                        )
                    }
                    [total, first] => {
                        n =
                            Some(total.parse().map_err(|_| {
                                syntax(format!("malformed vertex count {total:?}"))
                            })?);
                        n1 = Some(first.parse().map_err(|_| {
                            syntax(format!("malformed first-mode count {first:?}"))
                        })?);
                    }
                    _ => return Err(syntax("*Vertices needs one or two counts".to_string())),
                }
                continue;
            }
            let total = n.ok_or(PajekError::MissingVertices)?;
            if net.is_none() {
                net = Some(finalize_nodes(
                    total,
                    n1,
                    &mode_decls,
                    &node_labels,
                    line_no,
                )?);
            }
            section = parse_section_header(line, line_no)?;
            if let (Some(net), Some(header)) = (net.as_mut(), section.as_ref()) {
                net.add_relation(&header.name);
                if let Some(label) = &header.label {
                    if net.relation(&header.name).and_then(|r| r.label()).is_none() {
                        net.set_relation_label(&header.name, label.clone());
                    }
                }
            }
            continue;
        }
        match (&mut net, &section) {
            (Some(net), Some(header)) => {
                add_link_line(net, header, line, line_no)?;
            }
            (Some(_), None) => return Err(syntax(format!("content {line:?} outside any section"))),
            (None, _) => {
                let total = n.ok_or(PajekError::MissingVertices)?;
                let (id_text, rest) = line
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(format!("node line {line:?} has no label")))?;
                let id: usize = id_text
                    .parse()
                    .map_err(|_| syntax(format!("malformed node id {id_text:?}")))?;
                if id == 0 || id > total {
                    return Err(syntax(format!("node id {id} is outside 1..={total}")));
                }
                let (label, tail) = scan_quoted(rest).map_err(&syntax)?;
                if !tail.trim().is_empty() {
                    return Err(syntax(format!(
                        "trailing content {:?} on a node line",
                        tail.trim()
                    )));
                }
                if node_labels.insert(id, label).is_some() {
                    return Err(syntax(format!("node id {id} appears twice")));
                }
            }
        }
    }
    let total = n.ok_or(PajekError::MissingVertices)?;
    let mut net = match net {
        Some(net) => net,
        None => finalize_nodes(total, n1, &mode_decls, &node_labels, src.lines().count())?,
    };
    infer_mode_pairs(&mut net);
    Ok(net)
}

/// Turns the collected vertex information into a network with nodes only.
fn finalize_nodes(
    n: usize,
    n1: Option<usize>,
    mode_decls: &[(String, usize)],
    node_labels: &BTreeMap<usize, String>,
    line_no: usize,
) -> Result<Network, PajekError> {
    let syntax = |message: String| PajekError::Syntax {
        line: line_no,
        message,
    };
    let modes: Vec<(String, usize)> = if !mode_decls.is_empty() {
        let sum: usize = mode_decls.iter().map(|(_, c)| c).sum();
        if sum != n {
            return Err(syntax(format!(
                "mode counts sum to {sum}, but there are {n} vertices"
            )));
        }
        mode_decls.to_vec()
    } else if let Some(first) = n1 {
        if first > n {
            return Err(syntax(format!(
                "first-mode count {first} exceeds {n} vertices"
            )));
        }
        vec![
            ("mode1".to_string(), first),
            ("mode2".to_string(), n - first),
        ]
    } else {
        vec![("nodes".to_string(), n)]
    };
    if node_labels.len() != n {
        return Err(syntax(format!(
            "{} node lines for {} vertices",
            node_labels.len(),
            n
        )));
    }
    let mut net = Network::new();
    for (name, _) in &modes {
        net.add_mode(name);
    }
    let mut bucket = modes.iter();
    let mut current = bucket.next();
    let mut used = 0;
    for id in 1..=n {
        while let Some((_, count)) = current {
            if used < *count {
                break;
            }
            used = 0;
            current = bucket.next();
        }
        let (mode, _) = current.expect("mode counts sum to n");
        let label = &node_labels[&id];
        net.add_node_with_id(NodeId(id as u32), mode, label.clone())
            .expect("ids 1..=n are distinct");
        used += 1;
    }
    Ok(net)
}

fn add_link_line(
    net: &mut Network,
    header: &SectionHeader,
    line: &str,
    line_no: usize,
) -> Result<(), PajekError> {
    let syntax = |message: String| PajekError::Syntax {
        line: line_no,
        message,
    };
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() < 3 {
        return Err(syntax(format!(
            "link line {line:?} needs from, to, and weight"
        )));
    }
    let endpoint = |token: &str| -> Result<NodeId, PajekError> {
        let id: usize = token
            .parse()
            .map_err(|_| syntax(format!("malformed node id {token:?}")))?;
        let id = NodeId(id as u32);
        if !net.contains_node(id) {
            return Err(syntax(format!("link references unknown node {token}")));
        }
        Ok(id)
    };
    let from = endpoint(tokens[0])?;
    let to = endpoint(tokens[1])?;
    let bracket_text = if tokens.len() > 3 {
        Some(tokens[3..].concat())
    } else {
        None
    };
    let weight = parse_link_weight(tokens[2], bracket_text.as_deref()).map_err(&syntax)?;
    let result = if header.directed {
        net.add_arc_with(&header.name, from, to, weight)
    } else {
        net.add_edge_with(&header.name, from, to, weight)
    };
    result.map_err(|e| syntax(e.to_string()))?;
    Ok(())
}

/// Declares a mode pair on each relation whose links determine one: arcs fix
/// the orientation when all sources share a mode and all targets share a
/// mode; edge-only relations use the (at most two) modes their ends touch,
/// ordered by mode declaration. Ambiguous relations stay undeclared.
fn infer_mode_pairs(net: &mut Network) {
    let names: Vec<String> = net
        .relations()
        .iter()
        .map(|r| r.name().to_string())
        .collect();
    for name in names {
        let rel = net.relation(&name).expect("listed relation");
        if rel.link_count() == 0 || rel.mode_pair().is_some() {
            continue;
        }
        let mode_of = |id: NodeId| net.mode_of(id).expect("link endpoint").to_string();
        let directed: Vec<_> = rel.links().filter(|l| l.directed).collect();
        let candidate = if !directed.is_empty() {
            let from_modes: BTreeSet<String> = directed.iter().map(|l| mode_of(l.from)).collect();
            let to_modes: BTreeSet<String> = directed.iter().map(|l| mode_of(l.to)).collect();
            match (from_modes.len(), to_modes.len()) {
                (1, 1) => Some((
                    from_modes.into_iter().next().expect("one element"),
                    to_modes.into_iter().next().expect("one element"),
                )),
                _ => None,
            }
        } else {
            let touched: BTreeSet<String> = rel
                .links()
                .flat_map(|l| [mode_of(l.from), mode_of(l.to)])
                .collect();
            let mut ordered: Vec<String> = net
                .modes()
                .iter()
                .filter(|m| touched.contains(*m))
                .cloned()
                .collect();
            match ordered.len() {
                1 => {
                    let m = ordered.remove(0);
                    Some((m.clone(), m))
                }
                2 => {
                    let v = ordered.remove(1);
                    let u = ordered.remove(0);
                    Some((u, v))
                }
                _ => None,
            }
        };
        if let Some((u, v)) = candidate {
            // Mixed arc and edge relations can still fail validation here;
            // such a relation simply stays undeclared.
            let _ = net.declare_relation_modes(&name, &u, &v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::PropValue;

    fn tq(raw: &[(i64, i64, f64)]) -> TemporalQuantity {
        TemporalQuantity::new(raw.iter().copied()).unwrap()
    }

    /// Everything the format promises to preserve, as sorted text lines.
    fn canonical(net: &Network) -> Vec<String> {
        let mut lines = Vec::new();
        lines.push(format!("modes {:?}", net.modes()));
        for id in net.nodes() {
            lines.push(format!(
                "node {} in {}",
                net.label_of(id).unwrap(),
                net.mode_of(id).unwrap()
            ));
        }
        for rel in net.relations() {
            lines.push(format!("relation {} label {:?}", rel.name(), rel.label()));
            for link in rel.links() {
                let (a, b) = (
                    net.label_of(link.from).unwrap(),
                    net.label_of(link.to).unwrap(),
                );
                let (a, b) = if link.directed || a <= b {
                    (a, b)
                } else {
                    (b, a)
                };
                let weight = match &link.weight {
                    Weight::Scalar(v) => format!("{v}"),
                    Weight::Temporal(t) => format!("{t}"),
                };
                let kind = if link.directed { "arc" } else { "edge" };
                lines.push(format!("{kind} {} {a} {b} {weight}", rel.name()));
            }
        }
        lines.sort();
        lines
    }

    fn biblio() -> Network {
        let mut net = Network::new();
        let w1 = net.add_node("works", "w1");
        let w2 = net.add_node("works", "w2");
        let a1 = net.add_node("authors", "a1");
        let a2 = net.add_node("authors", "a2");
        net.add_relation("WA");
        net.declare_relation_modes("WA", "works", "authors")
            .unwrap();
        net.set_relation_label("WA", "authorship");
        net.add_arc("WA", w1, a1).unwrap();
        net.add_arc("WA", w1, a2).unwrap();
        net.add_arc_with("WA", w2, a2, 2.0).unwrap();
        net
    }

    #[test]
    fn export_writes_the_documented_layout() {
        let text = export_pajek(&biblio());
        let expect = "*Vertices 4 2\n\
                      % mode works 2\n\
                      % mode authors 2\n\
                      1 \"w1\"\n\
                      2 \"w2\"\n\
                      3 \"a1\"\n\
                      4 \"a2\"\n\
                      *Arcs :1 \"WA\" \"authorship\"\n\
                      1 3 1\n\
                      1 4 1\n\
                      2 4 2\n";
        assert_eq!(text, expect);
    }

    #[test]
    fn export_renumbers_mode_contiguously() {
        // Nodes added in interleaved mode order must still come out grouped.
        let mut net = Network::new();
        let w1 = net.add_node("works", "w1");
        let a1 = net.add_node("authors", "a1");
        let w2 = net.add_node("works", "w2");
        net.add_relation("WA");
        net.declare_relation_modes("WA", "works", "authors")
            .unwrap();
        net.add_arc("WA", w2, a1).unwrap();
        let _ = w1;
        let text = export_pajek(&net);
        assert!(text.starts_with("*Vertices 3 2\n"), "{text}");
        assert!(text.contains("\n2 \"w2\"\n"), "{text}");
        assert!(text.contains("\n3 \"a1\"\n"), "{text}");
        assert!(text.contains("\n2 3 1\n"), "{text}");
    }

    #[test]
    fn round_trip_preserves_the_promised_content() {
        let net = biblio();
        let back = import_pajek(&export_pajek(&net)).unwrap();
        assert_eq!(canonical(&back), canonical(&net));
        assert_eq!(
            back.relation("WA").unwrap().mode_pair(),
            Some(("works", "authors"))
        );
    }

    #[test]
    fn round_trip_keeps_temporal_weights() {
        let mut net = Network::new();
        let a = net.add_node("actors", "YUG");
        let b = net.add_node("actors", "KSV");
        net.add_relation("224");
        net.set_relation_label("224", "RIOT");
        net.add_arc_with("224", a, b, tq(&[(7031, 7032, 1.0)]))
            .unwrap();
        net.add_arc_with("224", b, a, tq(&[(-5, -3, 2.0), (0, 4, 7.5)]))
            .unwrap();
        net.add_arc_with("224", a, b, TemporalQuantity::empty())
            .unwrap();
        let text = export_pajek(&net);
        assert!(text.contains("1 2 1 [7031-7032]"), "{text}");
        assert!(text.contains("2 1 2 [-5--3,0-4(7.5)]"), "{text}");
        assert!(text.contains("1 2 1 []"), "{text}");
        let back = import_pajek(&text).unwrap();
        assert_eq!(canonical(&back), canonical(&net));
    }

    #[test]
    fn round_trip_keeps_edges_and_empty_relations() {
        let mut net = Network::new();
        let a = net.add_node("persons", "Ana \"the\" \\ one");
        let b = net.add_node("persons", "Bor");
        net.add_edge_with("friend", a, b, 2.5).unwrap();
        net.add_relation("unused");
        let back = import_pajek(&export_pajek(&net)).unwrap();
        assert_eq!(canonical(&back), canonical(&net));
        assert_eq!(back.relation("unused").unwrap().link_count(), 0);
    }

    #[test]
    fn round_trip_keeps_three_mode_networks() {
        let mut net = Network::new();
        let w = net.add_node("works", "w1");
        let a = net.add_node("authors", "a1");
        let k = net.add_node("keywords", "k1");
        net.add_relation("WA");
        net.declare_relation_modes("WA", "works", "authors")
            .unwrap();
        net.add_relation("WK");
        net.declare_relation_modes("WK", "works", "keywords")
            .unwrap();
        net.add_arc("WA", w, a).unwrap();
        net.add_arc("WK", w, k).unwrap();
        let text = export_pajek(&net);
        assert!(text.starts_with("*Vertices 3\n"), "{text}");
        let back = import_pajek(&text).unwrap();
        assert_eq!(canonical(&back), canonical(&net));
        assert_eq!(
            back.relation("WK").unwrap().mode_pair(),
            Some(("works", "keywords"))
        );
    }

    #[test]
    fn properties_do_not_survive_the_round_trip() {
        let mut net = biblio();
        let first = net.nodes().next().unwrap();
        net.set_property("country", first, PropValue::Text("SI".into()))
            .unwrap();
        let back = import_pajek(&export_pajek(&net)).unwrap();
        assert_eq!(back.properties().len(), 0);
    }

    #[test]
    fn plain_pajek_files_import() {
        let src = "*Vertices 3 1\n1 \"w\"\n2 \"a\"\n3 \"b\"\n*Arcs\n1 2 1\n1 3 2\n";
        let net = import_pajek(src).unwrap();
        assert_eq!(net.modes(), &["mode1".to_string(), "mode2".to_string()]);
        let rel = net.relation("arcs").unwrap();
        assert_eq!(rel.link_count(), 2);
        assert_eq!(rel.mode_pair(), Some(("mode1", "mode2")));
        let src = "*Vertices 2\n1 \"a\"\n2 \"b\"\n*Edges\n1 2 1\n";
        let net = import_pajek(src).unwrap();
        assert_eq!(net.modes(), &["nodes".to_string()]);
        assert_eq!(
            net.relation("edges").unwrap().mode_pair(),
            Some(("nodes", "nodes"))
        );
    }

    #[test]
    fn ambiguous_relations_stay_undeclared() {
        let src = "*Vertices 3\n\
                   % mode m1 1\n\
                   % mode m2 1\n\
                   % mode m3 1\n\
                   1 \"a\"\n2 \"b\"\n3 \"c\"\n\
                   *Arcs :1 \"r\"\n1 2 1\n1 3 1\n";
        let net = import_pajek(src).unwrap();
        assert_eq!(net.relation("r").unwrap().mode_pair(), None);
    }

    #[test]
    fn import_errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("1 \"a\"", 1, "no *Vertices"),
            ("*Vertices 2\n1 \"a\"\n1 \"b\"", 3, "twice"),
            ("*Vertices 2\n1 \"a\"\n3 \"b\"", 3, "outside"),
            ("*Vertices 1\n1 \"a\" junk\n", 2, "trailing"),
            ("*Vertices 1\n1 \"a\"\n*Rows\n", 3, "unknown section"),
            (
                "*Vertices 2\n% mode m 1\n1 \"a\"\n2 \"b\"\n*Arcs\n1 2 1\n",
                5,
                "mode counts",
            ),
            ("*Vertices 1\n1 \"a\"\n*Arcs\n1 2 1\n", 4, "unknown node"),
            (
                "*Vertices 1\n1 \"a\"\n*Arcs\n1 1\n",
                4,
                "needs from, to, and weight",
            ),
            ("*Vertices 1\n1 \"a\"\n*Arcs\n1 1 1 [3]\n", 4, "separator"),
            ("*Vertices 1\n1 \"a\"\n*Arcs\n1 1 1 [5-3]\n", 4, "line 4"),
            ("*Vertices 1\n1 \"a\"\n*Vertices 1\n", 3, "duplicate"),
        ];
        for &(src, line, needle) in cases {
            let err = import_pajek(src).unwrap_err();
            let text = err.to_string();
            let got_line = match &err {
                PajekError::Syntax { line, .. } | PajekError::UnknownSection { line, .. } => *line,
                PajekError::MissingVertices => 1,
            };
            assert_eq!(got_line, line, "{src:?} -> {text}");
            assert!(
                text.to_lowercase().contains(&needle.to_lowercase()),
                "{text:?} lacks {needle:?}"
            );
        }
    }
}
