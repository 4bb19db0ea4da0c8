//! Import of whitespace-separated event streams.
//!
//! Each line is one dated event between two actors:
//!
//! ```text
//! YYMMDD SOURCE TARGET CODE (LABEL WORDS) free text tail
//! ```
//!
//! The label in parentheses and the tail are optional. Two-digit years from
//! 50 up mean 19xx, below 50 mean 20xx. Events become arcs of a single-mode
//! network: one node per actor, one relation per event code (codes are kept
//! as text, leading zeros included), one arc per event whose weight is the
//! temporal quantity `[(day, day+1, 1)]` with days counted from 1970-01-01.

use chrono::NaiveDate;
use std::collections::HashMap;
use thiserror::Error;

use crate::network::{Network, NodeId};
use crate::tq::TemporalQuantity;

/// Mode holding the event actors.
pub const ACTOR_MODE: &str = "actors";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct KedsError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KedsEvent {
    pub date: NaiveDate,
    pub source: String,
    pub target: String,
    pub code: String,
    pub label: Option<String>,
    pub tail: Option<String>,
}

/// Days between 1970-01-01 and `date`, negative before the epoch.
pub fn day_number(date: NaiveDate) -> i64 {
    let epoch = NaiveDate::from_ymd_opt(1970, 1, 1).expect("fixed valid date");
    (date - epoch).num_days()
}

fn parse_date(token: &str, line: usize) -> Result<NaiveDate, KedsError> {
    let err = |message: String| KedsError { line, message };
    if token.len() != 6 || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("malformed date {token:?}, expected YYMMDD")));
    }
    let yy: i32 = token[0..2].parse().expect("digits");
    let mm: u32 = token[2..4].parse().expect("digits");
    let dd: u32 = token[4..6].parse().expect("digits");
    let year = if yy >= 50 { 1900 + yy } else { 2000 + yy };
    NaiveDate::from_ymd_opt(year, mm, dd)
        .ok_or_else(|| err(format!("date {token:?} names no calendar day")))
}

/// Splits the optional parenthesised label from the tail tokens.
fn parse_label<'a, 'b>(
    fields: &'b [&'a str],
    line: usize,
) -> Result<(Option<String>, &'b [&'a str]), KedsError> {
    match fields.first() {
        Some(first) if first.starts_with('(') => {
            let close = fields
                .iter()
                .position(|f| f.ends_with(')'))
                .ok_or_else(|| KedsError {
                    line,
                    message: "label '(' is never closed".into(),
                })?;
            let joined = fields[..=close].join(" ");
            let label = joined[1..joined.len() - 1].trim().to_string();
            Ok((Some(label), &fields[close + 1..]))
        }
        _ => Ok((None, fields)),
    }
}

/// Parses every non-blank line into an event, in order.
pub fn parse_events(src: &str) -> Result<Vec<KedsEvent>, KedsError> {
    let mut events = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(KedsError {
                line,
                message: format!(
                    "{} fields, expected at least date, source, target, code",
                    fields.len()
                ),
            });
        }
        let date = parse_date(fields[0], line)?;
        let (label, rest) = parse_label(&fields[4..], line)?;
        let tail = if rest.is_empty() {
            None
        } else {
            Some(rest.join(" "))
        };
        events.push(KedsEvent {
            date,
            source: fields[1].to_string(),
            target: fields[2].to_string(),
            code: fields[3].to_string(),
            label,
            tail,
        });
    }
    Ok(events)
}

/// Builds the event network: actors in one mode, one relation per code with
/// the code's first label as relation label, one arc per event weighted by
/// the one-day temporal quantity of its date.
pub fn events_to_network(events: &[KedsEvent]) -> Network {
    let mut net = Network::new();
    net.add_mode(ACTOR_MODE);
    let mut actor_ids: HashMap<String, NodeId> = HashMap::new();
    let mut actor = |net: &mut Network, name: &str| -> NodeId {
        match actor_ids.get(name) {
            Some(&id) => id,
            None => {
                let id = net.add_node(ACTOR_MODE, name);
                actor_ids.insert(name.to_string(), id);
                id
            }
        }
    };
    for event in events {
        let from = actor(&mut net, &event.source);
        let to = actor(&mut net, &event.target);
        if net.relation(&event.code).is_none() {
            net.declare_relation_modes(&event.code, ACTOR_MODE, ACTOR_MODE)
                .expect("the actor mode exists");
            if let Some(label) = &event.label {
                net.set_relation_label(&event.code, label.clone());
            }
        }
        let day = day_number(event.date);
        let weight = TemporalQuantity::constant(day, day + 1, 1.0)
            .expect("a one-day interval is never empty");
        net.add_arc_with(&event.code, from, to, weight)
            .expect("both actors exist");
    }
    net
}

/// One-call import: [`parse_events`] followed by [`events_to_network`].
pub fn parse_keds(src: &str) -> Result<Network, KedsError> {
    Ok(events_to_network(&parse_events(src)?))
}
