//! Temporal quantities: partial functions of discrete time.
//!
//! A [`TemporalQuantity`] maps integer time points to values on a finite set
//! of half-open intervals `[start, end)` and is undefined everywhere else.
//! Undefined is represented structurally, by the absence of a covering
//! interval; no sentinel value is ever stored. The normal form is sorted,
//! pairwise disjoint, and has adjacent equal-valued intervals merged.
//!
//! Sum and product are pointwise under a [`Semiring`]: the sum is defined
//! wherever either operand is (an undefined operand acts neutrally), the
//! product only where both are. With these rules temporal quantities form a
//! semiring themselves; the additive identity is the everywhere-undefined
//! quantity and the multiplicative identity is a quantity that is one over an
//! explicitly chosen horizon.
//!
//! The text form is `[(start,end,value);...]`, whitespace-insensitive.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::semiring::Semiring;

/// One constant-valued piece: `value` on `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TqInterval {
    pub start: i64,
    pub end: i64,
    pub value: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TqError {
    #[error("interval ({start},{end}) is empty: start must be less than end")]
    EmptyInterval { start: i64, end: i64 },
    #[error(
        "intervals ({},{},{}) and ({},{},{}) overlap",
        .first.start, .first.end, .first.value, .second.start, .second.end, .second.value
    )]
    Overlap {
        first: TqInterval,
        second: TqInterval,
    },
    #[error("malformed temporal quantity text: {0}")]
    Parse(String),
}

/// A partial function of time in interval normal form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TemporalQuantity {
    intervals: Vec<TqInterval>,
}

impl TemporalQuantity {
    /// Normalizes a raw interval list: sorts it, rejects empty or overlapping
    /// intervals, and merges adjacent intervals that carry the same value.
    pub fn new(raw: impl IntoIterator<Item = (i64, i64, f64)>) -> Result<Self, TqError> {
        let mut items: Vec<TqInterval> = raw
            .into_iter()
            .map(|(start, end, value)| TqInterval { start, end, value })
            .collect();
        for iv in &items {
            if iv.start >= iv.end {
                return Err(TqError::EmptyInterval {
                    start: iv.start,
                    end: iv.end,
                });
            }
        }
        items.sort_by_key(|iv| (iv.start, iv.end));
        for w in items.windows(2) {
            if w[1].start < w[0].end {
                return Err(TqError::Overlap {
                    first: w[0],
                    second: w[1],
                });
            }
        }
        let mut intervals: Vec<TqInterval> = Vec::with_capacity(items.len());
        for iv in items {
            match intervals.last_mut() {
                Some(last) if last.end == iv.start && last.value == iv.value => {
                    last.end = iv.end;
                }
                _ => intervals.push(iv),
            }
        }
        Ok(TemporalQuantity { intervals })
    }

    /// The everywhere-undefined quantity, the additive identity.
    pub fn empty() -> Self {
        TemporalQuantity {
            intervals: Vec::new(),
        }
    }

    /// Constant `value` on `[start, end)`.
    pub fn constant(start: i64, end: i64, value: f64) -> Result<Self, TqError> {
        TemporalQuantity::new([(start, end, value)])
    }

    /// The multiplicative identity over an explicit horizon: the semiring one
    /// on `[h_min, h_max)`, undefined outside.
    pub fn one(sr: &Semiring, h_min: i64, h_max: i64) -> Result<Self, TqError> {
        TemporalQuantity::constant(h_min, h_max, sr.one())
    }

    pub fn intervals(&self) -> &[TqInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn interval_count(&self) -> usize {
        self.intervals.len()
    }

    /// The value at `t`, or `None` where the quantity is undefined.
    pub fn value_at(&self, t: i64) -> Option<f64> {
        let idx = self.intervals.partition_point(|iv| iv.end <= t);
        match self.intervals.get(idx) {
            Some(iv) if iv.start <= t => Some(iv.value),
            _ => None,
        }
    }

    /// Smallest covered time point, if any.
    pub fn first_start(&self) -> Option<i64> {
        self.intervals.first().map(|iv| iv.start)
    }

    /// End of the last interval, if any.
    pub fn last_end(&self) -> Option<i64> {
        self.intervals.last().map(|iv| iv.end)
    }

    /// Walks the merged boundary grid of both operands and emits one interval
    /// per constant segment, re-merging equal-valued neighbours.
    fn combine(&self, other: &Self, keep_single: bool, op: impl Fn(f64, f64) -> f64) -> Self {
        let mut bounds: Vec<i64> = self
            .intervals
            .iter()
            .chain(other.intervals.iter())
            .flat_map(|iv| [iv.start, iv.end])
            .collect();
        bounds.sort_unstable();
        bounds.dedup();
        let mut out: Vec<TqInterval> = Vec::new();
        for w in bounds.windows(2) {
            let (start, end) = (w[0], w[1]);
            let value = match (self.value_at(start), other.value_at(start)) {
                (Some(a), Some(b)) => Some(op(a, b)),
                (Some(a), None) if keep_single => Some(a),
                (None, Some(b)) if keep_single => Some(b),
                _ => None,
            };
            if let Some(value) = value {
                match out.last_mut() {
                    Some(last) if last.end == start && last.value == value => last.end = end,
                    _ => out.push(TqInterval { start, end, value }),
                }
            }
        }
        TemporalQuantity { intervals: out }
    }

    /// Pointwise sum: defined wherever either operand is; where only one is
    /// defined its value passes through unchanged.
    pub fn sum(&self, other: &Self, sr: &Semiring) -> Self {
        self.combine(other, true, |a, b| sr.add(a, b))
    }

    /// Pointwise product: defined only where both operands are.
    pub fn product(&self, other: &Self, sr: &Semiring) -> Self {
        self.combine(other, false, |a, b| sr.mul(a, b))
    }
}

impl fmt::Display for TemporalQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "({},{},{})", iv.start, iv.end, iv.value)?;
        }
        write!(f, "]")
    }
}

impl FromStr for TemporalQuantity {
    type Err = TqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| TqError::Parse("expected text enclosed in [ ]".into()))?;
        if body.is_empty() {
            return Ok(TemporalQuantity::empty());
        }
        let mut raw = Vec::new();
        for piece in body.split(';') {
            let inner = piece
                .strip_prefix('(')
                .and_then(|rest| rest.strip_suffix(')'))
                .ok_or_else(|| {
                    TqError::Parse(format!("expected (start,end,value), got {piece:?}"))
                })?;
            let fields: Vec<&str> = inner.split(',').collect();
            if fields.len() != 3 {
                return Err(TqError::Parse(format!(
                    "expected three fields in {piece:?}"
                )));
            }
            let start: i64 = fields[0]
                .parse()
                .map_err(|_| TqError::Parse(format!("bad start in {piece:?}")))?;
            let end: i64 = fields[1]
                .parse()
                .map_err(|_| TqError::Parse(format!("bad end in {piece:?}")))?;
            let value: f64 = fields[2]
                .parse()
                .map_err(|_| TqError::Parse(format!("bad value in {piece:?}")))?;
            raw.push((start, end, value));
        }
        TemporalQuantity::new(raw)
    }
}
