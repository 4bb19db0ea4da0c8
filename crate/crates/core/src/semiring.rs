//! Value algebras for combining link weights.
//!
//! A [`Semiring`] bundles the binary operation used when combining parallel
//! links (addition), the one used when composing sequential links
//! (multiplication), their identity elements, and a value-domain descriptor.
//! Values are carried as `f64` throughout so that one network can be
//! evaluated under different algebras; the domain descriptor says which
//! floats are meaningful for a given instance.
//!
//! Three instances are shipped: real arithmetic, boolean or/and over
//! `{0, 1}`, and counting over the non-negative integers. Constructing a
//! custom instance with broken laws is permitted; the laws are checked by the
//! test suite for the shipped instances, not at construction time.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Value domains accepted by the shipped semirings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Any finite float.
    Real,
    /// Exactly `0.0` or `1.0`.
    Bool,
    /// Non-negative integers (stored as integral floats).
    Count,
}

impl Domain {
    pub fn contains(self, v: f64) -> bool {
        match self {
            Domain::Real => v.is_finite(),
            Domain::Bool => v == 0.0 || v == 1.0,
            Domain::Count => v.is_finite() && v >= 0.0 && v.fract() == 0.0,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Real => write!(f, "real"),
            Domain::Bool => write!(f, "bool"),
            Domain::Count => write!(f, "count"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SemiringError {
    #[error("value {value} is outside the {domain} domain")]
    InvalidValue { value: f64, domain: Domain },
}

/// An addition/multiplication pair with identities and a value domain.
#[derive(Clone)]
pub struct Semiring {
    name: String,
    domain: Domain,
    add: fn(f64, f64) -> f64,
    mul: fn(f64, f64) -> f64,
    zero: f64,
    one: f64,
}

impl fmt::Debug for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semiring")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish()
    }
}

impl Semiring {
    /// Ordinary arithmetic over finite floats.
    pub fn real() -> Self {
        Semiring {
            name: "real".into(),
            domain: Domain::Real,
            add: |a, b| a + b,
            mul: |a, b| a * b,
            zero: 0.0,
            one: 1.0,
        }
    }

    /// Boolean or/and over `{0, 1}`.
    pub fn boolean() -> Self {
        Semiring {
            name: "bool".into(),
            domain: Domain::Bool,
            add: f64::max,
            mul: f64::min,
            zero: 0.0,
            one: 1.0,
        }
    }

    /// Non-negative integer counting with plus/times.
    pub fn counting() -> Self {
        Semiring {
            name: "count".into(),
            domain: Domain::Count,
            add: |a, b| a + b,
            mul: |a, b| a * b,
            zero: 0.0,
            one: 1.0,
        }
    }

    /// A caller-supplied instance. No laws are verified here.
    pub fn custom(
        name: impl Into<String>,
        domain: Domain,
        add: fn(f64, f64) -> f64,
        mul: fn(f64, f64) -> f64,
        zero: f64,
        one: f64,
    ) -> Self {
        Semiring {
            name: name.into(),
            domain,
            add,
            mul,
            zero,
            one,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn zero(&self) -> f64 {
        self.zero
    }

    pub fn one(&self) -> f64 {
        self.one
    }

    pub fn is_zero(&self, v: f64) -> bool {
        v == self.zero
    }

    /// Unchecked addition; used in inner loops where the operands are known
    /// to be valid.
    pub fn add(&self, a: f64, b: f64) -> f64 {
        (self.add)(a, b)
    }

    /// Unchecked multiplication.
    pub fn mul(&self, a: f64, b: f64) -> f64 {
        (self.mul)(a, b)
    }

    pub fn check_value(&self, v: f64) -> Result<(), SemiringError> {
        if self.domain.contains(v) {
            Ok(())
        } else {
            Err(SemiringError::InvalidValue {
                value: v,
                domain: self.domain,
            })
        }
    }

    /// Domain-checked addition, the combination rule for parallel links.
    pub fn combine_parallel(&self, a: f64, b: f64) -> Result<f64, SemiringError> {
        self.check_value(a)?;
        self.check_value(b)?;
        Ok(self.add(a, b))
    }

    /// Domain-checked multiplication, the combination rule for sequential
    /// links.
    pub fn combine_sequential(&self, a: f64, b: f64) -> Result<f64, SemiringError> {
        self.check_value(a)?;
        self.check_value(b)?;
        Ok(self.mul(a, b))
    }
}

impl FromStr for Semiring {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(Semiring::real()),
            "bool" => Ok(Semiring::boolean()),
            "count" => Ok(Semiring::counting()),
            other => Err(format!(
                "unknown semiring {other:?} (expected real, bool, or count)"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        let scale = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= tol * scale
    }

    fn check_laws(sr: &Semiring, samples: &[f64], tol: f64) {
        let eq = |a: f64, b: f64| {
            if tol == 0.0 {
                a == b
            } else {
                rel_eq(a, b, tol)
            }
        };
        for &a in samples {
            assert!(
                eq(sr.add(a, sr.zero()), a),
                "{}: additive identity",
                sr.name()
            );
            assert!(
                eq(sr.mul(a, sr.one()), a),
                "{}: multiplicative identity",
                sr.name()
            );
            assert!(
                eq(sr.mul(sr.one(), a), a),
                "{}: multiplicative identity",
                sr.name()
            );
            assert!(
                eq(sr.mul(a, sr.zero()), sr.zero()),
                "{}: annihilation",
                sr.name()
            );
            assert!(
                eq(sr.mul(sr.zero(), a), sr.zero()),
                "{}: annihilation",
                sr.name()
            );
            for &b in samples {
                assert!(
                    eq(sr.add(a, b), sr.add(b, a)),
                    "{}: add commutes",
                    sr.name()
                );
                for &c in samples {
                    assert!(
                        eq(sr.add(sr.add(a, b), c), sr.add(a, sr.add(b, c))),
                        "{}: add associates",
                        sr.name()
                    );
                    assert!(
                        eq(sr.mul(sr.mul(a, b), c), sr.mul(a, sr.mul(b, c))),
                        "{}: mul associates",
                        sr.name()
                    );
                    assert!(
                        eq(sr.mul(a, sr.add(b, c)), sr.add(sr.mul(a, b), sr.mul(a, c))),
                        "{}: left distributivity",
                        sr.name()
                    );
                    assert!(
                        eq(sr.mul(sr.add(a, b), c), sr.add(sr.mul(a, c), sr.mul(b, c))),
                        "{}: right distributivity",
                        sr.name()
                    );
                }
            }
        }
    }

    #[test]
    fn real_laws_on_sampled_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples: Vec<f64> = (0..12).map(|_| rng.gen_range(-10.0..10.0)).collect();
        check_laws(&Semiring::real(), &samples, 1e-12);
    }

    #[test]
    fn boolean_laws_are_exact() {
        check_laws(&Semiring::boolean(), &[0.0, 1.0], 0.0);
    }

    #[test]
    fn counting_laws_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let samples: Vec<f64> = (0..12).map(|_| rng.gen_range(0..20) as f64).collect();
        check_laws(&Semiring::counting(), &samples, 0.0);
    }

    #[test]
    fn combine_parallel_adds() {
        assert_eq!(Semiring::real().combine_parallel(2.0, 3.0).unwrap(), 5.0);
        assert_eq!(Semiring::boolean().combine_parallel(0.0, 1.0).unwrap(), 1.0);
        assert_eq!(
            Semiring::counting().combine_parallel(4.0, 0.0).unwrap(),
            4.0
        );
    }

    #[test]
    fn combine_sequential_multiplies() {
        assert_eq!(Semiring::real().combine_sequential(2.0, 4.0).unwrap(), 8.0);
        assert_eq!(
            Semiring::boolean().combine_sequential(1.0, 0.0).unwrap(),
            0.0
        );
        let sr = Semiring::real();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let x: f64 = rng.gen_range(-100.0..100.0);
            assert_eq!(sr.combine_sequential(x, 1.0).unwrap(), x);
        }
    }

    #[test]
    fn domain_violations_are_reported() {
        let err = Semiring::boolean().combine_parallel(0.5, 1.0).unwrap_err();
        assert_eq!(
            err,
            SemiringError::InvalidValue {
                value: 0.5,
                domain: Domain::Bool
            }
        );
        assert!(Semiring::counting().combine_sequential(-1.0, 2.0).is_err());
        assert!(Semiring::counting().combine_parallel(1.5, 2.0).is_err());
        assert!(Semiring::real().combine_parallel(f64::NAN, 1.0).is_err());
        assert!(Semiring::real()
            .combine_parallel(f64::INFINITY, 1.0)
            .is_err());
    }

    #[test]
    fn selector_names_parse() {
        assert_eq!("real".parse::<Semiring>().unwrap().name(), "real");
        assert_eq!("bool".parse::<Semiring>().unwrap().name(), "bool");
        assert_eq!("count".parse::<Semiring>().unwrap().name(), "count");
        assert!("tropical".parse::<Semiring>().is_err());
    }
}
