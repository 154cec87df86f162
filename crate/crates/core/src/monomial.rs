//! Dense exponent vectors and the monomial orders used by the engine.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 12]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            degree: 0,
        }
    }

    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn variable(nvars: usize, index: usize, power: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = power;
        m.degree = power;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect::<Exponents>(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect::<Exponents>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i` (mod 64) occurs.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0, |acc, (i, _)| acc | (1u64 << (i % 64)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A multiplicative well-order on monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// First `split` variables compared by `outer`; ties broken on the rest by `inner`.
    Block {
        split: usize,
        outer: Box<MonomialOrder>,
        inner: Box<MonomialOrder>,
    },
    /// Non-negative weight vector first, then `tie_break`.
    Weighted {
        weights: Vec<u32>,
        tie_break: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Elimination order for the first `split` variables, grevlex inside each block.
    pub fn elimination(split: usize, inner: MonomialOrder) -> Self {
        MonomialOrder::Block {
            split,
            outer: Box::new(MonomialOrder::Grevlex),
            inner: Box::new(inner),
        }
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::Structural(format!(
                "monomials of lengths {} and {}",
                a.nvars(),
                b.nvars()
            )));
        }
        self.validate(a.nvars())?;
        Ok(self.compare(a, b))
    }

    /// Checks that this order makes sense on `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::Lex | MonomialOrder::Grevlex => Ok(()),
            MonomialOrder::Block { split, outer, inner } => {
                if *split > nvars {
                    return Err(Error::Structural(format!(
                        "block split {split} exceeds {nvars} variables"
                    )));
                }
                outer.validate(*split)?;
                inner.validate(nvars - split)
            }
            MonomialOrder::Weighted { weights, tie_break } => {
                if weights.len() != nvars {
                    return Err(Error::Structural(format!(
                        "{} weights for {nvars} variables",
                        weights.len()
                    )));
                }
                tie_break.validate(nvars)
            }
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if let (MonomialOrder::Grevlex, true) = (self, a.degree != b.degree) {
            return a.degree.cmp(&b.degree);
        }
        self.compare_slices(&a.exps, &b.exps)
    }

    fn compare_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            // smaller exponent in the last differing variable wins
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Block { split, outer, inner } => outer
                .compare_slices(&a[..*split], &b[..*split])
                .then_with(|| inner.compare_slices(&a[*split..], &b[*split..])),
            MonomialOrder::Weighted { weights, tie_break } => {
                let wa: u64 = a.iter().zip(weights).map(|(e, w)| *e as u64 * *w as u64).sum();
                let wb: u64 = b.iter().zip(weights).map(|(e, w)| *e as u64 * *w as u64).sum();
                wa.cmp(&wb).then_with(|| tie_break.compare_slices(a, b))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Block { split, outer, inner } => {
                write!(f, "block({split}, {outer}, {inner})")
            }
            MonomialOrder::Weighted { weights, tie_break } => {
                write!(f, "weighted({weights:?}, {tie_break})")
            }
        }
    }
}
