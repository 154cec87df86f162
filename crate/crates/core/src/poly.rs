//! Polynomial rings and sparse, normalized polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Exponents, Monomial, MonomialOrder};
use crate::scalar::{Field, Scalar};

/// Ambient polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: Field, order: MonomialOrder) -> Result<Arc<Self>> {
        order.validate(vars.len())?;
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Structural(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    /// Grevlex ring over the given field.
    pub fn with_vars<S: AsRef<str>>(vars: &[S], field: Field) -> Arc<Self> {
        let vars = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Self::new(vars, field, MonomialOrder::Grevlex).expect("grevlex ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(self.vars.clone(), self.field, order)
    }
}

pub fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub mono: Monomial,
}

/// Terms are kept strictly descending in the ring's order with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        Self::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::term(ring, ring.field().one(), Monomial::variable(ring.nvars(), index, 1))
    }

    pub fn term(ring: &Arc<PolyRing>, coeff: Scalar, mono: Monomial) -> Self {
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Sorts, merges equal monomials and drops zero coefficients.
    pub fn from_terms(ring: &Arc<PolyRing>, mut raw: Vec<Term>) -> Self {
        let order = ring.order();
        raw.sort_by(|a, b| order.compare(&b.mono, &a.mono));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = last.coeff.add(&t.coeff);
                    if last.coeff.is_zero() {
                        terms.pop();
                    }
                }
                _ if t.coeff.is_zero() => {}
                _ => terms.push(t),
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees the terms are already normalized for `ring`.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Smallest total degree among the terms.
    pub fn order_of_vanishing(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.order_of_vanishing()
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Structural("polynomials from different rings".into()))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, None, None)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let minus_one = self.ring.field().one().neg();
        self.add_scaled(other, Some(&minus_one), None)
    }

    /// `self + c * m * other`, merging two sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, c: Option<&Scalar>, m: Option<&Monomial>) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let order = self.ring.order();
        let scaled = |t: &Term| Term {
            coeff: c.map_or_else(|| t.coeff.clone(), |c| c.mul(&t.coeff)),
            mono: m.map_or_else(|| t.mono.clone(), |m| m.mul(&t.mono)),
        };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(scaled).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.compare(&x.mono, &y.mono),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let t = b.next().unwrap();
                    if !t.coeff.is_zero() {
                        out.push(t)
                    }
                }
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let s = x.coeff.add(&y.coeff);
                    if !s.is_zero() {
                        out.push(Term {
                            coeff: s,
                            mono: x.mono.clone(),
                        });
                    }
                }
            }
        }
        Polynomial::from_sorted(&self.ring, out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.neg(),
                    mono: t.mono.clone(),
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.mul(c),
                    mono: t.mono.clone(),
                })
                .collect(),
        )
    }

    /// Multiplication by `c * m`; order is preserved since monomial orders are multiplicative.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.mul(c),
                    mono: t.mono.mul(m),
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &other.ring));
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return other.mul_term(&t.coeff, &t.mono);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                raw.push(Term {
                    coeff: a.coeff.mul(&b.coeff),
                    mono: a.mono.mul(&b.mono),
                });
            }
        }
        Polynomial::from_terms(&self.ring, raw)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// Over Q: integer coefficients with gcd 1 and positive leading coefficient.
    /// Over F_p: monic.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        match self.ring.field() {
            Field::Prime(_) => self.make_monic(),
            Field::Rational => {
                let mut den = BigInt::one();
                let mut num = BigInt::zero();
                for t in &self.terms {
                    let Scalar::Rational(q) = &t.coeff else { unreachable!() };
                    den = den.lcm(q.denom());
                    num = num.gcd(q.numer());
                }
                if self.terms[0].coeff.is_negative() {
                    num = -num;
                }
                let factor = Scalar::Rational(BigRational::new(den, num));
                if factor.is_one() {
                    self.clone()
                } else {
                    self.scale(&factor)
                }
            }
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let lt = divisor.leading_term()?;
        let lc_inv = lt.coeff.inv();
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some(t) = rest.leading_term() {
            let m = lt.mono.quotient_of(&t.mono)?;
            let c = t.coeff.mul(&lc_inv);
            rest = rest.add_scaled(divisor, Some(&c.neg()), Some(&m));
            quotient.push(Term { coeff: c, mono: m });
        }
        Some(Polynomial::from_sorted(&self.ring, quotient))
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let field = self.ring.field();
        let raw = self
            .terms
            .iter()
            .filter(|t| t.mono.exponents()[var] > 0)
            .map(|t| {
                let e = t.mono.exponents()[var];
                let mut exps = Exponents::from_slice(t.mono.exponents());
                exps[var] -= 1;
                Term {
                    coeff: t.coeff.mul(&field.from_i64(e as i64)),
                    mono: Monomial::new(exps),
                }
            })
            .collect();
        Polynomial::from_terms(&self.ring, raw)
    }

    /// Renames variables into `target`: variable `i` becomes `var_map[i]`.
    pub fn embed(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Polynomial {
        debug_assert_eq!(var_map.len(), self.ring.nvars());
        let n = target.nvars();
        let raw = self
            .terms
            .iter()
            .map(|t| {
                let mut exps: Exponents = smallvec::smallvec![0; n];
                for (i, e) in t.mono.exponents().iter().enumerate() {
                    exps[var_map[i]] += e;
                }
                Term {
                    coeff: t.coeff.clone(),
                    mono: Monomial::new(exps),
                }
            })
            .collect();
        Polynomial::from_terms(target, raw)
    }

    /// Ring homomorphism `x_i -> images[i]` into the ring of the images.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let target = images[0].ring().clone();
        let mut acc = Polynomial::zero(&target);
        for t in &self.terms {
            let mut p = Polynomial::constant(&target, t.coeff.clone());
            for (i, e) in t.mono.exponents().iter().enumerate() {
                if *e > 0 {
                    p = p.mul(&images[i].pow(*e));
                }
            }
            acc = acc.add(&p);
        }
        acc
    }

    /// Same terms, re-sorted for a ring with identical variables but another order.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Polynomial {
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Homogenizes with the extra variable `h` placed at index `h_index` of `target`.
    pub fn homogenize(&self, target: &Arc<PolyRing>, var_map: &[usize], h_index: usize) -> Polynomial {
        let Some(deg) = self.degree() else {
            return Polynomial::zero(target);
        };
        let n = target.nvars();
        let raw = self
            .terms
            .iter()
            .map(|t| {
                let mut exps: Exponents = smallvec::smallvec![0; n];
                for (i, e) in t.mono.exponents().iter().enumerate() {
                    exps[var_map[i]] += e;
                }
                exps[h_index] += deg - t.mono.degree();
                Term {
                    coeff: t.coeff.clone(),
                    mono: Monomial::new(exps),
                }
            })
            .collect();
        Polynomial::from_terms(target, raw)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_polynomial(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
