//! Affine rings `k[x]/Q`, standing in for their localizations at the ideal of all variables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, PolyRing, Polynomial};
use crate::scalar::Field;
use crate::text::parse_polynomial;

pub struct RingPresentation {
    ring: Arc<PolyRing>,
    quotient: GroebnerBasis,
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (same_ring(&self.ring, &other.ring) && self.quotient == other.quotient)
    }
}

impl Eq for RingPresentation {}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ring.field(), self.ring.vars().join(","))?;
        if !self.quotient.is_empty() {
            write!(f, "/({})", self.quotient.to_strings().join(", "))?;
        }
        Ok(())
    }
}

impl RingPresentation {
    pub fn new(ring: Arc<PolyRing>, quotient: Vec<Polynomial>) -> Result<Arc<Self>> {
        for q in &quotient {
            if !same_ring(q.ring(), &ring) {
                return Err(Error::Structural("quotient generator from another ring".into()));
            }
        }
        let quotient = buchberger(&ring, &quotient);
        if quotient.is_unit() {
            return Err(Error::EmptyRing);
        }
        Ok(Arc::new(RingPresentation { ring, quotient }))
    }

    pub fn polynomial_ring(ring: Arc<PolyRing>) -> Arc<Self> {
        let quotient = buchberger(&ring, &[]);
        Arc::new(RingPresentation { ring, quotient })
    }

    /// Convenience constructor: grevlex ring on `vars` modulo the parsed relations.
    pub fn parse<S: AsRef<str>>(vars: &[S], field: Field, relations: &[&str]) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let ring = PolyRing::new(vars, field, MonomialOrder::Grevlex)?;
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(&ring, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, rels)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    /// Reduced Gröbner basis of the defining ideal `Q`.
    pub fn quotient(&self) -> &GroebnerBasis {
        &self.quotient
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.quotient.is_empty()
    }

    /// Normal form modulo `Q`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.quotient.normal_form(f)
    }

    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(&self.ring, text)
    }

    /// Reduced Gröbner basis of `(gens) + Q`.
    pub fn groebner(&self, gens: &[Polynomial]) -> GroebnerBasis {
        let mut all: Vec<Polynomial> = gens.to_vec();
        all.extend(self.quotient.polys().iter().cloned());
        buchberger(&self.ring, &all)
    }

    pub fn ideal(self: &Arc<Self>, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ideal::new(self, gens)
    }

    pub fn parse_ideal(self: &Arc<Self>, gens: &[&str]) -> Result<Ideal> {
        let gens = gens.iter().map(|g| self.poly(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(self, gens)
    }

    /// The ideal `m` generated by all variables.
    pub fn variable_ideal(self: &Arc<Self>) -> Ideal {
        let gens = (0..self.nvars()).map(|i| Polynomial::var(&self.ring, i)).collect();
        Ideal::from_trusted(self, gens)
    }

    pub fn zero_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::from_trusted(self, Vec::new())
    }

    pub fn unit_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::from_trusted(self, vec![Polynomial::one(&self.ring)])
    }

    /// Same variables and relations over another field.
    pub fn with_field(&self, field: Field) -> Result<Arc<Self>> {
        let ring = PolyRing::new(self.ring.vars().to_vec(), field, self.ring.order().clone())?;
        let rels = self
            .quotient
            .polys()
            .iter()
            .map(|q| parse_polynomial(&ring, &q.to_string()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, rels)
    }
}
