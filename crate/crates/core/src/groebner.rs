//! Buchberger's algorithm with the Gebauer–Möller criteria, normal forms and
//! reduced Gröbner bases.

use std::sync::Arc;

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial, Term};

/// A reduced Gröbner basis: monic, interreduced, sorted ascending by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.polys)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Canonical text form of every element.
    pub fn to_strings(&self) -> Vec<String> {
        self.polys.iter().map(|p| p.to_string()).collect()
    }
}

struct Divisor<'a> {
    poly: &'a Polynomial,
    lead: &'a Term,
    mask: u64,
}

fn divisors<'a>(basis: impl IntoIterator<Item = &'a Polynomial>) -> Vec<Divisor<'a>> {
    basis
        .into_iter()
        .filter_map(|p| {
            p.leading_term().map(|lead| Divisor {
                poly: p,
                lead,
                mask: lead.mono.support_mask(),
            })
        })
        .collect()
}

fn find_divisor<'a, 'b>(divs: &'b [Divisor<'a>], m: &Monomial) -> Option<&'b Divisor<'a>> {
    let mask = m.support_mask();
    divs.iter()
        .find(|d| d.mask & !mask == 0 && d.lead.mono.divides(m))
}

/// Full reduction of `f` modulo `basis`: always reduces the highest reducible
/// term, using the first basis element whose leading monomial divides it.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    reduce_with(f, &divisors(basis))
}

fn reduce_with(f: &Polynomial, divs: &[Divisor<'_>]) -> Polynomial {
    let ring = f.ring().clone();
    let mut remainder: Vec<Term> = Vec::new();
    let mut p = f.clone();
    loop {
        let Some(lt) = p.leading_term() else { break };
        match find_divisor(divs, &lt.mono) {
            Some(d) => {
                let m = d.lead.mono.quotient_of(&lt.mono).unwrap();
                let c = lt.coeff.div(&d.lead.coeff).neg();
                p = p.add_scaled(d.poly, Some(&c), Some(&m));
            }
            None => {
                let mut terms = p.into_terms();
                remainder.push(terms.remove(0));
                p = Polynomial::from_sorted(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted(&ring, remainder)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_basis(&self) -> Vec<&Polynomial> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Gebauer–Möller update with the new element `h`.
    fn update(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let lt_h = self.lm(hi).clone();

        let mut candidates: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: self.lm(g).lcm(&lt_h),
            })
            .collect();

        // chain criterion among new pairs; coprime pairs are kept here and dropped below
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = (!candidates.is_empty()).then(|| candidates.remove(0)) {
            let coprime = self.lm(p.i).is_coprime(&lt_h);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.lm(p.i).is_coprime(&lt_h));

        // old pairs made redundant by h
        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().unwrap();
        self.pairs.retain(|p| {
            !(lt_h.divides(&p.lcm)
                && lm(p.i).lcm(&lt_h) != p.lcm
                && lm(p.j).lcm(&lt_h) != p.lcm)
        });
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && lt_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    /// Normal strategy: the pair with the smallest lcm; ties by insertion order.
    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let (best, _) = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(ia, a), (ib, b)| order.compare(&a.lcm, &b.lcm).then(ia.cmp(ib)))?;
        Some(self.pairs.remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let lf = f.leading_term().unwrap();
        let lg = g.leading_term().unwrap();
        let mf = lf.mono.quotient_of(&p.lcm).unwrap();
        let mg = lg.mono.quotient_of(&p.lcm).unwrap();
        let a = f.mul_term(&lg.coeff, &mf);
        a.add_scaled(g, Some(&lf.coeff.neg()), Some(&mg))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> GroebnerBasis {
    let mut engine = Engine {
        ring: ring.clone(),
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let unit = || GroebnerBasis {
        ring: ring.clone(),
        polys: vec![Polynomial::one(ring)],
    };

    // sort inputs ascending so small elements reduce the larger ones first
    let mut input: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| {
        ring.order()
            .compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    for g in input {
        debug_assert!(crate::poly::same_ring(g.ring(), ring));
        let h = {
            let basis = engine.active_basis();
            reduce_with(g, &divisors(basis.iter().copied()))
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        engine.update(h.primitive());
    }

    while let Some(pair) = engine.select() {
        let s = engine.s_polynomial(&pair);
        let h = {
            let basis = engine.active_basis();
            reduce_with(&s, &divisors(basis.iter().copied()))
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        engine.update(h.primitive());
    }

    let minimal: Vec<Polynomial> = engine.active_basis().into_iter().cloned().collect();
    GroebnerBasis {
        ring: ring.clone(),
        polys: interreduce(ring, minimal),
    }
}

/// Tail-reduces a minimal basis and makes it monic and sorted.
fn interreduce(ring: &Arc<PolyRing>, minimal: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = minimal
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let others = divisors(
                minimal
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, p)| p),
            );
            let mut terms = g.terms().to_vec();
            let lead = terms.remove(0);
            let tail = reduce_with(&Polynomial::from_sorted(ring, terms), &others);
            let mut all = vec![lead];
            all.extend(tail.into_terms());
            Polynomial::from_sorted(ring, all).make_monic()
        })
        .collect();
    out.sort_by(|a, b| {
        ring.order()
            .compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    out
}

/// Checks the Buchberger criterion directly: every S-polynomial reduces to zero.
pub fn is_groebner_basis(polys: &[Polynomial]) -> bool {
    let polys: Vec<Polynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let lf = polys[i].leading_term().unwrap();
            let lg = polys[j].leading_term().unwrap();
            let lcm = lf.mono.lcm(&lg.mono);
            let s = polys[i]
                .mul_term(&lg.coeff, &lf.mono.quotient_of(&lcm).unwrap())
                .add_scaled(
                    &polys[j],
                    Some(&lf.coeff.neg()),
                    Some(&lg.mono.quotient_of(&lcm).unwrap()),
                );
            if !normal_form(&s, &polys).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Elements of a Gröbner basis under an elimination order for the first `drop`
/// variables that are free of those variables, mapped into `target`.
pub fn eliminate_polys(
    gb: &GroebnerBasis,
    drop: usize,
    target: &Arc<PolyRing>,
) -> Vec<Polynomial> {
    let n = gb.ring().nvars();
    debug_assert_eq!(target.nvars() + drop, n);
    let map: Vec<usize> = (0..n).map(|i| i.saturating_sub(drop)).collect();
    gb.polys()
        .iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|t| t.mono.exponents()[..drop].iter().all(|e| *e == 0))
        })
        .map(|p| p.embed(target, &map))
        .collect()
}
