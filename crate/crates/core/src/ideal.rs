//! Ideals of a presented ring and the operations statements about links are built from.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate_polys, GroebnerBasis};
use crate::invariants::height;
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, PolyRing, Polynomial};
use crate::presentation::RingPresentation;

/// Generators in `k[x]`; the ring's defining ideal is adjoined implicitly, so an
/// ideal of `R = k[x]/Q` is represented by its preimage.
#[derive(Clone)]
pub struct Ideal {
    pres: Arc<RingPresentation>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.reduced_gens().iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl Ideal {
    pub fn new(pres: &Arc<RingPresentation>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !same_ring(g.ring(), pres.ring()) {
                return Err(Error::Structural(format!(
                    "generator {g} does not belong to {pres}"
                )));
            }
        }
        Ok(Self::from_trusted(pres, gens))
    }

    pub(crate) fn from_trusted(pres: &Arc<RingPresentation>, gens: Vec<Polynomial>) -> Self {
        Ideal {
            pres: pres.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn presentation(&self) -> &Arc<RingPresentation> {
        &self.pres
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.pres.ring()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators reduced modulo the defining ideal, zeros and scalar duplicates dropped.
    pub fn reduced_gens(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        let mut seen: Vec<Polynomial> = Vec::new();
        for g in &self.gens {
            let r = self.pres.reduce(g);
            if r.is_zero() {
                continue;
            }
            let key = r.make_monic();
            if !seen.contains(&key) {
                seen.push(key);
                out.push(r);
            }
        }
        out
    }

    /// Reduced Gröbner basis of `gens + Q`, computed once.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| self.pres.groebner(&self.gens))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    /// True when the ideal is zero in `R`, i.e. contained in `Q`.
    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| self.pres.reduce(g).is_zero())
    }

    /// Replaces the generators by the reduced Gröbner basis (modulo `Q`).
    pub fn compact(&self) -> Ideal {
        let gens: Vec<Polynomial> = self
            .groebner()
            .polys()
            .iter()
            .map(|p| self.pres.reduce(p))
            .filter(|p| !p.is_zero())
            .collect();
        let out = Ideal::from_trusted(&self.pres, gens);
        let _ = out.gb.set(self.groebner().clone());
        out
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if *self.pres == *other.pres {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "ideals live in different rings: {} vs {}",
                self.pres, other.pres
            )))
        }
    }

    fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), self.ring()) {
            Ok(())
        } else {
            Err(Error::Structural(format!("{f} does not belong to {}", self.pres)))
        }
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        self.check_poly(f)?;
        Ok(self.groebner().contains(f))
    }

    /// `B ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        let gb = self.groebner();
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.groebner() == other.groebner())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::from_trusted(&self.pres, gens))
    }

    /// Pairwise products, reduced modulo `Q` with scalar duplicates removed.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens: Vec<Polynomial> = Vec::new();
        let mut seen: Vec<Polynomial> = Vec::new();
        for a in self.reduced_gens() {
            for b in other.reduced_gens() {
                let p = self.pres.reduce(&a.mul(&b));
                if p.is_zero() {
                    continue;
                }
                let key = p.make_monic();
                if !seen.contains(&key) {
                    seen.push(key);
                    gens.push(p);
                }
            }
        }
        Ok(Ideal::from_trusted(&self.pres, gens))
    }

    /// `A^0 = R`; intermediate powers are compacted to keep generator lists small.
    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = self.pres.unit_ideal();
        for _ in 0..n {
            acc = acc.product(self).expect("same ring").compact();
        }
        acc
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let quotient = self.pres.quotient().polys();
        let gens = intersect_polys(self.ring(), &self.gens, &other.gens, quotient);
        Ok(Ideal::from_trusted(&self.pres, gens))
    }

    /// `(self : B)`, computed upstairs as `((A + Q) : B)` by intersecting the
    /// principal quotients `(A + Q) ∩ (b)` divided by `b`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let divisors = other.reduced_gens();
        if divisors.is_empty() {
            return Err(Error::Domain("colon by the zero ideal".into()));
        }
        let mut a_gens = self.gens.clone();
        a_gens.extend(self.pres.quotient().polys().iter().cloned());
        let gb = self.groebner();
        let mut acc: Option<Ideal> = None;
        for b in divisors {
            if gb.contains(&b) {
                continue;
            }
            let part = principal_quotient(self.ring(), &a_gens, &b);
            let part = Ideal::from_trusted(&self.pres, part);
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part)?.compact(),
            });
        }
        Ok(acc.unwrap_or_else(|| self.pres.unit_ideal()))
    }

    pub fn colon_poly(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_poly(f)?;
        self.colon(&Ideal::from_trusted(&self.pres, vec![f.clone()]))
    }

    /// `A : f^∞` by the Rabinowitsch trick: eliminate `w` from `A + Q + (1 - w f)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_poly(f)?;
        if self.pres.reduce(f).is_zero() {
            return Err(Error::Domain("saturation by zero".into()));
        }
        let base = self.ring();
        let (aux, map) = prepend_variable(base, "w");
        let w = Polynomial::var(&aux, 0);
        let mut gens: Vec<Polynomial> = self
            .gens
            .iter()
            .chain(self.pres.quotient().polys())
            .map(|g| g.embed(&aux, &map))
            .collect();
        gens.push(Polynomial::one(&aux).sub(&w.mul(&f.embed(&aux, &map))));
        let gb = buchberger(&aux, &gens);
        Ok(Ideal::from_trusted(&self.pres, eliminate_polys(&gb, 1, base)))
    }

    /// `A : f^∞` by iterating `A : f` until it stabilizes.
    pub fn saturate_by_iteration(&self, f: &Polynomial) -> Result<Ideal> {
        let mut current = self.clone();
        loop {
            let next = current.colon_poly(f)?;
            if next.equals(&current)? {
                return Ok(current);
            }
            current = next;
        }
    }
}

/// Aux ring `[name] ++ vars` with an elimination order for the new variable.
pub(crate) fn prepend_variable(base: &Arc<PolyRing>, name: &str) -> (Arc<PolyRing>, Vec<usize>) {
    let mut fresh = name.to_string();
    while base.var_index(&fresh).is_some() {
        fresh.push('_');
    }
    let mut vars = vec![fresh];
    vars.extend(base.vars().iter().cloned());
    let order = MonomialOrder::elimination(1, base.order().clone());
    let aux = PolyRing::new(vars, base.field(), order).expect("aux ring");
    let map = (1..=base.nvars()).collect();
    (aux, map)
}

/// `(A + extra) ∩ (B + extra)` in `k[x]` via `u A + (1 - u) B + extra`, eliminating `u`.
pub(crate) fn intersect_polys(
    ring: &Arc<PolyRing>,
    a: &[Polynomial],
    b: &[Polynomial],
    extra: &[Polynomial],
) -> Vec<Polynomial> {
    let (aux, map) = prepend_variable(ring, "u");
    let u = Polynomial::var(&aux, 0);
    let one_minus_u = Polynomial::one(&aux).sub(&u);
    let mut gens: Vec<Polynomial> = a.iter().map(|g| u.mul(&g.embed(&aux, &map))).collect();
    gens.extend(b.iter().map(|g| one_minus_u.mul(&g.embed(&aux, &map))));
    gens.extend(extra.iter().map(|g| g.embed(&aux, &map)));
    let gb = buchberger(&aux, &gens);
    eliminate_polys(&gb, 1, ring)
}

/// `(A : b)` in the polynomial ring: generators of `A ∩ (b)` divided by `b`.
fn principal_quotient(ring: &Arc<PolyRing>, a: &[Polynomial], b: &Polynomial) -> Vec<Polynomial> {
    intersect_polys(ring, a, std::slice::from_ref(b), &[])
        .into_iter()
        .map(|g| g.div_exact(b).expect("element of (b) is divisible by b"))
        .collect()
}

/// First index `i` at which `z_i` is a zero divisor modulo `(z_1..z_{i-1})`, or
/// `len` if `(z)` is the unit ideal.
pub fn regular_sequence_failure(
    z: &[Polynomial],
    pres: &Arc<RingPresentation>,
) -> Result<Option<(usize, String)>> {
    for (i, zi) in z.iter().enumerate() {
        let prev = Ideal::new(pres, z[..i].to_vec())?;
        if prev.groebner().contains(zi) {
            return Ok(Some((i, format!("{zi} is zero modulo the previous elements"))));
        }
        let colon = prev.colon_poly(zi)?;
        if !colon.equals(&prev)? {
            let witness = colon
                .reduced_gens()
                .into_iter()
                .find(|g| !prev.groebner().contains(g))
                .map(|g| g.to_string())
                .unwrap_or_default();
            return Ok(Some((
                i,
                format!("{zi} is a zero divisor modulo the previous elements (witness {witness})"),
            )));
        }
    }
    if Ideal::new(pres, z.to_vec())?.is_unit() {
        return Ok(Some((z.len(), "the sequence generates the unit ideal".into())));
    }
    Ok(None)
}

pub fn is_regular_sequence(z: &[Polynomial], pres: &Arc<RingPresentation>) -> Result<bool> {
    Ok(regular_sequence_failure(z, pres)?.is_none())
}

/// `z ∈ p^(2)` iff `(p² : z) ⊄ p`. Primality of `p` is the caller's assertion.
pub fn symbolic_square_member(z: &Polynomial, p: &Ideal) -> Result<bool> {
    p.check_poly(z)?;
    if p.is_unit() {
        return Err(Error::Domain("symbolic power of the unit ideal".into()));
    }
    if p.presentation().reduce(z).is_zero() {
        return Ok(true);
    }
    let colon = p.power(2).colon_poly(z)?;
    Ok(!p.contains(&colon)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    Regular,
    NotRegular,
    Inconclusive,
}

/// Jacobian criterion for `R_p` with `R = k[x]/Q`, characteristic zero only.
pub fn jacobian_regular_at(p: &Ideal) -> Result<Regularity> {
    let pres = p.presentation();
    if pres.is_polynomial_ring() {
        return Ok(Regularity::Regular);
    }
    if pres.field().characteristic() != 0 {
        return Ok(Regularity::Inconclusive);
    }
    let ambient = RingPresentation::polynomial_ring(pres.ring().clone());
    let q_gens = pres.quotient().polys().to_vec();
    let q = Ideal::new(&ambient, q_gens.clone())?;
    let h = height(&q)?;
    let n = pres.nvars();
    let jac: Vec<Vec<Polynomial>> = q_gens
        .iter()
        .map(|f| (0..n).map(|v| f.derivative(v)).collect())
        .collect();
    let mut minors = Vec::new();
    for rows in subsets(jac.len(), h) {
        for cols in subsets(n, h) {
            let m: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            let d = determinant(&m, pres.ring());
            if !d.is_zero() {
                minors.push(d);
            }
        }
    }
    let m = Ideal::new(pres, minors)?;
    Ok(if p.contains(&m)? {
        Regularity::NotRegular
    } else {
        Regularity::Regular
    })
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn determinant(m: &[Vec<Polynomial>], ring: &Arc<PolyRing>) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(ring);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][c].mul(&determinant(&minor, ring));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// `I ∩ k[remaining variables]` for an ideal whose ring has an elimination
/// order on its first `drop` variables (any other order is replaced by one).
pub fn eliminate(ideal: &Ideal, drop: usize) -> Result<Ideal> {
    let ring = ideal.ring();
    if drop > ring.nvars() {
        return Err(Error::Structural(format!(
            "cannot drop {drop} of {} variables",
            ring.nvars()
        )));
    }
    let inner = match ring.order() {
        MonomialOrder::Block { split, inner, .. } if *split == drop => (**inner).clone(),
        _ => MonomialOrder::Grevlex,
    };
    let target = PolyRing::new(ring.vars()[drop..].to_vec(), ring.field(), inner.clone())?;
    let gb = match ring.order() {
        MonomialOrder::Block { split, .. } if *split == drop => ideal.groebner().clone(),
        _ => {
            let block = ring.with_order(MonomialOrder::elimination(drop, inner))?;
            let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.reorder(&block)).collect();
            gens.extend(ideal.presentation().quotient().polys().iter().map(|g| g.reorder(&block)));
            buchberger(&block, &gens)
        }
    };
    let polys = eliminate_polys(&gb, drop, &target);
    Ideal::new(&RingPresentation::polynomial_ring(target), polys)
}
