//! Links, reduction numbers, analytic spread, Rees algebra and associated graded
//! ring presentations, and the graded components of the canonical module of `R[It]`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate_polys};
use crate::ideal::{jacobian_regular_at, regular_sequence_failure, symbolic_square_member, Ideal, Regularity};
use crate::invariants::{height, krull_dim, multiplicity_table, HilbertSamuelTable};
use crate::monomial::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};
use crate::presentation::RingPresentation;

/// Computation budgets shared by the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest reduction number searched.
    pub n_max: usize,
    /// Largest power used for Hilbert–Samuel functions.
    pub s_max: usize,
    /// Truncation depth of the infinite colon; `None` means `g + 2`.
    pub j_depth: Option<usize>,
    /// Number of canonical components; `None` means `g + 2`.
    pub k_max: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            n_max: 5,
            s_max: crate::invariants::DEFAULT_S_MAX,
            j_depth: None,
            k_max: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl TriState {
    pub fn is_yes(self) -> bool {
        self == TriState::Yes
    }
}

/// The conditions under which links of primes have reduction number one:
/// L1: `R_p` is not regular. L2: `R_p` is regular of dimension at least 2 and
/// two elements of the sequence lie in the symbolic square of `p`.
pub fn link_conditions(p: &Ideal, z: &[Polynomial]) -> Result<(TriState, TriState)> {
    let regularity = jacobian_regular_at(p)?;
    let l1 = match regularity {
        Regularity::NotRegular => TriState::Yes,
        Regularity::Regular => TriState::No,
        Regularity::Inconclusive => TriState::Unknown,
    };
    let h = height(p)?;
    let mut in_square = 0;
    for zi in z {
        if symbolic_square_member(zi, p)? {
            in_square += 1;
        }
    }
    let l2 = if h < 2 || in_square < 2 {
        TriState::No
    } else {
        match regularity {
            Regularity::Regular => TriState::Yes,
            Regularity::NotRegular => TriState::No,
            Regularity::Inconclusive => TriState::Unknown,
        }
    };
    Ok((l1, l2))
}

#[derive(Clone, Debug)]
pub struct LinkData {
    pub target: Ideal,
    pub sequence: Vec<Polynomial>,
    pub j: Ideal,
    /// `I = J : p`.
    pub linked: Ideal,
    pub l1: TriState,
    pub l2: TriState,
}

/// `J : A` for `J` generated by a regular sequence inside `A`.
pub fn link(j: &Ideal, a: &Ideal) -> Result<LinkData> {
    let pres = j.presentation();
    let sequence = j.reduced_gens();
    if let Some((index, reason)) = regular_sequence_failure(&sequence, pres)? {
        return Err(Error::NotRegularSequence { index, reason });
    }
    if !a.contains(j)? {
        return Err(Error::Domain("the regular sequence is not inside the target ideal".into()));
    }
    let linked = j.colon(a)?;
    let (l1, l2) = if a.is_unit() {
        (TriState::Unknown, TriState::Unknown)
    } else {
        link_conditions(a, &sequence)?
    };
    Ok(LinkData {
        target: a.clone(),
        sequence,
        j: j.clone(),
        linked,
        l1,
        l2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionNumber {
    Exactly(usize),
    NotWithin(usize),
}

/// Least `n <= n_max` with `I^{n+1} ⊆ J I^n`.
pub fn reduction_number(i: &Ideal, j: &Ideal, n_max: usize) -> Result<ReductionNumber> {
    if !i.contains(j)? {
        return Err(Error::Domain("J is not contained in I".into()));
    }
    let mut power = i.presentation().unit_ideal();
    for n in 0..=n_max {
        let next = power.product(i)?.compact();
        if j.product(&power)?.contains(&next)? {
            return Ok(ReductionNumber::Exactly(n));
        }
        power = next;
    }
    Ok(ReductionNumber::NotWithin(n_max))
}

/// Presentation `k[x, T_1..T_n] / P ≅ R[It]` with `T_i ↦ f_i t`.
#[derive(Clone, Debug)]
pub struct ReesPresentation {
    pub base: Arc<RingPresentation>,
    /// `k[x, T]` with no relations; `ideal` lives here.
    pub ambient: Arc<RingPresentation>,
    pub ideal: Ideal,
    pub generators: Vec<Polynomial>,
}

impl ReesPresentation {
    pub fn base_vars(&self) -> usize {
        self.base.nvars()
    }

    /// `M = (m, It)`: all variables of the presentation ring.
    pub fn irrelevant_ideal(&self) -> Ideal {
        self.ambient.variable_ideal()
    }

    pub fn t_names(&self) -> &[String] {
        &self.ambient.ring().vars()[self.base_vars()..]
    }
}

fn fresh_names(taken: &[String], stem: &str, n: usize) -> Vec<String> {
    let mut stem = stem.to_string();
    loop {
        let names: Vec<String> = (1..=n).map(|i| format!("{stem}{i}")).collect();
        if names.iter().all(|c| !taken.contains(c)) && !taken.contains(&"t".to_string()) {
            return names;
        }
        stem.push('_');
    }
}

/// Eliminates `t` from `Q + (T_i - f_i t)` in `k[t, x, T]`.
pub fn rees_presentation(i: &Ideal) -> Result<ReesPresentation> {
    let base = i.presentation().clone();
    let ring = base.ring();
    let nx = ring.nvars();
    let generators = i.reduced_gens();
    let n = generators.len();

    let t_names = fresh_names(ring.vars(), "T", n);
    let mut t_var = "t".to_string();
    while ring.var_index(&t_var).is_some() || t_names.contains(&t_var) {
        t_var.push('_');
    }
    let mut xt_vars: Vec<String> = ring.vars().to_vec();
    xt_vars.extend(t_names.iter().cloned());
    let xt = PolyRing::new(xt_vars.clone(), ring.field(), MonomialOrder::Grevlex)?;

    let mut aux_vars = vec![t_var];
    aux_vars.extend(xt_vars);
    let aux = PolyRing::new(
        aux_vars,
        ring.field(),
        MonomialOrder::elimination(1, MonomialOrder::Grevlex),
    )?;
    let x_map: Vec<usize> = (1..=nx).collect();
    let t = Polynomial::var(&aux, 0);
    let mut gens: Vec<Polynomial> = base
        .quotient()
        .polys()
        .iter()
        .map(|q| q.embed(&aux, &x_map))
        .collect();
    for (k, f) in generators.iter().enumerate() {
        let tk = Polynomial::var(&aux, 1 + nx + k);
        gens.push(tk.sub(&t.mul(&f.embed(&aux, &x_map))));
    }
    let gb = buchberger(&aux, &gens);
    let ambient = RingPresentation::polynomial_ring(xt);
    let ideal = Ideal::new(&ambient, eliminate_polys(&gb, 1, ambient.ring()))?;
    Ok(ReesPresentation {
        base,
        ambient,
        ideal,
        generators,
    })
}

/// `gr_I(R) = R[It] / I R[It]`, presented as `P + (f_i)` in `k[x, T]`.
pub fn assoc_graded_presentation(i: &Ideal) -> Result<Ideal> {
    let rees = rees_presentation(i)?;
    assoc_graded_from(&rees)
}

pub fn assoc_graded_from(rees: &ReesPresentation) -> Result<Ideal> {
    let nx = rees.base_vars();
    let map: Vec<usize> = (0..nx).collect();
    let lifts: Vec<Polynomial> = rees
        .generators
        .iter()
        .map(|f| f.embed(rees.ambient.ring(), &map))
        .collect();
    rees.ideal.sum(&Ideal::new(&rees.ambient, lifts)?)
}

/// Fiber ideal of `R[It] ⊗ R/m`: eliminate the `x` variables from `P + (x)`.
pub fn fiber_ideal(rees: &ReesPresentation) -> Result<Ideal> {
    let nx = rees.base_vars();
    let ring = rees.ambient.ring();
    let block = ring.with_order(MonomialOrder::elimination(nx, MonomialOrder::Grevlex))?;
    let block_pres = RingPresentation::polynomial_ring(block.clone());
    let mut gens: Vec<Polynomial> = rees.ideal.gens().iter().map(|g| g.reorder(&block)).collect();
    gens.extend((0..nx).map(|v| Polynomial::var(&block, v)));
    crate::ideal::eliminate(&Ideal::new(&block_pres, gens)?, nx)
}

/// `ℓ(I) = dim R[It] ⊗ R/m`.
pub fn analytic_spread(i: &Ideal) -> Result<usize> {
    let m = i.presentation().variable_ideal();
    if !m.contains(i)? {
        return Err(Error::Domain("ideal is not inside the variable ideal".into()));
    }
    let rees = rees_presentation(i)?;
    if rees.generators.is_empty() {
        return Ok(0);
    }
    krull_dim(&fiber_ideal(&rees)?)
}

/// `e(M, R[It])` from the Hilbert–Samuel function of the presentation at `M`.
pub fn rees_multiplicity(i: &Ideal, s_max: usize) -> Result<u64> {
    Ok(rees_multiplicity_table(i, s_max)?.multiplicity.expect("stabilized"))
}

pub fn rees_multiplicity_table(i: &Ideal, s_max: usize) -> Result<HilbertSamuelTable> {
    let rees = rees_presentation(i)?;
    multiplicity_table(&rees.ideal, &rees.irrelevant_ideal(), s_max)
}

#[derive(Clone, Debug)]
pub struct CanonicalComponents {
    pub g: usize,
    /// `L = J : I`.
    pub l: Ideal,
    /// `components[k - 1]` is the degree-`k` component.
    pub components: Vec<Ideal>,
    pub depth: usize,
}

struct Powers {
    base: Ideal,
    cache: Vec<Ideal>,
}

impl Powers {
    fn new(base: &Ideal) -> Self {
        Powers {
            base: base.clone(),
            cache: vec![base.presentation().unit_ideal()],
        }
    }

    fn get(&mut self, n: usize) -> Result<Ideal> {
        while self.cache.len() <= n {
            let next = self.cache.last().unwrap().product(&self.base)?.compact();
            self.cache.push(next);
        }
        Ok(self.cache[n].clone())
    }
}

/// Degree-`k` components `ω_k = ∩_{j=0..depth} (ωA_{k+j} : I^j)` of the canonical
/// module of `R[It]`, where `ωA_m = R` for `1 <= m <= g-1` and `J^{m-g+1}` beyond.
/// The truncated intersection is recomputed at `depth + 1` and must agree.
pub fn canonical_components(i: &Ideal, j: &Ideal, k_max: usize, depth: usize) -> Result<CanonicalComponents> {
    if j.is_unit() || !i.contains(j)? {
        return Err(Error::Domain("J must be a proper ideal inside I".into()));
    }
    let g = height(i)?;
    if g < 2 {
        return Err(Error::Inapplicable(format!("height {g} < 2")));
    }
    let i_powers = i.power(2);
    if !i_powers.equals(&j.product(i)?)? {
        return Err(Error::Inapplicable("I^2 != JI".into()));
    }
    let l = j.colon(i)?;
    let mut ip = Powers::new(i);
    let mut jp = Powers::new(j);
    let mut components = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc: Option<Ideal> = None;
        for step in 0..=depth + 1 {
            let m = k + step;
            let part = if m <= g - 1 {
                None
            } else {
                let a = jp.get(m - g + 1)?;
                Some(if step == 0 { a } else { a.colon(&ip.get(step)?)? })
            };
            if step == depth + 1 {
                let deeper = match (&acc, part) {
                    (Some(prev), Some(p)) => Some(prev.intersect(&p)?.compact()),
                    (None, p) => p,
                    (prev, None) => prev.clone(),
                };
                let same = match (&acc, &deeper) {
                    (None, None) => true,
                    (Some(a), Some(b)) => a.equals(b)?,
                    (Some(a), None) => a.is_unit(),
                    (None, Some(b)) => b.is_unit(),
                };
                if !same {
                    let show = |x: &Option<Ideal>| {
                        x.as_ref()
                            .map(|i| i.groebner().to_strings())
                            .unwrap_or_else(|| vec!["1".into()])
                    };
                    return Err(Error::NotStabilized {
                        depth,
                        candidates: Box::new((show(&acc), show(&deeper))),
                    });
                }
                break;
            }
            acc = match (acc, part) {
                (None, p) => p,
                (Some(prev), Some(p)) => Some(prev.intersect(&p)?.compact()),
                (prev, None) => prev,
            };
        }
        components.push(acc.unwrap_or_else(|| i.presentation().unit_ideal()));
    }
    Ok(CanonicalComponents {
        g,
        l,
        components,
        depth,
    })
}

/// Componentwise form of the ideal generated by `t, ..., t^{g-2}` and `L t^{g-1}`:
/// `R` in degrees `1..=g-2`, then `L I^{k-g+1}`.
pub fn expected_canonical_components(g: usize, l: &Ideal, i: &Ideal, k_max: usize) -> Result<Vec<Ideal>> {
    if g < 2 {
        return Err(Error::Inapplicable(format!("height {g} < 2")));
    }
    if !l.contains(i)? {
        return Err(Error::Domain("hypotheses violated: I^2 is not inside J".into()));
    }
    let mut ip = Powers::new(i);
    (1..=k_max)
        .map(|k| {
            if k + 2 <= g {
                Ok(i.presentation().unit_ideal())
            } else {
                l.product(&ip.get(k + 1 - g)?).map(|x| x.compact())
            }
        })
        .collect()
}

/// `I = J : I`, for `J` a regular sequence inside `I`.
pub fn is_self_linked(i: &Ideal, j: &Ideal) -> Result<bool> {
    if !i.contains(j)? {
        return Err(Error::Domain("J is not contained in I".into()));
    }
    if let Some((index, reason)) = regular_sequence_failure(&j.reduced_gens(), j.presentation())? {
        return Err(Error::NotRegularSequence { index, reason });
    }
    j.colon(i)?.equals(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn pres(vars: &[&str], rels: &[&str]) -> Arc<RingPresentation> {
        RingPresentation::parse(vars, Field::Rational, rels).unwrap()
    }

    #[test]
    fn link_examples() {
        let r = pres(&["x", "y", "z"], &[]);
        let j = r.parse_ideal(&["x", "y^2", "z^2"]).unwrap();
        let data = link(&j, &r.variable_ideal()).unwrap();
        assert_eq!(data.linked.groebner().to_strings(), vec!["x", "z^2", "y*z", "y^2"]);
        assert_eq!((data.l1, data.l2), (TriState::No, TriState::Yes));

        let h = pres(&["x", "y", "z"], &["x^2-y^2"]);
        let data = link(&h.parse_ideal(&["y", "z"]).unwrap(), &h.variable_ideal()).unwrap();
        assert!(data.linked.equals(&h.variable_ideal()).unwrap());
        assert_eq!(data.l1, TriState::Yes);

        let s = pres(&["x", "y"], &[]);
        let x = s.parse_ideal(&["x"]).unwrap();
        assert!(link(&x, &x).unwrap().linked.is_unit());

        let q = pres(&["x", "y"], &["x^2", "x*y"]);
        let err = link(&q.parse_ideal(&["y^3"]).unwrap(), &q.variable_ideal()).unwrap_err();
        assert!(matches!(err, Error::NotRegularSequence { index: 0, .. }));
    }

    #[test]
    fn reduction_numbers() {
        let r = pres(&["x", "y", "z"], &[]);
        let i = r.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap();
        let j = r.parse_ideal(&["x", "y^2", "z^2"]).unwrap();
        assert_eq!(reduction_number(&i, &j, 5).unwrap(), ReductionNumber::Exactly(1));
        assert_eq!(reduction_number(&i, &i, 5).unwrap(), ReductionNumber::Exactly(0));
        let a = r.parse_ideal(&["x", "y"]).unwrap();
        let b = r.parse_ideal(&["x^2", "y"]).unwrap();
        for n in 0..4 {
            assert_eq!(reduction_number(&a, &b, n).unwrap(), ReductionNumber::NotWithin(n));
        }
        assert!(reduction_number(&b, &a, 3).is_err());
    }

    #[test]
    fn rees_presentations() {
        let r1 = pres(&["x"], &[]);
        let rp = rees_presentation(&r1.variable_ideal()).unwrap();
        assert!(rp.ideal.groebner().is_empty());

        let r2 = pres(&["x", "y"], &[]);
        let rp = rees_presentation(&r2.variable_ideal()).unwrap();
        assert_eq!(rp.ideal.groebner().to_strings(), vec!["y*T1 - x*T2"]);

        let rp = rees_presentation(&r2.parse_ideal(&["x^2", "x*y"]).unwrap()).unwrap();
        let syz = rp.ambient.poly("y*T1 - x*T2").unwrap();
        assert!(rp.ideal.contains_poly(&syz).unwrap());
    }

    #[test]
    fn associated_graded_dimensions() {
        let r1 = pres(&["x"], &[]);
        let gr = assoc_graded_presentation(&r1.variable_ideal()).unwrap();
        assert_eq!(krull_dim(&gr).unwrap(), 1);
        let r2 = pres(&["x", "y"], &[]);
        let gr = assoc_graded_presentation(&r2.variable_ideal()).unwrap();
        let expected = gr.presentation().parse_ideal(&["x", "y"]).unwrap();
        assert!(gr.equals(&expected).unwrap());
        let r3 = pres(&["x", "y", "z"], &[]);
        let gr = assoc_graded_presentation(&r3.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap()).unwrap();
        assert_eq!(krull_dim(&gr).unwrap(), 3);
    }

    #[test]
    fn analytic_spreads() {
        let r2 = pres(&["x", "y"], &[]);
        assert_eq!(analytic_spread(&r2.parse_ideal(&["x"]).unwrap()).unwrap(), 1);
        assert_eq!(analytic_spread(&r2.variable_ideal()).unwrap(), 2);
        let r3 = pres(&["x", "y", "z"], &[]);
        let i = r3.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap();
        assert_eq!(analytic_spread(&i).unwrap(), 3);
    }

    #[test]
    fn canonical_components_of_a_self_linked_height_two_ideal() {
        // A1 singularity: m = (x, y) : m with m^2 = (x, y) m
        let r = pres(&["x", "y", "z"], &["x*y - z^2"]);
        let m = r.variable_ideal();
        let j = r.parse_ideal(&["x", "y"]).unwrap();
        let cc = canonical_components(&m, &j, 3, 4).unwrap();
        assert_eq!(cc.g, 2);
        assert!(cc.l.equals(&m).unwrap());
        let expected = expected_canonical_components(2, &cc.l, &m, 3).unwrap();
        for (k, (got, want)) in cc.components.iter().zip(&expected).enumerate() {
            assert!(got.equals(want).unwrap(), "degree {}", k + 1);
            assert!(got.equals(&m.power(k as u32 + 1)).unwrap());
        }
    }

    #[test]
    fn expected_form_shapes() {
        let r = pres(&["x", "y", "z"], &[]);
        let m = r.variable_ideal();
        let i = r.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap();
        let e = expected_canonical_components(4, &m, &i, 4).unwrap();
        assert!(e[0].is_unit() && e[1].is_unit());
        assert!(e[2].equals(&m).unwrap());
        assert!(e[3].equals(&m.product(&i).unwrap()).unwrap());
        let small = r.parse_ideal(&["x"]).unwrap();
        assert!(expected_canonical_components(3, &small, &i, 3).is_err());
    }

    #[test]
    fn self_linkage() {
        let h = pres(&["x", "y"], &["x^2-y^2"]);
        assert!(is_self_linked(&h.variable_ideal(), &h.parse_ideal(&["y"]).unwrap()).unwrap());
        let r = pres(&["x", "y", "z"], &[]);
        let i = r.parse_ideal(&["x", "y"]).unwrap();
        assert!(is_self_linked(&i, &r.parse_ideal(&["x^2", "y"]).unwrap()).unwrap());
        let m2 = r.variable_ideal().power(2);
        assert!(is_self_linked(&m2, &r.parse_ideal(&["x^2", "y^2", "z^2"]).unwrap()).unwrap());
        let m = r.variable_ideal();
        assert!(!is_self_linked(&m, &r.parse_ideal(&["x^2", "y^2", "z^2"]).unwrap()).unwrap());
        assert!(is_self_linked(&r.parse_ideal(&["x^2", "y"]).unwrap(), &i).is_err());
    }
}
