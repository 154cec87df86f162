//! Lengths, dimensions, Hilbert–Samuel functions and multiplicities.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::buchberger;
use crate::ideal::Ideal;
use crate::monomial::{Exponents, Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use crate::presentation::RingPresentation;

pub const DEFAULT_S_MAX: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthValue {
    Finite(u64),
    Infinite,
}

impl LengthValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            LengthValue::Finite(n) => Some(n),
            LengthValue::Infinite => None,
        }
    }
}

/// `λ(R/(A + q^s))` for `s = 1..=s_max` together with its finite differences.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertSamuelTable {
    pub s: Vec<usize>,
    pub lambda: Vec<u64>,
    /// Row `k` holds the `(k+1)`-th differences of `lambda`.
    pub differences: Vec<Vec<i64>>,
    pub multiplicity: Option<u64>,
    pub dimension: usize,
}

impl HilbertSamuelTable {
    fn build(lambda: Vec<u64>, dimension: usize) -> Self {
        let mut differences = Vec::new();
        let mut row: Vec<i64> = lambda.iter().map(|v| *v as i64).collect();
        for _ in 0..dimension {
            row = row.windows(2).map(|w| w[1] - w[0]).collect();
            differences.push(row.clone());
        }
        let top: Vec<i64> = if dimension == 0 {
            lambda.iter().map(|v| *v as i64).collect()
        } else {
            differences.last().cloned().unwrap_or_default()
        };
        let multiplicity = match top.as_slice() {
            [.., a, b, c] if a == b && b == c && *c > 0 => Some(*c as u64),
            _ => None,
        };
        HilbertSamuelTable {
            s: (1..=lambda.len()).collect(),
            lambda,
            differences,
            multiplicity,
            dimension,
        }
    }
}

/// Largest size of a variable subset `S` with no leading monomial supported inside `S`.
pub fn dimension_of_monomial_ideal(nvars: usize, lms: &[Monomial]) -> Option<usize> {
    if lms.iter().any(|m| m.is_one()) {
        return None;
    }
    assert!(nvars <= 24, "independent-set search is exponential in the variable count");
    let masks: Vec<u32> = lms
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let mut best = 0;
    for set in 0u32..(1u32 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && masks.iter().all(|m| m & !set != 0) {
            best = size;
        }
    }
    Some(best)
}

/// Counts monomials outside the monomial ideal generated by `lms`, bucketed by
/// degree, for degrees `0..max_degree`. With `max_degree = None` the quotient
/// must be finite-dimensional.
pub fn count_standard_monomials(nvars: usize, lms: &[Monomial], max_degree: Option<u32>) -> Vec<u64> {
    let mut counts: Vec<u64> = Vec::new();
    let mut exps: Exponents = smallvec::smallvec![0; nvars];
    fn walk(
        var: usize,
        degree: u32,
        exps: &mut Exponents,
        lms: &[Monomial],
        max_degree: Option<u32>,
        counts: &mut Vec<u64>,
    ) {
        // exps is standard here; record it, then extend by variables >= var
        if counts.len() <= degree as usize {
            counts.resize(degree as usize + 1, 0);
        }
        counts[degree as usize] += 1;
        if max_degree.is_some_and(|d| degree + 1 >= d) {
            return;
        }
        for v in var..exps.len() {
            exps[v] += 1;
            let m = Monomial::new(exps.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                walk(v, degree + 1, exps, lms, max_degree, counts);
            }
            exps[v] -= 1;
        }
    }
    if max_degree == Some(0) || lms.iter().any(|m| m.is_one()) {
        return counts;
    }
    walk(0, 0, &mut exps, lms, max_degree, &mut counts);
    if let Some(d) = max_degree {
        counts.resize(d as usize, 0);
    }
    counts
}

/// `λ(R/A)` as the number of standard monomials of `A + Q`.
pub fn length_of_quotient(a: &Ideal) -> LengthValue {
    let gb = a.groebner();
    let lms = gb.leading_monomials();
    match dimension_of_monomial_ideal(a.ring().nvars(), &lms) {
        None => LengthValue::Finite(0),
        Some(0) => LengthValue::Finite(count_standard_monomials(a.ring().nvars(), &lms, None).iter().sum()),
        Some(_) => LengthValue::Infinite,
    }
}

/// `dim R/A`.
pub fn krull_dim(a: &Ideal) -> Result<usize> {
    dimension_of_monomial_ideal(a.ring().nvars(), &a.groebner().leading_monomials()).ok_or(Error::EmptyRing)
}

pub fn ring_dim(pres: &Arc<RingPresentation>) -> usize {
    krull_dim(&pres.zero_ideal()).expect("presentations are never the zero ring")
}

/// `dim R - dim R/A`.
pub fn height(a: &Ideal) -> Result<usize> {
    if a.is_unit() {
        return Err(Error::Domain("height of the unit ideal".into()));
    }
    Ok(ring_dim(a.presentation()) - krull_dim(a)?)
}

/// Leading ideal of `A + Q` for a local degree order at the origin, via a
/// Gröbner basis of the homogenized generators (Lazard's method).
fn local_leading_monomials(a: &Ideal) -> Vec<Monomial> {
    let base = a.ring();
    let n = base.nvars();
    let mut vars = base.vars().to_vec();
    let mut h = "h".to_string();
    while vars.contains(&h) {
        h.push('_');
    }
    vars.push(h);
    // degree first, then larger powers of h (= smaller degree in x), then grevlex
    let order = MonomialOrder::Weighted {
        weights: vec![1; n + 1],
        tie_break: Box::new(MonomialOrder::Weighted {
            weights: (0..=n).map(|i| (i == n) as u32).collect(),
            tie_break: Box::new(MonomialOrder::Grevlex),
        }),
    };
    let ring = PolyRing::new(vars, base.field(), order).expect("homogenization ring");
    let map: Vec<usize> = (0..n).collect();
    let gens: Vec<Polynomial> = a
        .gens()
        .iter()
        .chain(a.presentation().quotient().polys())
        .map(|g| g.homogenize(&ring, &map, n))
        .collect();
    let gb = buchberger(&ring, &gens);
    gb.leading_monomials()
        .into_iter()
        .map(|m| Monomial::new(Exponents::from_slice(&m.exponents()[..n])))
        .collect()
}

/// Lengths `λ(R/(A + q^s))` for `s = 1..=s_max`.
pub fn hilbert_samuel_values(a: &Ideal, q: &Ideal, s_max: usize) -> Result<Vec<u64>> {
    let m = a.presentation().variable_ideal();
    if !m.contains(q)? {
        return Err(Error::Domain("filter ideal is not inside the variable ideal".into()));
    }
    if length_of_quotient(&a.sum(q)?) == LengthValue::Infinite {
        return Err(Error::NotPrimary);
    }
    if q.equals(&m)? {
        // tangent cone: λ(R/(A + m^s)) counts standard monomials of degree < s
        let lms = local_leading_monomials(a);
        let per_degree = count_standard_monomials(a.ring().nvars(), &lms, Some(s_max as u32));
        let mut acc = 0;
        return Ok(per_degree
            .iter()
            .map(|c| {
                acc += c;
                acc
            })
            .collect());
    }
    direct_hilbert_samuel_values(a, q, s_max)
}

/// The same lengths computed one power at a time from Gröbner bases of `A + Q + q^s`.
pub fn direct_hilbert_samuel_values(a: &Ideal, q: &Ideal, s_max: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(s_max);
    let mut power = q.clone();
    for s in 1..=s_max {
        if s > 1 {
            power = power.product(q)?.compact();
        }
        match length_of_quotient(&a.sum(&power)?) {
            LengthValue::Finite(n) => out.push(n),
            LengthValue::Infinite => return Err(Error::NotPrimary),
        }
    }
    Ok(out)
}

pub fn hilbert_samuel(a: &Ideal, q: &Ideal, s_max: usize) -> Result<HilbertSamuelTable> {
    let d = krull_dim(a)?;
    Ok(HilbertSamuelTable::build(hilbert_samuel_values(a, q, s_max)?, d))
}

/// Stabilized `d`-th difference of the Hilbert–Samuel function, `d = dim R/A`.
/// Starts at `s = d + 4` and grows until three consecutive differences agree.
pub fn multiplicity(a: &Ideal, q: &Ideal, s_max: usize) -> Result<u64> {
    Ok(multiplicity_table(a, q, s_max)?.multiplicity.expect("stabilized"))
}

pub fn multiplicity_table(a: &Ideal, q: &Ideal, s_max: usize) -> Result<HilbertSamuelTable> {
    let d = krull_dim(a)?;
    let mut s = (d + 4).min(s_max.max(1));
    loop {
        let table = HilbertSamuelTable::build(hilbert_samuel_values(a, q, s)?, d);
        if table.multiplicity.is_some() {
            return Ok(table);
        }
        if s >= s_max {
            return Err(Error::BudgetExceeded {
                what: format!("Hilbert–Samuel differences did not stabilize by s = {s_max}"),
                partial: Some(Box::new(table)),
            });
        }
        s += 1;
    }
}

/// Minimal generators in the local sense: a generator is dropped when it lies in
/// the ideal of the other surviving generators plus `m A`.
pub fn min_gens(a: &Ideal) -> Result<Vec<Polynomial>> {
    let pres = a.presentation();
    let m = pres.variable_ideal();
    if !m.contains(a)? {
        return Err(Error::Domain("ideal is not inside the variable ideal".into()));
    }
    let ma = m.product(a)?;
    let mut gens: Vec<(usize, Polynomial)> = a.reduced_gens().into_iter().enumerate().collect();
    gens.sort_by_key(|(i, g)| (g.degree().unwrap_or(0), *i));
    let mut keep = vec![true; gens.len()];
    for k in 0..gens.len() {
        let others: Vec<Polynomial> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k && keep[*j])
            .map(|(_, (_, g))| g.clone())
            .collect();
        let test = Ideal::new(pres, others)?.sum(&ma)?;
        if test.contains_poly(&gens[k].1)? {
            keep[k] = false;
        }
    }
    Ok(gens
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((_, g), _)| g)
        .collect())
}

#[derive(Clone, Debug)]
pub struct SocleType {
    pub socle_ideal: Ideal,
    pub cm_type: u64,
}

/// `J : m` and `λ((J : m)/J)` for an Artinian `R/J`.
pub fn socle_type(j: &Ideal) -> Result<SocleType> {
    let LengthValue::Finite(lj) = length_of_quotient(j) else {
        return Err(Error::Domain("R/J is not Artinian".into()));
    };
    let socle_ideal = j.colon(&j.presentation().variable_ideal())?;
    let ls = length_of_quotient(&socle_ideal).finite().expect("contains J");
    Ok(SocleType {
        socle_ideal,
        cm_type: lj - ls,
    })
}

/// `μ(m) = λ(R/m²) - 1`.
pub fn embedding_dim(pres: &Arc<RingPresentation>) -> u64 {
    let m2 = pres.variable_ideal().power(2);
    length_of_quotient(&m2).finite().expect("R/m^2 is Artinian") - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn pres(vars: &[&str], rels: &[&str]) -> Arc<RingPresentation> {
        RingPresentation::parse(vars, Field::Rational, rels).unwrap()
    }

    #[test]
    fn lengths() {
        let r = pres(&["x", "y"], &[]);
        assert_eq!(length_of_quotient(&r.parse_ideal(&["x^2", "y^2"]).unwrap()), LengthValue::Finite(4));
        assert_eq!(length_of_quotient(&r.parse_ideal(&["x"]).unwrap()), LengthValue::Infinite);
        let s = pres(&["x", "y", "z"], &[]);
        let i = s.parse_ideal(&["x", "y^2", "z^2", "y*z"]).unwrap();
        assert_eq!(length_of_quotient(&i), LengthValue::Finite(3));
    }

    #[test]
    fn dimensions_and_heights() {
        let s = pres(&["x", "y", "z"], &[]);
        assert_eq!(krull_dim(&s.zero_ideal()).unwrap(), 3);
        assert!(matches!(krull_dim(&s.unit_ideal()), Err(Error::EmptyRing)));
        let r = pres(&["x", "y"], &[]);
        assert_eq!(krull_dim(&r.parse_ideal(&["x*y"]).unwrap()).unwrap(), 1);
        assert_eq!(krull_dim(&r.parse_ideal(&["x^2", "x*y"]).unwrap()).unwrap(), 1);
        assert_eq!(height(&s.parse_ideal(&["x", "y"]).unwrap()).unwrap(), 2);
        let h = pres(&["x", "y"], &["x^2-y^2"]);
        assert_eq!(height(&h.variable_ideal()).unwrap(), 1);
        assert_eq!(height(&s.parse_ideal(&["x", "y^2", "z^2", "y*z"]).unwrap()).unwrap(), 3);
        assert!(height(&s.unit_ideal()).is_err());
    }

    #[test]
    fn hilbert_samuel_examples() {
        let r = pres(&["x", "y"], &[]);
        let t = hilbert_samuel(&r.zero_ideal(), &r.variable_ideal(), 6).unwrap();
        assert_eq!(t.lambda, vec![1, 3, 6, 10, 15, 21]);
        assert_eq!(t.multiplicity, Some(1));

        let h = pres(&["x", "y"], &["x^2-y^2"]);
        assert_eq!(multiplicity(&h.zero_ideal(), &h.variable_ideal(), 40).unwrap(), 2);

        let q = r.parse_ideal(&["x^2", "y"]).unwrap();
        let t = hilbert_samuel(&r.zero_ideal(), &q, 6).unwrap();
        // λ(k[x,y]/(x^2,y)^s) = s(s+1)
        assert_eq!(t.lambda, vec![2, 6, 12, 20, 30, 42]);
        assert_eq!(multiplicity(&r.zero_ideal(), &q, 40).unwrap(), 2);
        assert!(matches!(
            hilbert_samuel(&r.zero_ideal(), &r.parse_ideal(&["x"]).unwrap(), 4),
            Err(Error::NotPrimary)
        ));
    }

    #[test]
    fn tangent_cone_route_matches_direct_route() {
        let r = pres(&["x", "y", "z"], &["x*z - y^2", "x^3 - y*z", "x^2*y - z^2"]);
        let m = r.variable_ideal();
        let a = r.zero_ideal();
        assert_eq!(
            hilbert_samuel_values(&a, &m, 6).unwrap(),
            direct_hilbert_samuel_values(&a, &m, 6).unwrap()
        );
        // k[t^3, t^4, t^5] has multiplicity 3
        assert_eq!(multiplicity(&a, &m, 40).unwrap(), 3);

        let s = pres(&["x", "y"], &["x^2 - y^3 - y^2"]);
        let a = s.zero_ideal();
        let m = s.variable_ideal();
        assert_eq!(
            hilbert_samuel_values(&a, &m, 6).unwrap(),
            direct_hilbert_samuel_values(&a, &m, 6).unwrap()
        );
        assert_eq!(multiplicity(&a, &m, 40).unwrap(), 2);
    }

    #[test]
    fn budget_exhaustion_carries_the_partial_table() {
        let r = pres(&["x", "y"], &[]);
        let err = multiplicity_table(&r.zero_ideal(), &r.variable_ideal(), 3).unwrap_err();
        let Error::BudgetExceeded { partial: Some(t), .. } = err else { panic!() };
        assert_eq!(t.lambda, vec![1, 3, 6]);
    }

    #[test]
    fn minimal_generators() {
        let r = pres(&["x", "y"], &[]);
        let g = min_gens(&r.parse_ideal(&["x", "x^2", "y"]).unwrap()).unwrap();
        assert_eq!(g.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["x", "y"]);
        assert_eq!(min_gens(&r.parse_ideal(&["x+y", "x", "y"]).unwrap()).unwrap().len(), 2);
        let s = pres(&["x", "y", "z"], &[]);
        assert_eq!(min_gens(&s.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap()).unwrap().len(), 4);
    }

    #[test]
    fn socles_and_embedding_dimension() {
        let s = pres(&["x", "y", "z"], &[]);
        let st = socle_type(&s.parse_ideal(&["x", "y^2", "z^2"]).unwrap()).unwrap();
        assert_eq!(st.cm_type, 1);
        assert!(st.socle_ideal.contains_poly(&s.poly("y*z").unwrap()).unwrap());
        let r = pres(&["x", "y"], &[]);
        let st = socle_type(&r.parse_ideal(&["x^2", "y^2"]).unwrap()).unwrap();
        assert_eq!((st.cm_type, st.socle_ideal.groebner().len()), (1, 3));
        let st = socle_type(&r.variable_ideal().power(2)).unwrap();
        assert_eq!(st.cm_type, 2);
        assert!(st.socle_ideal.equals(&r.variable_ideal()).unwrap());
        assert!(socle_type(&r.parse_ideal(&["x"]).unwrap()).is_err());

        assert_eq!(embedding_dim(&r), 2);
        assert_eq!(embedding_dim(&pres(&["x", "y"], &["x^2-y^2"])), 2);
        assert_eq!(embedding_dim(&pres(&["x", "y"], &["x^2-y"])), 1);
    }
}
