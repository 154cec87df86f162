//! One verifier per statement: each records its hypotheses, computed values and
//! certificates in a [`VerificationReport`] instead of failing.

use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::ideal::{regular_sequence_failure, Ideal};
use crate::invariants::{
    height, length_of_quotient, min_gens, multiplicity, ring_dim, socle_type, LengthValue,
};
use crate::linkage::{
    analytic_spread, canonical_components, expected_canonical_components, link_conditions,
    rees_multiplicity_table, reduction_number, Budget, TriState,
};
use crate::poly::Polynomial;
use crate::presentation::RingPresentation;
use crate::report::VerificationReport;

/// Hypotheses supplied by the user because they are not decided here.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assertions {
    pub prime: bool,
    pub ring_cm: bool,
    pub ring_gorenstein: bool,
    pub ideal_cm: bool,
    pub licci: bool,
    pub generically_gorenstein: bool,
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn gb_strings(i: &Ideal) -> serde_json::Value {
    json!(i.groebner().to_strings())
}

fn finite(l: LengthValue) -> Option<i64> {
    l.finite().map(|v| v as i64)
}

fn check_ring(pres: &Arc<RingPresentation>, i: &Ideal) -> Result<()> {
    if i.presentation() != pres {
        return Err(Error::Structural("ideal belongs to another ring".into()));
    }
    Ok(())
}

fn tri(t: TriState) -> &'static str {
    match t {
        TriState::Yes => "yes",
        TriState::No => "no",
        TriState::Unknown => "unknown",
    }
}

/// Hypotheses shared by the link statements: `z ⊆ p`, `z` regular, `|z| = height p`,
/// and L1 or L2. Returns `(J, all hold)`.
fn link_hypotheses(
    report: &mut VerificationReport,
    pres: &Arc<RingPresentation>,
    p: &Ideal,
    z: &[Polynomial],
) -> Result<(Ideal, bool)> {
    check_ring(pres, p)?;
    if p.is_unit() {
        return Err(Error::Domain("the target ideal must be proper".into()));
    }
    let j = Ideal::new(pres, z.to_vec())?;
    let inside = report.checked("z inside p", p.contains(&j)?);
    let regular = match regular_sequence_failure(z, pres)? {
        None => report.checked("z regular sequence", true),
        Some((index, reason)) => {
            report.checked_with("z regular sequence", false, format!("index {index}: {reason}"))
        }
    };
    let hp = height(p)?;
    let length = report.checked_with("|z| = height p", z.len() == hp, format!("{} vs {hp}", z.len()));
    let (l1, l2) = link_conditions(p, z)?;
    report.value("L1", tri(l1));
    report.value("L2", tri(l2));
    let l = report.checked_with(
        "L1 or L2",
        l1.is_yes() || l2.is_yes(),
        format!("L1 {}, L2 {}", tri(l1), tri(l2)),
    );
    Ok((j, inside && regular && length && l))
}

/// Links of primes by regular sequences: `I = J : p` has `I^2 = JI`, is equimultiple,
/// and for `p = m` satisfies `mI = mJ`, `μ(I) = |z| + s` and `λ(I/J) = s`.
pub fn verify_link_theorem(
    pres: &Arc<RingPresentation>,
    p: &Ideal,
    z: &[Polynomial],
    assertions: &Assertions,
    budget: &Budget,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("link-theorem");
    let (j, _) = link_hypotheses(&mut report, pres, p, z)?;
    report.asserted("p prime", assertions.prime);
    report.asserted("R Cohen-Macaulay", assertions.ring_cm);

    let i = j.colon(p)?;
    report.value("I", gb_strings(&i));
    report.value("J", gb_strings(&j));
    let square = i.power(2);
    let ji = j.product(&i)?;
    let reduction = report.ideal_equality("I^2 = JI", &square, &ji)?;
    report.value("I2_equals_JI", reduction);
    if i.contains(&j)? {
        report.value("reduction_number", reduction_number(&i, &j, budget.n_max)?);
    }

    let m = pres.variable_ideal();
    if !i.is_unit() && m.contains(&i)? {
        let spread = analytic_spread(&i)? as i64;
        let h = height(&i)? as i64;
        report.value("analytic_spread", spread);
        report.value("height", h);
        report.integer_relation("analytic spread = height", spread, "=", h);
    }

    if p.equals(&m)? {
        report.ideal_equality("mI = mJ", &m.product(&i)?, &m.product(&j)?)?;
        if let (Some(lj), Some(li)) = (finite(length_of_quotient(&j)), finite(length_of_quotient(&i))) {
            let s = socle_type(&j)?.cm_type as i64;
            let mu = min_gens(&i)?.len() as i64;
            report.value("socle_type", s);
            report.value("mu_I", mu);
            report.value("length_I_mod_J", lj - li);
            report.integer_relation("mu(I) = |z| + s", mu, "=", z.len() as i64 + s);
            report.integer_relation("length(I/J) = s", lj - li, "=", s);
        } else {
            report.note("R/J is not Artinian; socle statements skipped");
        }
    }
    report.conclude();
    Ok(report)
}

/// For `I = J : m` with `mI ⊆ J`: `s = λ(I/J)`, `λ(I^2/JI)` and
/// `λ(δ(I)) = C(s+1, 2) - λ(I^2/JI)`, which equals `C(s+1, 2)` exactly when `I^2 = JI`.
pub fn delta_length(pres: &Arc<RingPresentation>, z: &[Polynomial]) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("delta-length");
    let j = Ideal::new(pres, z.to_vec())?;
    let lj = finite(length_of_quotient(&j));
    if !report.checked("R/(z) Artinian", lj.is_some()) {
        report.conclude();
        return Ok(report);
    }
    let lj = lj.unwrap();
    match regular_sequence_failure(z, pres)? {
        None => report.checked("z regular sequence", true),
        Some((index, reason)) => {
            report.checked_with("z regular sequence", false, format!("index {index}: {reason}"))
        }
    };
    let d = ring_dim(pres);
    report.checked_with("|z| = dim R", z.len() == d, format!("{} vs {d}", z.len()));

    let m = pres.variable_ideal();
    let i = j.colon(&m)?;
    report.value("I", gb_strings(&i));
    report.checked("mI inside J", j.contains(&m.product(&i)?)?);

    let li = finite(length_of_quotient(&i)).expect("I contains J");
    let s = lj - li;
    let l_ji = finite(length_of_quotient(&j.product(&i)?)).expect("JI contains J^2");
    let l_sq = finite(length_of_quotient(&i.power(2))).expect("I^2 contains J^2");
    let excess = l_ji - l_sq;
    let sym = binomial(s + 1, 2);
    let delta = sym - excess;
    report.value("s", s);
    report.value("length_I2_mod_JI", excess);
    report.value("length_S2", sym);
    report.value("length_delta", delta);
    report.checked_with("s >= 2", s >= 2, format!("s = {s}"));
    let holds = report.integer_relation("length(delta) = C(s+1, 2)", delta, "=", sym);
    report.value("formula_verified", holds && s >= 2);
    report.conclude();
    Ok(report)
}

/// Shared gate for the canonical-module statements: `J ⊆ I` regular, `g >= 2`,
/// `I^2 = JI`. Returns `g` when the ideal is proper.
fn canonical_hypotheses(
    report: &mut VerificationReport,
    i: &Ideal,
    j: &Ideal,
    ideal_cm: bool,
) -> Result<(Option<usize>, bool)> {
    if i.presentation() != j.presentation() {
        return Err(Error::Structural("ideals from different rings".into()));
    }
    let proper = report.checked("I proper", !i.is_unit());
    let inside = report.checked("J inside I", i.contains(j)?);
    let regular = match regular_sequence_failure(&j.reduced_gens(), j.presentation())? {
        None => report.checked("J regular sequence", true),
        Some((index, reason)) => {
            report.checked_with("J regular sequence", false, format!("index {index}: {reason}"))
        }
    };
    if !proper {
        return Ok((None, false));
    }
    let g = height(i)?;
    report.value("g", g);
    let tall = report.checked_with("height >= 2", g >= 2, format!("g = {g}"));
    let reduction = i.power(2).equals(&j.product(i)?)?;
    report.value("I2_equals_JI", reduction);
    let reduction = report.checked("I^2 = JI", reduction);
    report.asserted("I Cohen-Macaulay", ideal_cm);
    Ok((Some(g), inside && regular && tall && reduction))
}

/// Componentwise canonical module of `R[It]` against `R, ..., R, L, LI, LI^2, ...`;
/// with a prime, also `J : I = p`.
pub fn verify_canonical_form(
    i: &Ideal,
    j: &Ideal,
    prime: Option<&Ideal>,
    assertions: &Assertions,
    budget: &Budget,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("canonical-form");
    let (g, ok) = canonical_hypotheses(&mut report, i, j, assertions.ideal_cm)?;
    let distinct = report.checked("I != J", !i.equals(j)?);
    let Some(g) = g.filter(|_| ok && distinct) else {
        report.conclude();
        return Ok(report);
    };
    let k_max = budget.k_max.unwrap_or(g + 2);
    let depth = budget.j_depth.unwrap_or(g + 2);
    let cc = canonical_components(i, j, k_max, depth)?;
    report.value("L", gb_strings(&cc.l));
    report.value("stabilization_depth", json!([depth, depth + 1]));
    let expected = expected_canonical_components(g, &cc.l, i, k_max)?;
    for (k, (got, want)) in cc.components.iter().zip(&expected).enumerate() {
        report.ideal_equality(&format!("omega_{}", k + 1), got, want)?;
    }
    if let Some(p) = prime {
        report.ideal_equality("J : I = p", &cc.l, p)?;
    }
    report.conclude();
    Ok(report)
}

/// `gr_I(R)` is Gorenstein iff `I = J : I`; passes iff `I` is self-linked.
pub fn gorenstein_gr_check(i: &Ideal, j: &Ideal, assertions: &Assertions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("gorenstein-gr");
    let (_, ok) = canonical_hypotheses(&mut report, i, j, assertions.ideal_cm)?;
    if i.contains(j)? && !j.is_zero() {
        let l = j.colon(i)?;
        report.value("L", gb_strings(&l));
        let self_linked = l.equals(i)?;
        report.value("self_linked", self_linked);
        if ok {
            report.value("gr_gorenstein", self_linked);
        }
        report.ideal_equality("I = J : I", i, &l)?;
    }
    report.conclude();
    Ok(report)
}

/// `e(M, R[It]) = e(N, R[Jt])` for `I = J : m`, with the degree formula
/// `(1 + a1 + a1 a2) e(R)` for three homogeneous generators of a polynomial ring.
pub fn verify_multiplicity_theorem(
    pres: &Arc<RingPresentation>,
    p: &Ideal,
    z: &[Polynomial],
    assertions: &Assertions,
    budget: &Budget,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("multiplicity-theorem");
    check_ring(pres, p)?;
    let m = pres.variable_ideal();
    let maximal = report.checked("p = m", p.equals(&m)?);
    let (j, ok) = link_hypotheses(&mut report, pres, p, z)?;
    report.asserted("R Gorenstein", assertions.ring_gorenstein);
    let i = j.colon(p)?;
    let distinct = report.checked("I != J", !i.equals(&j)?);
    report.value("I", gb_strings(&i));
    if !(maximal && ok && distinct) {
        report.conclude();
        return Ok(report);
    }
    let e_i = rees_multiplicity_table(&i, budget.s_max)?;
    let e_j = rees_multiplicity_table(&j, budget.s_max)?;
    let (e_i, e_j) = (e_i.multiplicity.unwrap() as i64, e_j.multiplicity.unwrap() as i64);
    report.value("e_I", e_i);
    report.value("e_J", e_j);
    report.integer_relation("e(M, R[It]) = e(N, R[Jt])", e_i, "=", e_j);

    let gens = j.reduced_gens();
    if pres.is_polynomial_ring()
        && ring_dim(pres) == 3
        && gens.len() == 3
        && gens.iter().all(|f| f.is_homogeneous())
    {
        let mut a: Vec<i64> = gens.iter().map(|f| f.degree().unwrap_or(0) as i64).collect();
        a.sort_unstable();
        let e_r = multiplicity(&pres.zero_ideal(), &m, budget.s_max)? as i64;
        report.value("degrees", &a);
        report.value("e_R", e_r);
        let formula = (1 + a[0] + a[0] * a[1]) * e_r;
        report.integer_relation("e(N, R[Jt]) = (1 + a1 + a1 a2) e(R)", e_j, "=", formula);
    }
    report.conclude();
    Ok(report)
}

/// For a self-linked `I = J : I` of height `g` with `β1` minimal generators:
/// `e(R/I) >= C(β1 - g + 1, 2)`.
pub fn multiplicity_bound_check(
    i: &Ideal,
    j: &Ideal,
    assertions: &Assertions,
    budget: &Budget,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("multiplicity-bound");
    if i.presentation() != j.presentation() {
        return Err(Error::Structural("ideals from different rings".into()));
    }
    if !report.checked("I proper", !i.is_unit()) {
        report.conclude();
        return Ok(report);
    }
    let inside = report.checked("J inside I", i.contains(j)?);
    let regular = match regular_sequence_failure(&j.reduced_gens(), j.presentation())? {
        None => report.checked("J regular sequence", true),
        Some((index, reason)) => {
            report.checked_with("J regular sequence", false, format!("index {index}: {reason}"))
        }
    };
    let g = height(i)?;
    let len = j.reduced_gens().len();
    let length = report.checked_with("J generated by g elements", len == g, format!("{len} vs {g}"));
    let l = j.colon(i)?;
    let self_linked = report.checked("I = J : I", inside && l.equals(i)?);
    report.value("L", gb_strings(&l));
    report.asserted("R Gorenstein", assertions.ring_gorenstein);
    report.asserted("licci", assertions.licci);
    report.asserted("generically Gorenstein", assertions.generically_gorenstein);
    if !(inside && regular && length && self_linked) {
        report.conclude();
        return Ok(report);
    }
    let m = i.presentation().variable_ideal();
    let e = multiplicity(i, &m, budget.s_max)? as i64;
    let beta = min_gens(i)?.len() as i64;
    let bound = binomial(beta - g as i64 + 1, 2);
    report.value("e_R_mod_I", e);
    report.value("beta_1", beta);
    report.value("g", g);
    report.value("bound", bound);
    report.integer_relation("e(R/I) >= C(beta_1 - g + 1, 2)", e, ">=", bound);
    report.conclude();
    Ok(report)
}
