//! Acceptance run: one PASS/FAIL line per criterion with its runtime budget.
//! All comparisons are exact (integer or ideal equality).

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use linkage_core::groebner::buchberger;
use linkage_core::ideal::is_regular_sequence;
use linkage_core::invariants::{hilbert_samuel_values, min_gens};
use linkage_core::linkage::{
    analytic_spread, canonical_components, expected_canonical_components, is_self_linked, link,
    rees_multiplicity, reduction_number, ReductionNumber,
};
use linkage_core::verify::{
    delta_length, gorenstein_gr_check, multiplicity_bound_check, verify_link_theorem, Assertions,
};
use linkage_core::{Budget, Conclusion, Ideal, Polynomial, RingPresentation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::json;

use common::*;

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn gb(i: &Ideal) -> Vec<String> {
    i.groebner().to_strings()
}

fn polys(r: &std::sync::Arc<RingPresentation>, gens: &[&str]) -> Vec<Polynomial> {
    gens.iter().map(|g| r.poly(g).unwrap()).collect()
}

fn c1() -> Check {
    let r = ring(3);
    let j = r.parse_ideal(&["x", "y^2", "z^2"]).unwrap();
    let i = j.colon(&r.variable_ideal()).map_err(|e| e.to_string())?;
    let expected = ["x", "z^2", "y*z", "y^2"];
    ensure(gb(&i) == expected, format!("reduced GB {:?}", gb(&i)))?;
    Ok("reduced GB {x, y^2, yz, z^2} matches exactly".into())
}

fn c2() -> Check {
    let r = ring(3);
    let m = r.variable_ideal();
    let i = r.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap();
    let j = r.parse_ideal(&["x", "y^2", "z^2"]).unwrap();
    ensure(i.power(2).equals(&j.product(&i).unwrap()).unwrap(), "I^2 != JI")?;
    let rn = reduction_number(&i, &j, 5).unwrap();
    ensure(rn == ReductionNumber::Exactly(1), format!("reduction number {rn:?}"))?;
    ensure(
        m.product(&i).unwrap().equals(&m.product(&j).unwrap()).unwrap(),
        "mI != mJ",
    )?;
    let (l, h) = (analytic_spread(&i).unwrap(), linkage_core::invariants::height(&i).unwrap());
    ensure(l == 3 && h == 3, format!("spread {l}, height {h}"))?;
    let mu = min_gens(&i).unwrap().len();
    ensure(mu == 4, format!("mu(I) = {mu}"))?;
    Ok("I^2 = JI, r = 1, mI = mJ, l = height = 3, mu = 4".into())
}

fn c3() -> Check {
    let r = quotient(&["x", "y"], &["x^2", "x*y"]);
    let m = r.variable_ideal();
    let z = polys(&r, &["y^3"]);
    ensure(!is_regular_sequence(&z, &r).unwrap(), "y^3 accepted as regular")?;
    ensure(link(&r.ideal(z.clone()).unwrap(), &m).is_err(), "link accepted a zero divisor")?;
    let rep = verify_link_theorem(&r, &m, &z, &Assertions::default(), &Budget::default()).unwrap();
    ensure(rep.values["I"] == json!(["x", "y^2"]), format!("link {}", rep.values["I"]))?;
    ensure(rep.values["I2_equals_JI"] == json!(false), "I^2 = JI reported")?;
    ensure(!rep.hypothesis("z regular sequence").unwrap().holds, "hypothesis not recorded")?;
    ensure(rep.conclusion != Conclusion::Pass, "conclusion pass")?;
    Ok("link (x, y^2), I^2 != JI, regular-sequence hypothesis recorded as failed".into())
}

/// Hand oracle: in k[x,y,z]/(x^2 - y^2) with J = (y, z), x·x = y^2 ∈ J and x·y, x·z ∈ J,
/// so J : m = m; m^2 = (x^2, xy, xz, y^2, yz, z^2) = Jm since x^2 = y^2. R/J = k[x]/(x^2)
/// has socle (x), so s = 1 and μ(m) = 3 = 2 + 1.
fn c4() -> Check {
    let r = quotient(&["x", "y", "z"], &["x^2-y^2"]);
    let m = r.variable_ideal();
    let rep = verify_link_theorem(&r, &m, &polys(&r, &["y", "z"]), &Assertions::default(), &Budget::default())
        .unwrap();
    ensure(rep.values["I"] == json!(gb(&m)), "I != m")?;
    ensure(rep.values["I2_equals_JI"] == json!(true), "I^2 != JI")?;
    ensure(rep.values["analytic_spread"] == rep.values["height"], "not equimultiple")?;
    ensure(rep.values["socle_type"] == json!(1), "s != 1")?;
    ensure(rep.values["mu_I"] == json!(3), "mu != 3")?;
    ensure(rep.conclusion == Conclusion::Pass, format!("{:?}", rep.conclusion))?;
    Ok("I = m, I^2 = JI, l = height = 2, s = 1, mu = 3".into())
}

fn c5() -> Check {
    let r = ring(3);
    let i = r.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap();
    let j = r.parse_ideal(&["x", "y^2", "z^2"]).unwrap();
    let e_i = rees_multiplicity(&i, 40).map_err(|e| e.to_string())?;
    let e_j = rees_multiplicity(&j, 40).map_err(|e| e.to_string())?;
    let (a1, a2) = (1u64, 2u64);
    let formula = (1 + a1 + a1 * a2) * linkage_core::invariants::multiplicity(&r.zero_ideal(), &r.variable_ideal(), 40).unwrap();
    ensure(e_i == 4 && e_j == 4 && formula == 4, format!("e_I {e_i}, e_J {e_j}, formula {formula}"))?;
    Ok("e(M, R[It]) = e(N, R[Jt]) = 4 = (1 + 1 + 1*2) * 1".into())
}

/// Hand oracle, using `J^a : J^b = J^(a-b)` for the regular sequence J, `JI = I^2` and
/// `(A : BC) = (A : B) : C`. Degree 1: every term is `J^(j-1) : J^(j-1) I = R`. Degree 2:
/// every term is `J : I = m`. Degree 3: `J ∩ (J^2 : I)`; modulo `mJ` the elements of J are
/// spanned by x, y^2, z^2 and their products with yz are independent modulo J^2, while
/// `mJ I = J mJ ⊆ J^2`; so the component is `mJ = mI`.
fn c6() -> Check {
    let r = ring(3);
    let m = r.variable_ideal();
    let i = r.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap();
    let j = r.parse_ideal(&["x", "y^2", "z^2"]).unwrap();
    let depth = 5;
    let cc = canonical_components(&i, &j, 3, depth).map_err(|e| e.to_string())?;
    ensure(cc.g == 3, format!("g = {}", cc.g))?;
    ensure(cc.components[0].is_unit(), "omega_1 != R")?;
    ensure(cc.components[1].equals(&m).unwrap(), "omega_2 != m")?;
    ensure(cc.components[2].equals(&m.product(&i).unwrap()).unwrap(), "omega_3 != mI")?;
    let expected = expected_canonical_components(3, &cc.l, &i, 3).unwrap();
    for (k, (a, b)) in cc.components.iter().zip(&expected).enumerate() {
        ensure(a.equals(b).unwrap(), format!("omega_{} differs from the expected form", k + 1))?;
    }
    ensure(cc.l.equals(&m).unwrap(), "J : I != m")?;
    Ok(format!("omega = (R, m, mI), stable at depths {depth} and {}, J : I = m", depth + 1))
}

fn c7() -> Check {
    let r = ring(3);
    let i = r.parse_ideal(&["x", "y^2", "y*z", "z^2"]).unwrap();
    let j = r.parse_ideal(&["x", "y^2", "z^2"]).unwrap();
    let rep = gorenstein_gr_check(&i, &j, &Assertions::default()).unwrap();
    ensure(rep.values["gr_gorenstein"] == json!(false), "gr reported Gorenstein")?;
    let h = quotient(&["x", "y"], &["x^2-y^2"]);
    let a = is_self_linked(&h.variable_ideal(), &h.parse_ideal(&["y"]).unwrap()).unwrap();
    let b = is_self_linked(&r.parse_ideal(&["x", "y"]).unwrap(), &r.parse_ideal(&["x^2", "y"]).unwrap()).unwrap();
    ensure(a && b, format!("self-linked: {a}, {b}"))?;
    Ok("gr not Gorenstein (L = m != I); both self-linked instances confirmed".into())
}

fn c8() -> Check {
    let s = quotient(&["x", "y", "z"], &["x*z-y^2", "x^3-y*z", "x^2*y-z^2"]);
    let rep = delta_length(&s, &polys(&s, &["x"])).unwrap();
    ensure(
        rep.values["s"] == json!(2) && rep.values["length_delta"] == json!(3),
        format!("semigroup s {}, delta {}", rep.values["s"], rep.values["length_delta"]),
    )?;
    let a = quotient(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]);
    let rep = delta_length(&a, &[]).unwrap();
    ensure(
        rep.values["s"] == json!(3) && rep.values["length_delta"] == json!(6),
        format!("artinian s {}, delta {}", rep.values["s"], rep.values["length_delta"]),
    )?;
    Ok("semigroup ring s = 2, delta = 3; k[x,y]/m^3 s = 3, delta = 6".into())
}

fn c9() -> Check {
    let a = Assertions {
        ring_gorenstein: true,
        licci: true,
        generically_gorenstein: true,
        ..Default::default()
    };
    let r = ring(3);
    let rep1 = multiplicity_bound_check(
        &r.parse_ideal(&["x", "y"]).unwrap(),
        &r.parse_ideal(&["x^2", "y"]).unwrap(),
        &a,
        &Budget::default(),
    )
    .unwrap();
    let h = quotient(&["x", "y"], &["x^2-y^2"]);
    let rep2 = multiplicity_bound_check(&h.variable_ideal(), &h.parse_ideal(&["y"]).unwrap(), &a, &Budget::default())
        .unwrap();
    let pair = |r: &linkage_core::VerificationReport| (r.values["e_R_mod_I"].clone(), r.values["bound"].clone());
    ensure(pair(&rep1) == (json!(1), json!(0)), format!("first {:?}", pair(&rep1)))?;
    ensure(pair(&rep2) == (json!(1), json!(1)), format!("second {:?}", pair(&rep2)))?;
    ensure(
        rep1.conclusion == Conclusion::Pass && rep2.conclusion == Conclusion::Pass,
        "bound check did not pass",
    )?;
    Ok("1 >= 0 and 1 >= 1".into())
}

fn shuffled_gb_canonicity(rng: &mut StdRng) -> Result<(), String> {
    for case in 0..200 {
        let nvars = rng.gen_range(1..=4);
        let r = ring(nvars);
        let n = rng.gen_range(1..=4);
        let mut gens = Vec::new();
        for _ in 0..n {
            let a = monomial_text(&random_exps(rng, nvars, 4));
            if rng.gen_bool(0.5) {
                let b = monomial_text(&random_exps(rng, nvars, 4));
                let c = rng.gen_range(-3i32..=3);
                gens.push(format!("{a} - ({c})*{b}"));
            } else {
                gens.push(a);
            }
        }
        let mut ps = polys(&r, &gens.iter().map(String::as_str).collect::<Vec<_>>());
        let base = buchberger(r.ring(), &ps);
        for _ in 0..3 {
            ps.shuffle(rng);
            let scaled: Vec<Polynomial> = ps
                .iter()
                .map(|p| p.scale(&r.field().from_i64(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 })))
                .collect();
            let again = buchberger(r.ring(), &scaled);
            ensure(again == base, format!("case {case}: {gens:?} gave {:?} vs {:?}", again.to_strings(), base.to_strings()))?;
        }
    }
    Ok(())
}

fn colon_against_divisibility(rng: &mut StdRng) -> Result<(), String> {
    for case in 0..200 {
        let nvars = rng.gen_range(1..=3);
        let r = ring(nvars);
        let a = random_monomial_ideal(rng, nvars, 4, 4);
        let b = random_monomial_ideal(rng, nvars, 3, 3);
        let colon = monomial_ideal(&r, &a).colon(&monomial_ideal(&r, &b)).unwrap();
        let top = a.iter().map(|g| g.iter().sum::<u32>()).max().unwrap();
        for f in monomials_up_to(nvars, top) {
            let f_poly = r.poly(&monomial_text(&f)).unwrap();
            let got = colon.contains_poly(&f_poly).unwrap();
            ensure(got == in_colon(&f, &a, &b), format!("case {case}: {a:?} : {b:?} at {f:?}"))?;
        }
    }
    Ok(())
}

fn hilbert_samuel_against_counting(rng: &mut StdRng) -> Result<(), String> {
    for case in 0..50 {
        let nvars = rng.gen_range(1..=3);
        let r = ring(nvars);
        let a = random_monomial_ideal(rng, nvars, 4, 3);
        let ai = monomial_ideal(&r, &a);
        let got = hilbert_samuel_values(&ai, &r.variable_ideal(), 7).unwrap();
        ensure(got == brute_hilbert_samuel(nvars, &a, 7), format!("case {case}: m-adic on {a:?}"))?;
        if case % 2 == 0 {
            let c: Vec<u32> = (0..nvars).map(|_| rng.gen_range(1..=2)).collect();
            let q: Vec<Exps> = (0..nvars)
                .map(|i| (0..nvars).map(|k| if k == i { c[i] } else { 0 }).collect())
                .collect();
            let got = hilbert_samuel_values(&ai, &monomial_ideal(&r, &q), 4).unwrap();
            ensure(
                got == brute_hilbert_samuel_diagonal(&a, &c, 4),
                format!("case {case}: {q:?}-adic on {a:?}"),
            )?;
        }
    }
    Ok(())
}

fn double_links() -> Result<usize, String> {
    let cases: Vec<(std::sync::Arc<RingPresentation>, Vec<&str>)> = vec![
        (ring(3), vec!["x", "y^2", "z^2"]),
        (quotient(&["x", "y", "z"], &["x^2-y^2"]), vec!["y", "z"]),
        (quotient(&["x", "y", "z"], &["x*y-z^2"]), vec!["x", "y"]),
        (quotient(&["x", "y", "z"], &["x*z-y^2", "x^3-y*z", "x^2*y-z^2"]), vec!["x"]),
        (
            RingPresentation::parse(&["x", "y", "z"], linkage_core::Field::Prime(32003), &[]).unwrap(),
            vec!["x", "y^2", "z^2"],
        ),
    ];
    for (r, z) in &cases {
        let m = r.variable_ideal();
        let j = r.parse_ideal(z).unwrap();
        let i = link(&j, &m).unwrap().linked;
        let back = link(&j, &i).unwrap().linked;
        ensure(back.equals(&m).unwrap(), format!("J : (J : m) != m over {r}"))?;
    }
    Ok(cases.len())
}

fn c10() -> Check {
    let mut rng = StdRng::seed_from_u64(0x11e4);
    shuffled_gb_canonicity(&mut rng)?;
    colon_against_divisibility(&mut rng)?;
    hilbert_samuel_against_counting(&mut rng)?;
    let n = double_links()?;
    Ok(format!("200 GB shuffles, 200 colons, 50 Hilbert-Samuel, {n} double links"))
}

fn main() -> ExitCode {
    let criteria: [(u32, Duration, fn() -> Check); 10] = [
        (1, Duration::from_secs(1), c1),
        (2, Duration::from_secs(2), c2),
        (3, Duration::from_secs(1), c3),
        (4, Duration::from_secs(2), c4),
        (5, Duration::from_secs(300), c5),
        (6, Duration::from_secs(30), c6),
        (7, Duration::from_secs(5), c7),
        (8, Duration::from_secs(5), c8),
        (9, Duration::from_secs(2), c9),
        (10, Duration::from_secs(120), c10),
    ];
    let mut failures = 0;
    for (id, budget, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        failures += usize::from(!pass);
        println!(
            "criterion {id:>2}  {}  exact  {:.2}s / {}s  {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
        );
    }
    if failures == 0 {
        println!("acceptance: 10/10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
