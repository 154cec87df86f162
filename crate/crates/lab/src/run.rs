//! Executes a parsed session in order and collects a deterministic JSON report.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use linkage_core::invariants::{multiplicity_table, ring_dim, HilbertSamuelTable};
use linkage_core::linkage::{self, analytic_spread, rees_multiplicity_table, rees_presentation};
use linkage_core::verify::{self, Assertions};
use linkage_core::{Budget, Conclusion, Error, Field, Ideal, Polynomial, RingPresentation, VerificationReport};
use serde_json::{json, Map, Value};

use crate::session::{Command, Property, Session, Statement};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub budget: Budget,
    /// Replaces the coefficient field of every ring.
    pub field: Option<Field>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    ExpectedFail,
    Computed,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExpectedFail => "expected-fail",
            Status::Computed => "computed",
        }
    }
}

pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

#[derive(Default)]
struct Env {
    rings: HashMap<String, Arc<RingPresentation>>,
    ideals: HashMap<String, (String, Ideal)>,
    asserted: HashSet<(Property, String)>,
    /// Linked ideal name to `(J, target)`.
    links: HashMap<String, (String, String)>,
    /// The last ring declared; new ideals live there.
    current: String,
}

impl Env {
    fn ring(&self, name: &str) -> &Arc<RingPresentation> {
        &self.rings[name]
    }

    fn ideal(&self, name: &str) -> &Ideal {
        &self.ideals[name].1
    }

    fn ring_name_of(&self, ideal: &str) -> &str {
        &self.ideals[ideal].0
    }

    fn has(&self, p: Property, name: &str) -> bool {
        self.asserted.contains(&(p, name.to_string()))
    }

    fn polys(&self, ring: &str, texts: &[String]) -> Result<Vec<Polynomial>, Error> {
        let r = self.ring(ring);
        texts.iter().map(|t| r.poly(t)).collect()
    }
}

fn gb(i: &Ideal) -> Value {
    json!(i.groebner().to_strings())
}

fn table_json(t: &HilbertSamuelTable) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn error_json(e: &Error) -> Value {
    let mut out = Map::new();
    out.insert("message".into(), json!(e.to_string()));
    match e {
        Error::BudgetExceeded { partial: Some(t), .. } => {
            out.insert("partial_table".into(), table_json(t));
        }
        Error::NotStabilized { depth, candidates } => {
            out.insert("depth".into(), json!(depth));
            out.insert("candidates".into(), json!([candidates.0, candidates.1]));
        }
        Error::NotRegularSequence { index, .. } => {
            out.insert("index".into(), json!(index));
        }
        _ => {}
    }
    Value::Object(out)
}

fn verdict(report: &VerificationReport, expect_fail: bool) -> Status {
    match (report.conclusion == Conclusion::Pass, expect_fail) {
        (true, false) => Status::Pass,
        (false, true) => Status::ExpectedFail,
        _ => Status::Fail,
    }
}

fn execute(env: &mut Env, stmt: &Statement, opts: &Options) -> Result<(Status, Value), Error> {
    let budget = &opts.budget;
    let report = |r: VerificationReport| -> (Status, Value) { (verdict(&r, stmt.expect_fail), r.to_json()) };
    let computed = |v: Value| -> (Status, Value) { (Status::Computed, v) };
    Ok(match &stmt.command {
        Command::Ring {
            name,
            field,
            vars,
            relations,
        } => {
            let rels: Vec<&str> = relations.iter().map(String::as_str).collect();
            let pres = RingPresentation::parse(vars, opts.field.unwrap_or(*field), &rels)?;
            let value = json!({ "ring": pres.to_string(), "dimension": ring_dim(&pres) });
            env.rings.insert(name.clone(), pres);
            (Status::Computed, value)
        }
        Command::Ideal { name, gens } => {
            let ring_name = env.current.clone();
            let polys = env.polys(&ring_name, gens)?;
            let ideal = Ideal::new(env.ring(&ring_name), polys)?;
            let value = json!({ "groebner_basis": gb(&ideal) });
            env.ideals.insert(name.clone(), (ring_name, ideal));
            (Status::Computed, value)
        }
        Command::Assert { property, target } => {
            env.asserted.insert((*property, target.clone()));
            (Status::Computed, json!({ "asserted": true }))
        }
        Command::Link { name, j, target } => {
            let data = linkage::link(env.ideal(j), env.ideal(target))?;
            let value = json!({
                "I": gb(&data.linked),
                "L1": data.l1,
                "L2": data.l2,
            });
            let ring = env.ring_name_of(j).to_string();
            env.ideals.insert(name.clone(), (ring, data.linked));
            env.links.insert(name.clone(), (j.clone(), target.clone()));
            (Status::Computed, value)
        }
        Command::CheckLinkTheorem { ring, prime, sequence } => {
            let z = env.polys(ring, sequence)?;
            let a = Assertions {
                prime: env.has(Property::Prime, prime),
                ring_cm: env.has(Property::Cm, ring),
                ..Default::default()
            };
            report(verify::verify_link_theorem(env.ring(ring), env.ideal(prime), &z, &a, budget)?)
        }
        Command::CheckMultiplicity { ring, sequence } => {
            let z = env.polys(ring, sequence)?;
            let m = env.ring(ring).variable_ideal();
            let a = Assertions {
                ring_gorenstein: env.has(Property::Gorenstein, ring),
                ..Default::default()
            };
            report(verify::verify_multiplicity_theorem(env.ring(ring), &m, &z, &a, budget)?)
        }
        Command::CheckDeltaLength { ring, sequence } => {
            let z = env.polys(ring, sequence)?;
            report(verify::delta_length(env.ring(ring), &z)?)
        }
        Command::CheckCanonical { i, j } => {
            let a = Assertions {
                ideal_cm: env.has(Property::Cm, i),
                ..Default::default()
            };
            let prime = env
                .links
                .get(i)
                .filter(|(lj, target)| lj == j && env.has(Property::Prime, target))
                .map(|(_, target)| env.ideal(target).clone());
            report(verify::verify_canonical_form(env.ideal(i), env.ideal(j), prime.as_ref(), &a, budget)?)
        }
        Command::CheckGorenstein { i, j } => {
            let a = Assertions {
                ideal_cm: env.has(Property::Cm, i),
                ..Default::default()
            };
            report(verify::gorenstein_gr_check(env.ideal(i), env.ideal(j), &a)?)
        }
        Command::CheckBound { i, j } => {
            let ring = env.ring_name_of(i).to_string();
            let a = Assertions {
                ring_gorenstein: env.has(Property::Gorenstein, &ring),
                licci: env.has(Property::Licci, i),
                generically_gorenstein: env.has(Property::GenericallyGorenstein, i),
                ..Default::default()
            };
            report(verify::multiplicity_bound_check(env.ideal(i), env.ideal(j), &a, budget)?)
        }
        Command::ComputeReductionNumber { i, j } => {
            let r = linkage::reduction_number(env.ideal(i), env.ideal(j), budget.n_max)?;
            computed(json!({ "reduction_number": r }))
        }
        Command::ComputeRees { i } => {
            let ideal = env.ideal(i);
            let rees = rees_presentation(ideal)?;
            let map: Map<String, Value> = rees
                .t_names()
                .iter()
                .zip(&rees.generators)
                .map(|(t, f)| (t.clone(), json!(f.to_string())))
                .collect();
            let table = rees_multiplicity_table(ideal, budget.s_max)?;
            computed(json!({
                "ambient": rees.ambient.to_string(),
                "generators": map,
                "presentation": gb(&rees.ideal),
                "analytic_spread": analytic_spread(ideal)?,
                "multiplicity": table.multiplicity,
                "hilbert_samuel": table_json(&table),
            }))
        }
        Command::ComputeMultiplicity { a, q } => {
            let (ai, qi) = (env.ideal(a), env.ideal(q));
            let table = multiplicity_table(ai, qi, budget.s_max)?;
            computed(table_json(&table))
        }
    })
}

/// Runs every statement; stops at the first engine error (exit code 2).
pub fn run_session(session: &Session, opts: &Options) -> Outcome {
    let mut env = Env::default();
    let mut results = Vec::new();
    let mut failed = false;
    let mut error = Value::Null;
    for stmt in &session.statements {
        if let Command::Ring { name, .. } = &stmt.command {
            env.current = name.clone();
        }
        let mut entry = Map::new();
        entry.insert("line".into(), json!(stmt.line));
        entry.insert("statement".into(), json!(stmt.to_string()));
        match execute(&mut env, stmt, opts) {
            Ok((status, value)) => {
                failed |= status == Status::Fail;
                entry.insert("status".into(), json!(status.label()));
                entry.insert("result".into(), value);
                results.push(Value::Object(entry));
            }
            Err(e) => {
                entry.insert("status".into(), json!("error"));
                entry.insert("error".into(), error_json(&e));
                results.push(Value::Object(entry));
                error = json!({ "line": stmt.line, "message": e.to_string() });
                break;
            }
        }
    }
    let exit_code = if !error.is_null() {
        2
    } else if failed {
        1
    } else {
        0
    };
    let mut report = Map::new();
    report.insert("engine".into(), json!(format!("linkage-lab {}", env!("CARGO_PKG_VERSION"))));
    report.insert("schema".into(), json!(SCHEMA_VERSION));
    report.insert(
        "budget".into(),
        json!({
            "nmax": opts.budget.n_max,
            "smax": opts.budget.s_max,
            "jdepth": opts.budget.j_depth,
            "kmax": opts.budget.k_max,
        }),
    );
    if let Some(f) = opts.field {
        report.insert("field".into(), json!(f.to_string()));
    }
    report.insert("results".into(), Value::Array(results));
    if !error.is_null() {
        report.insert("error".into(), error);
    }
    report.insert("exit_code".into(), json!(exit_code));
    Outcome {
        report: Value::Object(report),
        exit_code,
    }
}
