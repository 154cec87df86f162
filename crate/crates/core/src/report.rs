//! Structured pass/fail records emitted by the theorem verifiers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::ideal::Ideal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisMode {
    /// Decided by computation.
    Checked,
    /// Not decidable here; `holds` records whether the user asserted it.
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub mode: HypothesisMode,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Pass,
    Fail,
    Inapplicable,
}

/// One claimed relation with its witnesses: reduced Gröbner bases for ideal
/// equalities, plain integers for numeric relations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub relation: String,
    pub holds: bool,
    pub left: Value,
    pub right: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    pub values: BTreeMap<String, Value>,
    pub conclusion: Conclusion,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: &str) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            hypotheses: Vec::new(),
            values: BTreeMap::new(),
            conclusion: Conclusion::Inapplicable,
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn checked(&mut self, name: &str, holds: bool) -> bool {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            mode: HypothesisMode::Checked,
            holds,
            detail: None,
        });
        holds
    }

    pub fn checked_with(&mut self, name: &str, holds: bool, detail: impl Into<String>) -> bool {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            mode: HypothesisMode::Checked,
            holds,
            detail: Some(detail.into()),
        });
        holds
    }

    pub fn asserted(&mut self, name: &str, by_user: bool) {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            mode: HypothesisMode::Asserted,
            holds: by_user,
            detail: None,
        });
    }

    pub fn value(&mut self, key: &str, v: impl Serialize) {
        self.values.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Records `left = right` with both reduced Gröbner bases as witnesses.
    pub fn ideal_equality(&mut self, claim: &str, left: &Ideal, right: &Ideal) -> Result<bool> {
        let holds = left.equals(right)?;
        self.certificates.push(Certificate {
            claim: claim.into(),
            relation: "=".into(),
            holds,
            left: json!(left.groebner().to_strings()),
            right: json!(right.groebner().to_strings()),
        });
        Ok(holds)
    }

    pub fn integer_relation(&mut self, claim: &str, left: i64, relation: &str, right: i64) -> bool {
        let holds = match relation {
            "=" => left == right,
            ">=" => left >= right,
            "<=" => left <= right,
            other => panic!("unknown relation {other}"),
        };
        self.certificates.push(Certificate {
            claim: claim.into(),
            relation: relation.into(),
            holds,
            left: json!(left),
            right: json!(right),
        });
        holds
    }

    /// Pass iff every checked hypothesis and every certificate holds;
    /// inapplicable when a checked hypothesis fails.
    pub fn conclude(&mut self) -> Conclusion {
        let hyps_ok = self
            .hypotheses
            .iter()
            .filter(|h| h.mode == HypothesisMode::Checked)
            .all(|h| h.holds);
        self.conclusion = if !hyps_ok {
            Conclusion::Inapplicable
        } else if self.certificates.iter().all(|c| c.holds) {
            Conclusion::Pass
        } else {
            Conclusion::Fail
        };
        self.conclusion
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    pub fn certificate(&self, claim: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.claim == claim)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}
