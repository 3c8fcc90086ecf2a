//! Structured result of one verification run.
//!
//! Exact values travel as `"p/q"` strings next to a float shadow, so a report
//! re-parsed from JSON reproduces every exact field.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::exactmath::Rational;
use crate::identities::TruncationPlan;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
    Unsupported,
}

impl Verdict {
    /// pass 0, fail 1, error 2, unsupported scope 3.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
            Verdict::Unsupported => 3,
        }
    }

    /// Worst of two verdicts: error > unsupported > fail > pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        fn rank(v: Verdict) -> u8 {
            match v {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Unsupported => 2,
                Verdict::Error => 3,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: Rational,
    pub approx: Option<f64>,
}

impl From<&Rational> for ExactValue {
    fn from(r: &Rational) -> Self {
        ExactValue {
            exact: r.clone(),
            approx: r.to_f64(),
        }
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue::from(&r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub max_part: usize,
    /// Relative residual `|S_M - RHS| / |RHS|` of the partial sum, as a double.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SubCheck {
    /// Exact equality check; the residual is `lhs - rhs`.
    pub fn equality(name: impl Into<String>, lhs: &Rational, rhs: &Rational) -> Self {
        let residual = lhs - rhs;
        SubCheck {
            name: name.into(),
            passed: residual.is_zero(),
            lhs: Some(lhs.into()),
            rhs: Some(rhs.into()),
            residual: Some(residual.into()),
            note: None,
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool, note: impl Into<String>) -> Self {
        SubCheck {
            name: name.into(),
            passed,
            lhs: None,
            rhs: None,
            residual: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub plan: Option<TruncationPlan>,
    pub lhs: Option<ExactValue>,
    pub rhs: Option<ExactValue>,
    pub residual: Option<ExactValue>,
    pub trace: Vec<TracePoint>,
    #[serde(default)]
    pub checks: Vec<SubCheck>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub runtime_ms: u64,
    pub version: String,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            plan: None,
            lhs: None,
            rhs: None,
            residual: None,
            trace: Vec::new(),
            checks: Vec::new(),
            verdict: Verdict::Pass,
            message: None,
            runtime_ms: 0,
            version: VERSION.to_string(),
        }
    }

    pub fn error(suite: impl Into<String>, err: &crate::Error) -> Self {
        let mut r = Report::new(suite);
        r.verdict = Verdict::Error;
        r.message = Some(err.to_string());
        r
    }

    pub fn push(&mut self, check: SubCheck) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Sets the verdict from the sub-checks (pass iff all pass) and, when no
    /// headline values were set, uses the first failing check's values or
    /// else the first check's.
    pub fn finish(&mut self, started: Instant) {
        if self.verdict == Verdict::Pass && self.checks.iter().any(|c| !c.passed) {
            self.verdict = Verdict::Fail;
        }
        if self.lhs.is_none() && self.rhs.is_none() {
            let pick = self
                .checks
                .iter()
                .find(|c| !c.passed && c.lhs.is_some())
                .or_else(|| self.checks.iter().find(|c| c.lhs.is_some()));
            if let Some(c) = pick {
                self.lhs = c.lhs.clone();
                self.rhs = c.rhs.clone();
                self.residual = c.residual.clone();
            }
        }
        self.runtime_ms = started.elapsed().as_millis() as u64;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Copy with `runtime_ms` zeroed, for determinism comparisons.
    pub fn without_runtime(&self) -> Self {
        Report {
            runtime_ms: 0,
            ..self.clone()
        }
    }
}
