//! Machine-readable outcomes of property-check runs.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::space::ModelSpace;
use crate::tol::Tol;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub check: String,
    pub pass: bool,
    /// Present exactly when the case fails.
    pub witness: Option<Value>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub skipped: bool,
    #[serde(default)]
    pub detail: String,
}

impl Case {
    /// A case outcome. A failing case without an element witness records its
    /// detail message as the witness.
    pub fn with_witness(
        check: &str,
        pass: bool,
        witness: Option<Value>,
        trials: usize,
        seed: u64,
        detail: &str,
    ) -> Self {
        let witness = if pass {
            None
        } else {
            Some(witness.unwrap_or_else(|| serde_json::json!({ "note": detail })))
        };
        Case {
            check: check.to_string(),
            pass,
            witness,
            trials,
            seed,
            skipped: false,
            detail: detail.to_string(),
        }
    }

    pub fn simple(check: &str, pass: bool, seed: u64, detail: &str) -> Self {
        Self::with_witness(check, pass, None, 1, seed, detail)
    }

    pub fn skipped(check: &str, seed: u64, reason: &str) -> Self {
        Case {
            check: check.to_string(),
            pass: true,
            witness: None,
            trials: 0,
            seed,
            skipped: true,
            detail: reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub tolerances: Tol,
    pub models: Vec<String>,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub environment: Environment,
}

impl Report {
    pub fn new(suite: &str, space: &ModelSpace) -> Self {
        Report {
            suite: suite.to_string(),
            cases: Vec::new(),
            summary: Summary::default(),
            environment: Environment {
                tolerances: *space.tol(),
                models: vec![space.descriptor()],
                version: VERSION.to_string(),
            },
        }
    }

    pub fn empty() -> Self {
        Report {
            suite: String::new(),
            cases: Vec::new(),
            summary: Summary::default(),
            environment: Environment {
                tolerances: Tol::default(),
                models: Vec::new(),
                version: VERSION.to_string(),
            },
        }
    }

    pub fn push(&mut self, case: Case) {
        if case.skipped {
            self.summary.skipped += 1;
        } else if case.pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.cases.push(case);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.cases {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Canonical JSON text: every float printed with 17 significant digits.
    pub fn to_json_string(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&crate::json::canonical(v)).expect("value serializes")
    }
}

/// Concatenates reports. Cases are ordered by (suite, check) with a stable sort,
/// model descriptors are unioned, summaries are recomputed.
pub fn merge_reports(reports: Vec<Report>) -> Result<Report> {
    let mut iter = reports.into_iter();
    let Some(first) = iter.next() else {
        return Ok(Report::empty());
    };
    let mut tagged: Vec<(String, Case)> = first
        .cases
        .iter()
        .cloned()
        .map(|c| (first.suite.clone(), c))
        .collect();
    let mut env = first.environment.clone();
    let mut suites = vec![first.suite.clone()];
    for r in iter {
        if r.environment.version != env.version {
            return Err(Error::VersionMismatch(
                env.version.clone(),
                r.environment.version.clone(),
            ));
        }
        for m in &r.environment.models {
            if !env.models.contains(m) {
                env.models.push(m.clone());
            }
        }
        if !suites.contains(&r.suite) {
            suites.push(r.suite.clone());
        }
        tagged.extend(r.cases.into_iter().map(|c| (r.suite.clone(), c)));
    }
    tagged.sort_by(|(s1, c1), (s2, c2)| (s1, &c1.check).cmp(&(s2, &c2.check)));
    let mut out = Report {
        suite: suites.join("+"),
        cases: Vec::new(),
        summary: Summary::default(),
        environment: env,
    };
    for (_, c) in tagged {
        out.push(c);
    }
    Ok(out)
}
