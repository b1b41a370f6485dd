//! Structured pass/fail reports for the verification suites.

use std::fmt;

/// Outcome of one relation or identity check. Failures carry a witness
/// naming the first offending entry.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CheckResult {
    pub relation: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl CheckResult {
    pub fn pass(relation: impl Into<String>) -> Self {
        CheckResult {
            relation: relation.into(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(relation: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            relation: relation.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn from_witness(relation: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => CheckResult::pass(relation),
            Some(w) => CheckResult::fail(relation, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            CheckStatus::Pass => write!(f, "PASS  {}", self.relation),
            CheckStatus::Fail => write!(
                f,
                "FAIL  {} ({})",
                self.relation,
                self.witness.as_deref().unwrap_or("no witness")
            ),
        }
    }
}

/// A collection of check results.
#[derive(Clone, Debug, Default, serde::Serialize, serde::Deserialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, r: CheckResult) {
        self.checks.push(r);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}", c)?;
        }
        Ok(())
    }
}
