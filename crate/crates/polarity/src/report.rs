//! Pass/fail results with witnesses, shared by all checkers.

use serde::Serialize;

/// Outcome of a single checked obligation. Failures carry the outermost
/// witnesses as labels, in the order the obligation quantifies them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckResult {
    Pass,
    Fail { witness: Vec<String> },
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self, CheckResult::Pass)
    }

    pub fn fail<I, S>(witness: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        CheckResult::Fail {
            witness: witness.into_iter().map(Into::into).collect(),
        }
    }
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckResult::Pass => write!(f, "pass"),
            CheckResult::Fail { witness } => write!(f, "fail (witness: {})", witness.join(", ")),
        }
    }
}
