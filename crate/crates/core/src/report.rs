//! Check results and report aggregation shared by the verification suites and
//! the CLI.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: "pass".into(), witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: "fail".into(),
            witness: Some(witness.into()),
        }
    }

    pub fn from_bool(
        name: impl Into<String>,
        ok: bool,
        witness: impl Into<String>,
    ) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, witness)
        }
    }

    pub fn from_result(name: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(name),
            Err(w) => Self::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub params: serde_json::Value,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: serde_json::Value, checks: Vec<CheckResult>) -> Self {
        Report { schema: 1, suite: suite.into(), params, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

/// Convenience: record an operator-equality check.
pub fn check_zero_sym(
    name: impl Into<String>,
    diff: &crate::ops::SymShiftOp,
) -> CheckResult {
    if diff.is_zero() {
        CheckResult::pass(name)
    } else {
        let (nu, c) = diff.terms.iter().next().unwrap();
        CheckResult::fail(
            name,
            format!(
                "nonzero at shift {:?}: {}",
                nu,
                crate::coeff::render(c, &crate::coeff::xnames(diff.n))
            ),
        )
    }
}

/// Convenience: record a permutation-shift operator equality check.
pub fn check_zero_perm(
    name: impl Into<String>,
    diff: &crate::ops::PermShiftOp,
) -> CheckResult {
    if diff.is_zero() {
        CheckResult::pass(name)
    } else {
        let ((w, nu), c) = diff.terms.iter().next().unwrap();
        CheckResult::fail(
            name,
            format!(
                "nonzero at (w={:?}, shift={:?}): {}",
                w,
                nu,
                crate::coeff::render(c, &crate::coeff::xnames(diff.n))
            ),
        )
    }
}
