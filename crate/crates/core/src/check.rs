use serde::Serialize;

/// A single named verification outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    /// Passes iff `got == want`; the detail records both.
    pub fn equal(name: impl Into<String>, got: impl Into<String>, want: impl Into<String>) -> Self {
        let (got, want) = (got.into(), want.into());
        let passed = got == want;
        let detail = if passed { got } else { format!("got {got}, expected {want}") };
        Check { name: name.into(), passed, detail }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
