//! Verification suites, their configuration, and report emission.

mod catalog;
mod def;
mod wdoc;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::check::Check;
use crate::halfloc::NO_ZERO_DIVISORS;
use crate::roots::GENERIC_E_READING;

pub use def::{parse_algebra_def, presentation_to_def, AlgebraDef, ConstructorDef, DefDocument, DefError, RelationDef};
pub use wdoc::{minimal_w_document, minimal_w_from_document, BracketEntry, MinimalWDocument};

pub const SCHEMA_VERSION: &str = "wkernel-report/1";

/// Anchor for checks that test the artifact's own plumbing.
pub const PLUMBING: &str = "plumbing";

pub const SUITES: [&str; 8] =
    ["table1", "parity", "weyl-maps", "hat-algebra", "sl2-structure", "section5", "whittaker", "consistency"];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{name}`; known suites: {}", SUITES.join(", "))]
    UnknownSuite { name: String },
    #[error("invalid configuration: {0}")]
    ConfigError(String),
}

/// Size parameters of the suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBounds {
    /// Word length for overlap checks.
    pub consistency: u32,
    /// Hat-algebra elements use `t`-exponents in `[−window, window]`.
    pub hat_window: u32,
    pub hat_triples: usize,
    pub ev_injectivity: u32,
    pub centralizer: u32,
    /// `i, j ≤ independence` in the `t^{i/2} hʲ ψ(a)` family.
    pub independence: u32,
    pub fixed_subalgebra: u32,
    pub homomorphism_pairs: usize,
}

impl Default for DegreeBounds {
    fn default() -> Self {
        DegreeBounds {
            consistency: 4,
            hat_window: 2,
            hat_triples: 200,
            ev_injectivity: 5,
            centralizer: 4,
            independence: 3,
            fixed_subalgebra: 6,
            homomorphism_pairs: 500,
        }
    }
}

impl DegreeBounds {
    /// Sets every degree-like bound to `n` (the overlap word length to at
    /// least 3).
    pub fn with_degree(mut self, n: u32) -> Self {
        self.consistency = n.max(3);
        self.ev_injectivity = n;
        self.centralizer = n;
        self.fixed_subalgebra = n;
        self
    }

    pub fn validate(&self) -> Result<(), SuiteError> {
        let limits: [(&str, u32, u32, u32); 6] = [
            ("consistency", self.consistency, 3, 6),
            ("hat_window", self.hat_window, 1, 4),
            ("ev_injectivity", self.ev_injectivity, 1, 6),
            ("centralizer", self.centralizer, 1, 6),
            ("independence", self.independence, 0, 4),
            ("fixed_subalgebra", self.fixed_subalgebra, 1, 8),
        ];
        for (name, v, lo, hi) in limits {
            if v < lo || v > hi {
                return Err(SuiteError::ConfigError(format!("{name} = {v} outside {lo}..={hi}")));
            }
        }
        if !(1..=10_000).contains(&self.hat_triples) || self.homomorphism_pairs > 100_000 {
            return Err(SuiteError::ConfigError("hat_triples or homomorphism_pairs out of range".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub bounds: DegreeBounds,
    pub seed: u64,
    /// Extra algebras checked by the `consistency` suite.
    pub definitions: Vec<(String, DefDocument)>,
    pub format: OutputFormat,
}

impl SuiteConfig {
    pub fn new(suites: impl IntoIterator<Item = impl Into<String>>) -> Self {
        SuiteConfig {
            suites: suites.into_iter().map(Into::into).collect(),
            bounds: DegreeBounds::default(),
            seed: 0,
            definitions: Vec::new(),
            format: OutputFormat::Text,
        }
    }

    /// Every suite, in catalog order.
    pub fn all() -> Self {
        Self::new(SUITES)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_degree(mut self, n: u32) -> Self {
        self.bounds = self.bounds.with_degree(n);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    /// The identity or claim the check verifies, or [`PLUMBING`].
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        CheckEntry {
            name: name.into(),
            anchor: anchor.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            witness: (!passed).then(|| if detail.is_empty() { "check returned false".to_string() } else { detail.clone() }),
            detail,
        }
    }

    pub fn from_check(c: Check, anchor: impl Into<String>) -> Self {
        CheckEntry::new(c.name, anchor, c.passed, c.detail)
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        if self.status == Status::Fail {
            self.witness = Some(witness.into());
        }
        self
    }

    pub fn errored(name: impl Into<String>, anchor: impl Into<String>, error: impl std::fmt::Display) -> Self {
        CheckEntry {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            detail: "error".into(),
            witness: Some(error.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckEntry>,
    /// Shown in text output only, so that machine reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub seed: u64,
    pub bounds: DegreeBounds,
    pub assumptions: Vec<&'static str>,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn checks(&self) -> impl Iterator<Item = (&str, &CheckEntry)> {
        self.suites.iter().flat_map(|s| s.checks.iter().map(move |c| (s.suite.as_str(), c)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} seed={}", self.schema, self.seed);
        for s in &self.suites {
            let _ = writeln!(out, "== {} ({:.2}s)", s.suite, s.elapsed.as_secs_f64());
            for c in &s.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                let _ = write!(out, "  {tag} {}", c.name);
                if !c.detail.is_empty() && c.status != Status::Fail {
                    let _ = write!(out, ": {}", c.detail);
                }
                let _ = writeln!(out, "  [{}]", c.anchor);
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "       witness: {w}");
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} passed, {} failed, {} skipped", s.passed, s.failed, s.skipped);
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Runs the configured suites concurrently and assembles the report in
/// configuration order.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, SuiteError> {
    config.bounds.validate()?;
    if config.suites.is_empty() {
        return Err(SuiteError::ConfigError("no suites selected".into()));
    }
    for s in &config.suites {
        if !SUITES.contains(&s.as_str()) {
            return Err(SuiteError::UnknownSuite { name: s.clone() });
        }
    }
    let suites: Vec<SuiteReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .suites
            .iter()
            .map(|name| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let checks = catalog::run(name, config);
                    SuiteReport { suite: name.clone(), checks, elapsed: start.elapsed() }
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(&config.suites)
            .map(|(h, name)| {
                h.join().unwrap_or_else(|_| SuiteReport {
                    suite: name.clone(),
                    checks: vec![CheckEntry::errored("suite", PLUMBING, "suite panicked")],
                    elapsed: Duration::ZERO,
                })
            })
            .collect()
    });
    let mut summary = Summary::default();
    for c in suites.iter().flat_map(|s| &s.checks) {
        match c.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    Ok(Report {
        schema: SCHEMA_VERSION,
        seed: config.seed,
        bounds: config.bounds.clone(),
        assumptions: vec![NO_ZERO_DIVISORS, GENERIC_E_READING],
        suites,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite(&SuiteConfig::new(["nope"])), Err(SuiteError::UnknownSuite { .. })));
        let bad = SuiteConfig::new(["table1"]).with_degree(40);
        assert!(matches!(run_suite(&bad), Err(SuiteError::ConfigError(_))));
    }

    #[test]
    fn table1_suite() {
        let r = run_suite(&SuiteConfig::new(["table1"])).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.suites[0].checks.len() >= 9);
        assert!(r.checks().all(|(_, c)| !c.anchor.is_empty()));
    }

    #[test]
    fn section5_suite() {
        let r = run_suite(&SuiteConfig::new(["section5"]).with_degree(4)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}
