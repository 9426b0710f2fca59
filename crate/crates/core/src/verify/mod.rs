//! Verification suites: numerical cross-checks of the library's identities.

pub mod oracles;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use suites::{
    run_asymptotic, run_bessel, run_classifier, run_completeness_delta, run_cross_representation,
    run_moments, run_orthonormality, run_parseval, ParsevalKind,
};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x05ee_d2f1;

/// One measured deviation and the tolerance it is held to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub description: String,
    /// Measured error; infinite when the case could not be computed.
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CaseResult {
    pub fn new(description: impl Into<String>, error: f64, tolerance: f64) -> Self {
        Self {
            description: description.into(),
            error,
            tolerance,
            pass: error <= tolerance,
        }
    }

    /// A case whose computation failed.
    pub fn failed(description: impl Into<String>, err: &Error, tolerance: f64) -> Self {
        Self {
            description: format!("{}: {err}", description.into()),
            error: f64::INFINITY,
            tolerance,
            pass: false,
        }
    }

    pub fn from_result(
        description: impl Into<String>,
        measured: Result<f64>,
        tolerance: f64,
    ) -> Self {
        match measured {
            Ok(e) => Self::new(description, e, tolerance),
            Err(err) => Self::failed(description, &err, tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cases: Vec<CaseResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl VerificationReport {
    /// Cases are sorted by description so the report does not depend on
    /// evaluation order.
    pub fn new(suite: impl Into<String>, mut cases: Vec<CaseResult>) -> Self {
        cases.sort_by(|a, b| a.description.cmp(&b.description));
        Self {
            suite: suite.into(),
            seed: None,
            cases,
            runtime_seconds: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Replaces every tolerance and re-evaluates the pass flags.
    pub fn override_tolerance(&mut self, tolerance: f64) {
        for c in &mut self.cases {
            c.tolerance = tolerance;
            c.pass = c.error <= tolerance;
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .cases
            .iter()
            .map(|c| c.description.chars().count())
            .max()
            .unwrap_or(0)
            .max(11);
        writeln!(f, "suite: {}", self.suite)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {seed}")?;
        }
        writeln!(
            f,
            "{:<width$}  {:>12}  {:>12}  result",
            "description", "error", "tolerance"
        )?;
        for c in &self.cases {
            writeln!(
                f,
                "{:<width$}  {:>12.3e}  {:>12.3e}  {}",
                c.description,
                c.error,
                c.tolerance,
                if c.pass { "pass" } else { "FAIL" }
            )?;
        }
        if let Some(t) = self.runtime_seconds {
            writeln!(f, "runtime: {t:.2} s")?;
        }
        let failed = self.failures().count();
        write!(f, "{} cases, {} failed", self.cases.len(), failed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    Orthonormality,
    Moments,
    Parseval,
    Completeness,
    Asymptotic,
    CrossRepresentation,
    Classifier,
    Bessel,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Orthonormality,
        Suite::Moments,
        Suite::Parseval,
        Suite::Completeness,
        Suite::Asymptotic,
        Suite::CrossRepresentation,
        Suite::Classifier,
        Suite::Bessel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthonormality => "orthonormality",
            Suite::Moments => "moments",
            Suite::Parseval => "parseval",
            Suite::Completeness => "completeness",
            Suite::Asymptotic => "asymptotic",
            Suite::CrossRepresentation => "cross-representation",
            Suite::Classifier => "classifier",
            Suite::Bessel => "bessel",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown suite '{s}'")))
    }
}

/// Run-wide settings; everything else uses the suite defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random states for the Parseval suite and instances for the classifier suite.
    pub trials: usize,
    /// Replaces every case tolerance when set.
    pub tolerance_override: Option<f64>,
    /// Record wall-clock time in the report.
    pub record_runtime: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trials: 20,
            tolerance_override: None,
            record_runtime: false,
        }
    }
}

pub const ORTHONORMALITY_BS: [f64; 5] = [0.25, 0.5, 0.75, 1.0, 1.5];

fn run_with_defaults(suite: Suite, config: &VerifyConfig) -> Result<VerificationReport> {
    match suite {
        Suite::Orthonormality => run_orthonormality(&ORTHONORMALITY_BS, 20, 1e-8),
        Suite::Moments => run_moments(&ORTHONORMALITY_BS, &(0..=12).collect::<Vec<_>>()),
        Suite::Parseval => {
            let one = run_parseval(ParsevalKind::OneMode, config.trials, config.seed, 1e-6)?;
            let two = run_parseval(ParsevalKind::TwoMode, config.trials, config.seed, 1e-6)?;
            let mut cases = one.cases;
            cases.extend(two.cases);
            Ok(VerificationReport::new("parseval", cases).with_seed(config.seed))
        }
        Suite::Completeness => run_completeness_delta(0.5, &[50, 100, 200, 500], 0.0, 0.5),
        Suite::Asymptotic => run_asymptotic(
            &[(0.25, 0.5), (0.25, 2.0), (0.75, 0.5), (0.75, 2.0)],
            &[256, 512, 1024, 2048, 4096],
        ),
        Suite::CrossRepresentation => Ok(run_cross_representation()),
        Suite::Classifier => run_classifier(config.trials.max(10), config.seed),
        Suite::Bessel => Ok(run_bessel()),
    }
}

/// Runs one suite at its default parameters.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = run_with_defaults(suite, config)?;
    if let Some(tol) = config.tolerance_override {
        report.override_tolerance(tol);
    }
    if config.record_runtime {
        report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Runs every suite; the reports come back in [`Suite::ALL`] order.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    Suite::ALL
        .par_iter()
        .map(|&s| run_suite(s, config))
        .collect()
}
