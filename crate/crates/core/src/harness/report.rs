use serde::{Deserialize, Serialize};

use super::{GenConfig, Generator};
use crate::document::{self, Document};
use crate::measures::SIGN_SLACK;
use crate::morphism::Morphism;

/// Enough to regenerate the instance a check failed on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub suite: String,
    pub trial: u64,
    pub config: GenConfig,
    /// The recorded morphisms, as a JSON document.
    pub instance: serde_json::Value,
}

impl Witness {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn document(&self) -> Result<Document, document::DocError> {
        document::parse_document(&self.instance.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: u64,
    pub check: String,
    pub observed: String,
    pub expected: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub failures: Vec<Failure>,
    /// Largest float residual seen over all tolerance checks.
    pub max_residual: f64,
    pub elapsed_ms: u64,
}

impl PropReport {
    pub fn empty(suite: &str, seed: u64) -> Self {
        PropReport {
            suite: suite.to_string(),
            seed,
            trials: 0,
            failures: Vec::new(),
            max_residual: 0.0,
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Combines two reports of the same suite; trial counts add up.
    pub fn merge(mut self, other: PropReport) -> PropReport {
        self.trials += other.trials;
        self.failures.extend(other.failures);
        self.max_residual = self.max_residual.max(other.max_residual);
        self.elapsed_ms += other.elapsed_ms;
        self
    }
}

#[derive(Debug, Clone)]
pub(super) struct Violation {
    pub check: String,
    pub observed: String,
    pub expected: String,
}

/// State of one trial: its generator, the instance recorded so far, and the
/// outcome of each check.
pub struct Trial {
    pub gen: Generator,
    index: u64,
    instance: Document,
    violations: Vec<Violation>,
    max_residual: f64,
}

impl Trial {
    pub fn new(cfg: &GenConfig, index: u64) -> Self {
        Trial {
            gen: Generator::new(cfg, index),
            index,
            instance: Document::new(),
            violations: Vec::new(),
            max_residual: 0.0,
        }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn instance(&self) -> &Document {
        &self.instance
    }

    /// Adds `m` to the witness of this trial.
    pub fn record(&mut self, name: &str, m: &Morphism) {
        self.instance.insert_morphism(name, m);
    }

    pub fn fail(&mut self, check: &str, observed: String, expected: String) {
        self.violations.push(Violation {
            check: check.to_string(),
            observed,
            expected,
        });
    }

    fn residual(&mut self, r: f64) {
        self.max_residual = self.max_residual.max(r);
    }

    /// `|lhs − rhs| ≤ tol`.
    pub fn close(&mut self, check: &str, lhs: f64, rhs: f64, tol: f64) {
        let diff = (lhs - rhs).abs();
        self.residual(diff);
        if !(diff <= tol) {
            self.fail(check, format!("lhs = {lhs:e}, rhs = {rhs:e}"), format!("|lhs − rhs| ≤ {tol:e}"));
        }
    }

    /// `v ≥ 0` up to the sign slack.
    pub fn nonneg(&mut self, check: &str, v: f64) {
        self.residual((-v).max(0.0));
        if !(v >= -SIGN_SLACK) {
            self.fail(check, format!("{v:e}"), format!("≥ −{SIGN_SLACK:e}"));
        }
    }

    /// `v < bound` for a residual `v`.
    pub fn below(&mut self, check: &str, v: f64, bound: f64) {
        self.residual(v.abs());
        if !(v < bound) {
            self.fail(check, format!("{v:e}"), format!("< {bound:e}"));
        }
    }

    /// An exact predicate.
    pub fn holds(&mut self, check: &str, ok: bool, observed: impl FnOnce() -> String) {
        if !ok {
            let observed = observed();
            self.fail(check, observed, "holds".into());
        }
    }

    pub(super) fn finish(self) -> (Document, Vec<Violation>, f64) {
        (self.instance, self.violations, self.max_residual)
    }
}
