//! Seeded random instances and executable property suites.
//!
//! A suite is a check run once per trial on freshly generated instances.
//! Each trial derives its generator from `(seed, trial index)` alone, so a
//! report is the same whether trials run in parallel or one after another,
//! and any failure can be regenerated from its [`Witness`].

mod continuity;
mod exec;
pub mod exhaustive;
mod gen;
mod report;
mod suites;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::CoreError;
use crate::rational::{self, Rational};

pub use continuity::{check_continuity, continuity_residuals, perturb, CONTINUITY_DECAY};
pub use exec::{map_indexed, Execution};
pub use gen::{gen_coalescable_pair, gen_map, gen_morphism, gen_space, Generator, PairStrategy};
pub use report::{Failure, PropReport, Trial, Witness};
pub use suites::{canonical_name, replay, replay_check, run_check, run_suite, run_suite_with, Check, SUITES};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("witness does not match the regenerated instance")]
    WitnessMismatch,
    #[error(transparent)]
    Core(#[from] CoreError),
}

mod rational_text {
    use super::{rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        rational::parse(&text).ok_or_else(|| D::Error::custom(format!("`{text}` is not a rational")))
    }
}

/// Generation parameters shared by every trial of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Largest label set drawn.
    pub max_size: usize,
    /// Probabilities are `k/d` with `d` at most this.
    pub denom_bound: usize,
    /// Chance that an entry is forced to zero.
    #[serde(with = "rational_text")]
    pub null_prob: Rational,
    pub trials: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_size: 4,
            denom_bound: 12,
            null_prob: rational::ratio(1, 6),
            trials: 500,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.max_size == 0 {
            return Err(HarnessError::InvalidConfig("max_size must be at least 1".into()));
        }
        if self.denom_bound == 0 {
            return Err(HarnessError::InvalidConfig("denom_bound must be at least 1".into()));
        }
        if !rational::is_unit_interval(&self.null_prob) || self.ratio_parts().is_none() {
            return Err(HarnessError::InvalidConfig(
                "null_prob must be a fraction in [0, 1] with a 32-bit denominator".into(),
            ));
        }
        Ok(())
    }

    fn ratio_parts(&self) -> Option<(u32, u32)> {
        use num_traits::ToPrimitive;
        Some((self.null_prob.numer().to_u32()?, self.null_prob.denom().to_u32()?))
    }

    // Falls back to "never" for configurations that fail validation.
    pub(crate) fn null_ratio(&self) -> (u32, u32) {
        match self.ratio_parts() {
            Some((a, b)) if a <= b => (a, b),
            _ => (0, 1),
        }
    }
}
