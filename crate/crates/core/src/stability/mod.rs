//! Resampling stability: prediction strength and Bootstab.
//!
//! Both statistics refit a clustering method on resampled data and compare
//! co-memberships, classifying left-out objects with the rule that matches
//! the method's cluster concept ([`ClassifierRule::for_method`]).

mod bootstab;
mod classify;
mod prediction;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bootstab::{bootstab, bootstrap_sample};
pub use classify::{classify, CentroidKind, Classification, ClassifierRule};
pub use prediction::{half_split, prediction_strength, prediction_strength_with_splits, Split};

use crate::algos::DEFAULT_KMEANS_RESTARTS;
use crate::error::{Error, Result};
use crate::indexes::Direction;
use crate::rng::RngSeed;

pub const DEFAULT_REPETITIONS: usize = 50;
pub const DEFAULT_MAX_RETRIES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StabilityId {
    PredictionStrength,
    Bootstab,
}

impl StabilityId {
    pub const ALL: [StabilityId; 2] = [StabilityId::PredictionStrength, StabilityId::Bootstab];

    pub fn direction(self) -> Direction {
        match self {
            StabilityId::PredictionStrength => Direction::LargerIsBetter,
            StabilityId::Bootstab => Direction::SmallerIsBetter,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StabilityId::PredictionStrength => "ps",
            StabilityId::Bootstab => "bootstab",
        }
    }
}

impl fmt::Display for StabilityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StabilityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ps" | "prediction_strength" | "predictionstrength" => Ok(StabilityId::PredictionStrength),
            "bootstab" | "boot" => Ok(StabilityId::Bootstab),
            _ => Err(Error::Contract(format!("unknown stability statistic {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabilityConfig {
    /// Number of resampling repetitions A.
    pub repetitions: usize,
    pub seed: RngSeed,
    /// Resampling attempts per repetition before giving up.
    pub max_retries: usize,
    pub kmeans_restarts: usize,
}

impl StabilityConfig {
    pub fn new(repetitions: usize, seed: RngSeed) -> Self {
        Self {
            repetitions,
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
            kmeans_restarts: DEFAULT_KMEANS_RESTARTS,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::Contract("stability needs A >= 1 repetitions".into()));
        }
        Ok(())
    }
}

/// A stability value with the notes collected while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityOutcome {
    pub value: f64,
    /// Resampling attempts that had to be redrawn.
    pub retries: usize,
    /// Prediction-strength clusters with at most one member (scored as 1).
    pub vacuous_clusters: usize,
    pub notes: Vec<String>,
}
