//! Internal validity indexes, each a pure function of a dissimilarity matrix
//! and a partition.
//!
//! Values that cannot be represented as an ordinary number (a zero
//! denominator in CH or Dunn, a constant vector in Pearson Γ) come back as
//! `+inf` or `NaN`. [`is_degenerate`] tells them apart from real values so
//! that calibration can leave them out.

mod aspects;
mod classic;
mod cvnn;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use aspects::{ave_within, entropy, sep_index, widest_gap};
pub use classic::{asw, calinski_harabasz, dunn, pearson_gamma};
pub use cvnn::{cvnn_aggregate, cvnn_components, CvnnComponents, NeighbourTable};

use crate::data::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Which way an index improves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    LargerIsBetter,
    SmallerIsBetter,
}

impl Direction {
    /// Multiplier that turns the index into a larger-is-better quantity.
    pub fn sign(self) -> f64 {
        match self {
            Direction::LargerIsBetter => 1.0,
            Direction::SmallerIsBetter => -1.0,
        }
    }

    /// Whether `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::LargerIsBetter => a > b,
            Direction::SmallerIsBetter => a < b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IndexId {
    Asw,
    Ch,
    Dunn,
    CvnnSep,
    CvnnCom,
    PearsonGamma,
    AveWithin,
    SepIndex,
    WidestGap,
    Entropy,
}

impl IndexId {
    pub const ALL: [IndexId; 10] = [
        IndexId::Asw,
        IndexId::Ch,
        IndexId::Dunn,
        IndexId::CvnnSep,
        IndexId::CvnnCom,
        IndexId::PearsonGamma,
        IndexId::AveWithin,
        IndexId::SepIndex,
        IndexId::WidestGap,
        IndexId::Entropy,
    ];

    pub fn direction(self) -> Direction {
        match self {
            IndexId::Asw
            | IndexId::Ch
            | IndexId::Dunn
            | IndexId::PearsonGamma
            | IndexId::SepIndex
            | IndexId::Entropy => Direction::LargerIsBetter,
            IndexId::AveWithin | IndexId::WidestGap | IndexId::CvnnSep | IndexId::CvnnCom => {
                Direction::SmallerIsBetter
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexId::Asw => "asw",
            IndexId::Ch => "ch",
            IndexId::Dunn => "dunn",
            IndexId::CvnnSep => "cvnn_sep",
            IndexId::CvnnCom => "cvnn_com",
            IndexId::PearsonGamma => "pearson_gamma",
            IndexId::AveWithin => "ave_within",
            IndexId::SepIndex => "sep_index",
            IndexId::WidestGap => "widest_gap",
            IndexId::Entropy => "entropy",
        }
    }

    fn needs_neighbours(self) -> bool {
        matches!(self, IndexId::CvnnSep)
    }
}

impl fmt::Display for IndexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['-', '.'], "_");
        IndexId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .or(match key.as_str() {
                "pg" | "pearsongamma" => Some(IndexId::PearsonGamma),
                "avewithin" | "ave_wit" => Some(IndexId::AveWithin),
                "sepindex" => Some(IndexId::SepIndex),
                "widestgap" => Some(IndexId::WidestGap),
                _ => None,
            })
            .ok_or_else(|| Error::Contract(format!("unknown index {s:?}")))
    }
}

pub const DEFAULT_SEP_P: f64 = 0.1;
pub const DEFAULT_KAPPA: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexParams {
    /// Border proportion for the separation index.
    pub p: f64,
    /// Neighbourhood size for CVNN.
    pub kappa: usize,
}

impl Default for IndexParams {
    fn default() -> Self {
        Self {
            p: DEFAULT_SEP_P,
            kappa: DEFAULT_KAPPA,
        }
    }
}

impl IndexParams {
    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::Contract(format!("p = {} must lie in (0,1)", self.p)));
        }
        if self.kappa < 1 || self.kappa + 1 > n {
            return Err(Error::Contract(format!(
                "kappa = {} must lie in 1..={}",
                self.kappa,
                n.saturating_sub(1)
            )));
        }
        Ok(())
    }
}

pub fn is_degenerate(v: f64) -> bool {
    !v.is_finite()
}

/// Evaluates several indexes for many partitions of one dissimilarity matrix,
/// sharing the κ-nearest-neighbour table across calls.
#[derive(Debug)]
pub struct IndexEvaluator<'a> {
    d: &'a DissimilarityMatrix,
    params: IndexParams,
    neighbours: Option<NeighbourTable>,
}

impl<'a> IndexEvaluator<'a> {
    pub fn new(d: &'a DissimilarityMatrix, params: IndexParams, ids: &[IndexId]) -> Result<Self> {
        params.validate(d.len())?;
        let neighbours = ids
            .iter()
            .any(|id| id.needs_neighbours())
            .then(|| NeighbourTable::new(d, params.kappa))
            .transpose()?;
        Ok(Self {
            d,
            params,
            neighbours,
        })
    }

    pub fn params(&self) -> IndexParams {
        self.params
    }

    pub fn evaluate(&self, id: IndexId, part: &Partition) -> Result<f64> {
        let d = self.d;
        match id {
            IndexId::Asw => asw(d, part),
            IndexId::Ch => calinski_harabasz(d, part),
            IndexId::Dunn => dunn(d, part),
            IndexId::CvnnSep => {
                let table = match &self.neighbours {
                    Some(t) => t,
                    None => return cvnn_components(d, part, self.params.kappa).map(|c| c.sep),
                };
                table.sep(part)
            }
            IndexId::CvnnCom => cvnn::compactness(d, part),
            IndexId::PearsonGamma => pearson_gamma(d, part),
            IndexId::AveWithin => ave_within(d, part),
            IndexId::SepIndex => sep_index(d, part, self.params.p),
            IndexId::WidestGap => widest_gap(d, part),
            IndexId::Entropy => {
                part.require_len(d.len())?;
                entropy(part)
            }
        }
    }

    pub fn evaluate_all(&self, ids: &[IndexId], part: &Partition) -> Result<Vec<f64>> {
        ids.iter().map(|&id| self.evaluate(id, part)).collect()
    }
}

pub(crate) fn check(d: &DissimilarityMatrix, part: &Partition) -> Result<()> {
    part.require_len(d.len())?;
    part.require_k_at_least_two()
}
