//! Proper clustering methods whose output gets validated.

mod hierarchical;
mod kmeans;
mod pam;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use hierarchical::{hierarchical, Dendrogram, Linkage, Merge};
pub use kmeans::{kmeans, kmeans_fit, KMeansFit};
pub use pam::{pam, pam_fit, PamFit};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rng::RngSeed;

pub const DEFAULT_KMEANS_RESTARTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodId {
    KMeans,
    Pam,
    Single,
    Complete,
    Average,
    Ward,
}

impl MethodId {
    pub const ALL: [MethodId; 6] = [
        MethodId::KMeans,
        MethodId::Pam,
        MethodId::Single,
        MethodId::Complete,
        MethodId::Average,
        MethodId::Ward,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodId::KMeans => "kmeans",
            MethodId::Pam => "pam",
            MethodId::Single => "single",
            MethodId::Complete => "complete",
            MethodId::Average => "average",
            MethodId::Ward => "ward",
        }
    }

    pub fn linkage(self) -> Option<Linkage> {
        match self {
            MethodId::Single => Some(Linkage::Single),
            MethodId::Complete => Some(Linkage::Complete),
            MethodId::Average => Some(Linkage::Average),
            MethodId::Ward => Some(Linkage::Ward),
            MethodId::KMeans | MethodId::Pam => None,
        }
    }

    /// Clusters `ds` into exactly `k` groups.
    pub fn cluster(self, ds: &Dataset, k: usize, seed: &RngSeed) -> Result<Partition> {
        self.cluster_with(ds, k, seed, DEFAULT_KMEANS_RESTARTS)
    }

    pub fn cluster_with(
        self,
        ds: &Dataset,
        k: usize,
        seed: &RngSeed,
        kmeans_restarts: usize,
    ) -> Result<Partition> {
        match self {
            MethodId::KMeans => {
                let data = ds.data.as_ref().ok_or_else(|| Error::MethodFailure {
                    method: self.name().into(),
                    k,
                    reason: "k-means needs coordinates, only dissimilarities given".into(),
                })?;
                kmeans(data, k, kmeans_restarts, seed)
            }
            MethodId::Pam => pam(&ds.diss, k),
            other => hierarchical(&ds.diss, other.linkage().expect("linkage method"), k),
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Ok(match lower.as_str() {
            "kmeans" | "k-means" => MethodId::KMeans,
            "pam" => MethodId::Pam,
            "single" => MethodId::Single,
            "complete" => MethodId::Complete,
            "average" => MethodId::Average,
            "ward" => MethodId::Ward,
            _ => return Err(Error::Contract(format!("unknown clustering method {s:?}"))),
        })
    }
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Contract(format!("K = {k} must lie in 1..={n}")));
    }
    Ok(())
}
