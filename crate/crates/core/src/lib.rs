//! Internal cluster validation on dissimilarity data.
//!
//! The crate computes validity indexes and resampling stability statistics
//! for candidate clusterings, calibrates them against random clusterings of
//! the same data, and combines the calibrated values into weighted composite
//! indexes that can be used to pick a clustering and its number of clusters.
//!
//! ```
//! use clustval::{scenarios, Dataset, MethodId, RngSeed, IndexId, IndexEvaluator, IndexParams};
//!
//! let seed = RngSeed::new(7);
//! let (data, _truth) = scenarios::scenario1(&seed).unwrap();
//! let ds = Dataset::from_data(data);
//! let part = MethodId::Pam.cluster(&ds, 3, &seed).unwrap();
//! let eval = IndexEvaluator::new(&ds.diss, IndexParams::default(), &[IndexId::Asw]).unwrap();
//! let asw = eval.evaluate(IndexId::Asw, &part).unwrap();
//! assert!(asw > 0.5);
//! ```

pub mod algos;
pub mod ari;
pub mod calibrate;
pub mod data;
pub mod error;
pub mod indexes;
pub mod partition;
pub mod randclust;
pub mod rng;
pub mod scenarios;
pub mod stability;

pub use algos::MethodId;
pub use ari::adjusted_rand_index;
pub use calibrate::{CalibrationRegime, ClusteringCollection, ComponentId, CompositeSpec, Source};
pub use data::{euclidean_dissimilarity, DataMatrix, Dataset, DissimilarityMatrix};
pub use error::{Error, Result};
pub use indexes::{IndexEvaluator, IndexId, IndexParams};
pub use partition::Partition;
pub use randclust::RandomMethodId;
pub use rng::RngSeed;
pub use scenarios::Scenario;
pub use stability::{StabilityConfig, StabilityId};
