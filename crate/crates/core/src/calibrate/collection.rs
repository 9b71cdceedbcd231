use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use super::{Calibrated, ComponentId, Source};
use crate::algos::MethodId;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::indexes::{is_degenerate, IndexEvaluator, IndexId, IndexParams};
use crate::partition::Partition;
use crate::randclust::RandomMethodId;
use crate::rng::RngSeed;
use crate::stability::StabilityId;

/// A clustering produced by a proper method, with any stability values
/// already computed for that method and K.
#[derive(Debug, Clone)]
pub struct ProperClustering {
    pub method: MethodId,
    pub partition: Partition,
    pub stability: BTreeMap<StabilityId, f64>,
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub source: Source,
    pub k: usize,
    /// Position among the B draws of a random generator; 0 for proper entries.
    pub draw: usize,
    pub partition: Partition,
    /// Raw value per component, aligned with [`ClusteringCollection::components`].
    /// `None` means not computed (stability of random clusterings); a
    /// non-finite value is a degenerate evaluation.
    pub raw: Vec<Option<f64>>,
}

/// All proper and random clusterings with their raw index values, ordered by
/// K and, within K, random K-centroids, single, complete, average draws
/// followed by the proper clusterings.
#[derive(Debug, Clone)]
pub struct ClusteringCollection {
    components: Vec<ComponentId>,
    entries: Vec<Entry>,
    b: usize,
}

impl ClusteringCollection {
    /// Assembles a collection from precomputed entries.
    pub fn from_entries(components: Vec<ComponentId>, entries: Vec<Entry>, b: usize) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.raw.len() != components.len()) {
            return Err(Error::Dimension {
                expected: components.len(),
                actual: e.raw.len(),
            });
        }
        Ok(Self {
            components,
            entries,
            b,
        })
    }

    pub fn components(&self) -> &[ComponentId] {
        &self.components
    }

    pub fn component_position(&self, id: ComponentId) -> Option<usize> {
        self.components.iter().position(|&c| c == id)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn ks(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.entries.iter().map(|e| e.k).collect();
        ks.dedup();
        ks
    }

    pub fn raw(&self, entry: usize, id: ComponentId) -> Option<f64> {
        self.component_position(id).and_then(|c| self.entries[entry].raw[c])
    }

    /// Long CSV: `source,K,index_id,raw_value,calibrated_value,degenerate_flag`.
    pub fn write_long_csv<W: Write>(&self, out: W, calibrated: &Calibrated) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["source", "K", "index_id", "raw_value", "calibrated_value", "degenerate_flag"])?;
        for (e, entry) in self.entries.iter().enumerate() {
            for (c, id) in self.components.iter().enumerate() {
                let Some(raw) = entry.raw[c] else { continue };
                let cal = calibrated.value(e, c).map(|v| v.to_string()).unwrap_or_default();
                w.write_record([
                    entry.source.method_name().to_string(),
                    entry.k.to_string(),
                    id.name().to_string(),
                    raw.to_string(),
                    cal,
                    u8::from(is_degenerate(raw)).to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Generates B random clusterings per generator and K, evaluates all
/// requested indexes on them and on the proper clusterings, and assembles the
/// collection.
///
/// `proper` maps each K to its proper clusterings. Random draw `j` of
/// generator `g` at `K` uses the stream `(seed, "random", K, g, j)`.
pub fn build_collection(
    ds: &Dataset,
    proper: &BTreeMap<usize, Vec<ProperClustering>>,
    indexes: &[IndexId],
    stability: &[StabilityId],
    params: IndexParams,
    b: usize,
    seed: &RngSeed,
) -> Result<ClusteringCollection> {
    if b == 0 {
        return Err(Error::Contract("B must be at least 1".into()));
    }
    if let Some(&k) = proper.keys().find(|&&k| k < 2 || k > ds.len()) {
        return Err(Error::Contract(format!("K = {k} outside 2..={}", ds.len())));
    }
    let evaluator = IndexEvaluator::new(&ds.diss, params, indexes)?;
    let components: Vec<ComponentId> = indexes
        .iter()
        .map(|&i| ComponentId::Index(i))
        .chain(stability.iter().map(|&s| ComponentId::Stability(s)))
        .collect();

    struct Task<'a> {
        source: Source,
        k: usize,
        draw: usize,
        proper: Option<&'a ProperClustering>,
    }
    let mut tasks = Vec::new();
    for (&k, list) in proper {
        for g in RandomMethodId::ALL {
            for draw in 0..b {
                tasks.push(Task {
                    source: Source::Random(g),
                    k,
                    draw,
                    proper: None,
                });
            }
        }
        for p in list {
            tasks.push(Task {
                source: Source::Proper(p.method),
                k,
                draw: 0,
                proper: Some(p),
            });
        }
    }

    let random_root = seed.named("random");
    let entries = tasks
        .par_iter()
        .map(|t| {
            let partition = match (t.source, t.proper) {
                (Source::Random(g), _) => {
                    let gi = RandomMethodId::ALL.iter().position(|&x| x == g).expect("listed");
                    let s = random_root.child(t.k as u64).child(gi as u64).child(t.draw as u64);
                    g.generate(&ds.diss, t.k, &s)?
                }
                (Source::Proper(_), Some(p)) => p.partition.clone(),
                (Source::Proper(_), None) => unreachable!(),
            };
            let mut raw: Vec<Option<f64>> = evaluator
                .evaluate_all(indexes, &partition)?
                .into_iter()
                .map(Some)
                .collect();
            raw.extend(
                stability
                    .iter()
                    .map(|s| t.proper.and_then(|p| p.stability.get(s).copied())),
            );
            Ok(Entry {
                source: t.source,
                k: t.k,
                draw: t.draw,
                partition,
                raw,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ClusteringCollection::from_entries(components, entries, b)
}
