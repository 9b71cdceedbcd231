//! One validation run on one data set: cluster, compute stability, build the
//! calibration collection, aggregate composites and pick clusterings.

use std::collections::BTreeMap;

use anyhow::Result;
use rayon::prelude::*;

use clustval::calibrate::{
    aggregate, build_collection, rank_clusterings, zscore_calibrate, Aggregates, Calibrated, ProperClustering, Ranked,
};
use clustval::indexes::{cvnn_aggregate, is_degenerate, CvnnComponents};
use clustval::stability::{bootstab, prediction_strength, StabilityOutcome};
use clustval::{
    adjusted_rand_index, ClusteringCollection, CompositeSpec, Dataset, IndexId, MethodId, Partition, RngSeed, Source,
    StabilityConfig, StabilityId,
};

use crate::config::Settings;

/// One (method, K) cell of the grid.
#[derive(Debug, Clone)]
pub struct Cell {
    pub method: MethodId,
    pub k: usize,
    pub partition: Option<Partition>,
    pub stability: BTreeMap<StabilityId, Option<f64>>,
    pub errors: Vec<String>,
}

/// What a criterion picked among the proper clusterings.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub criterion: String,
    pub pick: Option<Pick>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pick {
    pub entry: usize,
    pub method: MethodId,
    pub k: usize,
    pub value: f64,
    pub ari: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CompositeResult {
    pub spec: CompositeSpec,
    pub aggregates: Aggregates,
    pub ranking: Vec<Ranked>,
}

#[derive(Debug, Clone)]
pub struct ValidationResult {
    pub n: usize,
    pub cells: Vec<Cell>,
    pub collection: ClusteringCollection,
    pub calibrated: Calibrated,
    pub composites: Vec<CompositeResult>,
    /// Aggregated CVNN per entry, normalised over the candidate clusterings;
    /// other entries carry no value.
    pub cvnn: Vec<Option<f64>>,
    pub selections: Vec<Selection>,
    /// ARI against the known classes for proper entries.
    pub ari: Vec<Option<f64>>,
    pub diagnostics: Vec<String>,
}

impl ValidationResult {
    pub fn selection(&self, criterion: &str) -> Option<&Pick> {
        self.selections
            .iter()
            .find(|s| s.criterion == criterion)
            .and_then(|s| s.pick.as_ref())
    }
}

fn stability_value(
    id: StabilityId,
    ds: &Dataset,
    method: MethodId,
    k: usize,
    cfg: &StabilityConfig,
) -> clustval::Result<StabilityOutcome> {
    match id {
        StabilityId::PredictionStrength => prediction_strength(ds, method, k, cfg),
        StabilityId::Bootstab => bootstab(ds, method, k, cfg),
    }
}

fn run_cell(ds: &Dataset, s: &Settings, seed: &RngSeed, method: MethodId, k: usize) -> Cell {
    let mut errors = Vec::new();
    let mi = MethodId::ALL.iter().position(|&m| m == method).expect("listed") as u64;
    let partition = match method.cluster(ds, k, &seed.named("cluster").child(mi).child(k as u64)) {
        Ok(p) => Some(p),
        Err(e) => {
            errors.push(format!("{method} at K = {k}: {e}"));
            None
        }
    };
    // Every method shares the same splits and bootstrap samples for a given K.
    let cfg = StabilityConfig::new(s.a, seed.named("stability"));
    let stability = s
        .stability
        .iter()
        .map(|&id| {
            let v = match stability_value(id, ds, method, k, &cfg) {
                Ok(out) => {
                    errors.extend(out.notes.iter().map(|n| format!("{id} for {method} at K = {k}: {n}")));
                    Some(out.value)
                }
                Err(e) => {
                    errors.push(format!("{id} for {method} at K = {k}: {e}"));
                    None
                }
            };
            (id, v)
        })
        .collect();
    Cell {
        method,
        k,
        partition,
        stability,
        errors,
    }
}

/// Best candidate entry by `value`, with ties going to smaller K and then to
/// the earlier method.
fn best_proper(
    coll: &ClusteringCollection,
    candidates: &[MethodId],
    larger_is_better: bool,
    value: impl Fn(usize) -> Option<f64>,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (e, entry) in coll.entries().iter().enumerate() {
        let Source::Proper(m) = entry.source else { continue };
        if !candidates.contains(&m) {
            continue;
        }
        let Some(v) = value(e).filter(|v| !is_degenerate(*v)) else { continue };
        let replace = match best {
            None => true,
            Some((b, bv)) => {
                let better = if larger_is_better { v > bv } else { v < bv };
                let be = &coll.entries()[b];
                let Source::Proper(bm) = be.source else { unreachable!() };
                better || (v == bv && (entry.k, m) < (be.k, bm))
            }
        };
        if replace {
            best = Some((e, v));
        }
    }
    best
}

fn pick(coll: &ClusteringCollection, ari: &[Option<f64>], found: Option<(usize, f64)>) -> Option<Pick> {
    found.map(|(entry, value)| {
        let e = &coll.entries()[entry];
        let Source::Proper(method) = e.source else { unreachable!() };
        Pick {
            entry,
            method,
            k: e.k,
            value,
            ari: ari[entry],
        }
    })
}

/// Runs the full validation pipeline on `ds`.
///
/// A method or stability statistic that fails at some K leaves that cell
/// empty and is reported in the diagnostics; the run carries on.
pub fn run_validation(ds: &Dataset, truth: Option<&Partition>, s: &Settings, seed: &RngSeed) -> Result<ValidationResult> {
    s.check_size(ds.len())?;
    if let Some(t) = truth {
        anyhow::ensure!(t.len() == ds.len(), "class labels cover {} of {} objects", t.len(), ds.len());
    }

    let grid: Vec<(MethodId, usize)> = s.ks().flat_map(|k| s.methods.iter().map(move |&m| (m, k))).collect();
    let cells: Vec<Cell> = grid.par_iter().map(|&(m, k)| run_cell(ds, s, seed, m, k)).collect();
    let mut diagnostics: Vec<String> = cells.iter().flat_map(|c| c.errors.iter().cloned()).collect();

    let mut proper: BTreeMap<usize, Vec<ProperClustering>> = s.ks().map(|k| (k, Vec::new())).collect();
    for c in &cells {
        if let Some(p) = &c.partition {
            proper.get_mut(&c.k).expect("k in range").push(ProperClustering {
                method: c.method,
                partition: p.clone(),
                stability: c.stability.iter().filter_map(|(&id, v)| v.map(|v| (id, v))).collect(),
            });
        }
    }
    let collection = build_collection(ds, &proper, &s.indexes, &s.stability, s.params, s.b, &seed.named("collection"))?;
    let calibrated = zscore_calibrate(&collection, s.regime);
    diagnostics.extend(calibrated.diagnostics().iter().cloned());

    let ari: Vec<Option<f64>> = collection
        .entries()
        .par_iter()
        .map(|e| match (e.source, truth) {
            (Source::Proper(_), Some(t)) => adjusted_rand_index(&e.partition, t).ok(),
            _ => None,
        })
        .collect();

    let mut composites = Vec::new();
    for spec in &s.composites {
        let aggregates = aggregate(&collection, &calibrated, spec)?;
        let (mut ranking, _) = rank_clusterings(&collection, spec, s.regime)?;
        ranking.retain(|r| matches!(r.source, Source::Proper(m) if s.candidates.contains(&m)));
        diagnostics.extend(aggregates.diagnostics.iter().cloned());
        composites.push(CompositeResult {
            spec: spec.clone(),
            aggregates,
            ranking,
        });
    }

    let mut selections = Vec::new();
    let mut cvnn = vec![None; collection.entries().len()];
    for &id in &s.indexes {
        if matches!(id, IndexId::CvnnSep | IndexId::CvnnCom) {
            continue;
        }
        let found = best_proper(&collection, &s.candidates, id.direction().sign() > 0.0, |e| collection.raw(e, id.into()));
        selections.push(Selection {
            criterion: id.name().to_string(),
            pick: pick(&collection, &ari, found),
        });
    }
    if s.indexes.contains(&IndexId::CvnnSep) && s.indexes.contains(&IndexId::CvnnCom) {
        let usable: Vec<(usize, CvnnComponents)> = collection
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e.source, Source::Proper(m) if s.candidates.contains(&m)))
            .filter_map(|(i, _)| {
                let sep = collection.raw(i, IndexId::CvnnSep.into())?;
                let com = collection.raw(i, IndexId::CvnnCom.into())?;
                (sep.is_finite() && com.is_finite()).then_some((i, CvnnComponents { sep, com }))
            })
            .collect();
        if !usable.is_empty() {
            let comps: Vec<CvnnComponents> = usable.iter().map(|(_, c)| *c).collect();
            for ((i, _), v) in usable.iter().zip(cvnn_aggregate(&comps)?) {
                cvnn[*i] = Some(v);
            }
        }
        let found = best_proper(&collection, &s.candidates, false, |e| cvnn[e]);
        selections.push(Selection {
            criterion: "cvnn".into(),
            pick: pick(&collection, &ari, found),
        });
    }
    for &id in &s.stability {
        let found = best_proper(&collection, &s.candidates, id.direction().sign() > 0.0, |e| collection.raw(e, id.into()));
        selections.push(Selection {
            criterion: id.name().to_string(),
            pick: pick(&collection, &ari, found),
        });
    }
    for c in &composites {
        selections.push(Selection {
            criterion: c.spec.name.clone(),
            pick: pick(&collection, &ari, c.ranking.first().map(|r| (r.entry, r.value))),
        });
    }

    Ok(ValidationResult {
        n: ds.len(),
        cells,
        collection,
        calibrated,
        composites,
        cvnn,
        selections,
        ari,
        diagnostics,
    })
}
