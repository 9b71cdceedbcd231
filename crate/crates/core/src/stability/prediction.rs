use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{classify, ClassifierRule, StabilityConfig, StabilityOutcome};
use crate::algos::MethodId;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rng::RngSeed;

/// Two disjoint halves of the objects, each listed in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// Uniform random split into halves of sizes ⌊n/2⌋ and ⌈n/2⌉.
pub fn half_split(n: usize, seed: &RngSeed) -> Split {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut seed.rng());
    let mut first = perm[..n / 2].to_vec();
    let mut second = perm[n / 2..].to_vec();
    first.sort_unstable();
    second.sort_unstable();
    Split { first, second }
}

struct HalfScore {
    min_proportion: f64,
    vacuous: usize,
    fallback: bool,
}

/// Worst-cluster share of ordered same-cluster pairs in `own` whose members
/// are also classified together by `predicted`.
fn min_comembership(own: &Partition, predicted: &[usize], k_other: usize) -> (f64, usize) {
    let mut counts = vec![0usize; own.k() * k_other];
    for (i, &p) in predicted.iter().enumerate() {
        counts[own.label(i) * k_other + p] += 1;
    }
    let mut worst = f64::INFINITY;
    let mut vacuous = 0;
    for (c, &nk) in own.sizes().iter().enumerate() {
        let prop = if nk <= 1 {
            vacuous += 1;
            1.0
        } else {
            let kept: usize = counts[c * k_other..(c + 1) * k_other]
                .iter()
                .map(|&m| m * m.saturating_sub(1))
                .sum();
            kept as f64 / (nk * (nk - 1)) as f64
        };
        worst = worst.min(prop);
    }
    (worst, vacuous)
}

fn score_split(
    ds: &Dataset,
    method: MethodId,
    k: usize,
    split: &Split,
    fit_seed: &RngSeed,
    restarts: usize,
) -> Result<[HalfScore; 2]> {
    let halves = [&split.first, &split.second];
    let mut fits = Vec::with_capacity(2);
    for (t, half) in halves.iter().enumerate() {
        let sub = ds.subset(half)?;
        fits.push(method.cluster_with(&sub, k, &fit_seed.child(t as u64), restarts)?);
    }
    let rule = ClassifierRule::for_method(method);
    let mut out = Vec::with_capacity(2);
    for t in 0..2 {
        let other = 1 - t;
        let predicted = classify(ds, halves[other], &fits[other], halves[t], rule)?;
        let (min_proportion, vacuous) = min_comembership(&fits[t], &predicted.labels, fits[other].k());
        out.push(HalfScore {
            min_proportion,
            vacuous,
            fallback: predicted.medoid_fallback,
        });
    }
    let second = out.pop().expect("two halves");
    let first = out.pop().expect("two halves");
    Ok([first, second])
}

fn summarise(scores: Vec<[HalfScore; 2]>, retries: usize) -> StabilityOutcome {
    let reps = scores.len();
    let mut total = 0.0;
    let mut vacuous = 0;
    let mut fallback = false;
    for half in scores.iter().flatten() {
        total += half.min_proportion;
        vacuous += half.vacuous;
        fallback |= half.fallback;
    }
    let mut notes = Vec::new();
    if vacuous > 0 {
        notes.push(format!("{vacuous} cluster(s) with at most one member scored as 1"));
    }
    if fallback {
        notes.push("no coordinates: nearest-medoid used for mean-centroid classification".into());
    }
    StabilityOutcome {
        value: total / (2 * reps) as f64,
        retries,
        vacuous_clusters: vacuous,
        notes,
    }
}

/// Prediction strength over caller-supplied splits.
pub fn prediction_strength_with_splits(
    ds: &Dataset,
    method: MethodId,
    k: usize,
    splits: &[Split],
    seed: &RngSeed,
    kmeans_restarts: usize,
) -> Result<StabilityOutcome> {
    if splits.is_empty() {
        return Err(Error::Contract("prediction strength needs at least one split".into()));
    }
    let scores = splits
        .par_iter()
        .enumerate()
        .map(|(a, s)| score_split(ds, method, k, s, &seed.child(a as u64), kmeans_restarts))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarise(scores, 0))
}

/// Prediction strength of `method` at `k` over A random half-splits.
///
/// Split `a` is drawn from the stream `(seed, "ps", k, a)`, so every method
/// evaluated with the same config sees the same splits.
pub fn prediction_strength(
    ds: &Dataset,
    method: MethodId,
    k: usize,
    cfg: &StabilityConfig,
) -> Result<StabilityOutcome> {
    cfg.validate()?;
    let n = ds.len();
    if k < 2 || n < 4 {
        return Err(Error::Contract(format!(
            "prediction strength needs K >= 2 and n >= 4, got K = {k}, n = {n}"
        )));
    }
    let split_root = cfg.seed.named("ps").child(k as u64);
    let fit_root = cfg.seed.named("ps-fit").child(k as u64);
    let results = (0..cfg.repetitions)
        .into_par_iter()
        .map(|a| {
            let mut last = String::new();
            for attempt in 0..=cfg.max_retries {
                if k > n / 2 {
                    last = format!("K = {k} exceeds half size {}", n / 2);
                    break;
                }
                let split = half_split(n, &split_root.child(a as u64).child(attempt as u64));
                let fit_seed = fit_root.child(a as u64).child(attempt as u64);
                match score_split(ds, method, k, &split, &fit_seed, cfg.kmeans_restarts) {
                    Ok(s) => return Ok((s, attempt)),
                    Err(e) => last = e.to_string(),
                }
            }
            Err(Error::RetryCapExceeded {
                attempts: cfg.max_retries + 1,
                reason: last,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let retries = results.iter().map(|(_, r)| r).sum();
    Ok(summarise(results.into_iter().map(|(s, _)| s).collect(), retries))
}
