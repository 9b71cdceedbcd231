use rand::Rng;
use rayon::prelude::*;

use super::{classify, ClassifierRule, StabilityConfig, StabilityOutcome};
use crate::algos::MethodId;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::RngSeed;

/// `n` draws with replacement, sorted.
pub fn bootstrap_sample(n: usize, seed: &RngSeed) -> Vec<usize> {
    let mut rng = seed.rng();
    let mut s: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    s.sort_unstable();
    s
}

fn distinct(sorted: &[usize]) -> usize {
    sorted.windows(2).filter(|w| w[0] != w[1]).count() + usize::from(!sorted.is_empty())
}

/// Labels for all `n` objects from a clustering of one bootstrap sample:
/// sampled objects keep their cluster (first copy wins), the rest are
/// classified with the method's rule.
fn extend_labels(
    ds: &Dataset,
    method: MethodId,
    k: usize,
    sample: &[usize],
    fit_seed: &RngSeed,
    restarts: usize,
) -> Result<(Vec<usize>, usize, bool)> {
    let n = ds.len();
    let sub = ds.subset(sample)?;
    let part = method.cluster_with(&sub, k, fit_seed, restarts)?;
    let mut labels = vec![usize::MAX; n];
    for (pos, &obj) in sample.iter().enumerate() {
        if labels[obj] == usize::MAX {
            labels[obj] = part.label(pos);
        }
    }
    let outside: Vec<usize> = (0..n).filter(|&i| labels[i] == usize::MAX).collect();
    let predicted = classify(ds, sample, &part, &outside, ClassifierRule::for_method(method))?;
    for (&obj, &l) in outside.iter().zip(&predicted.labels) {
        labels[obj] = l;
    }
    Ok((labels, part.k(), predicted.medoid_fallback))
}

/// Share of ordered pairs (diagonal included) whose co-membership differs
/// between two labelings, from their contingency table.
pub(crate) fn comembership_disagreement(l1: &[usize], k1: usize, l2: &[usize], k2: usize) -> f64 {
    let n = l1.len();
    let mut table = vec![0u64; k1 * k2];
    let mut rows = vec![0u64; k1];
    let mut cols = vec![0u64; k2];
    for (&a, &b) in l1.iter().zip(l2) {
        table[a * k2 + b] += 1;
        rows[a] += 1;
        cols[b] += 1;
    }
    let sq = |v: &[u64]| v.iter().map(|&x| x * x).sum::<u64>();
    let differing = sq(&rows) + sq(&cols) - 2 * sq(&table);
    differing as f64 / (n * n) as f64
}

/// Bootstab of `method` at `k`: mean co-membership disagreement between the
/// clusterings of two bootstrap samples, over A repetitions. Smaller is better.
///
/// Samples for repetition `a` come from the stream `(seed, "boot", k, a)` and
/// are shared by every method evaluated with the same config.
pub fn bootstab(ds: &Dataset, method: MethodId, k: usize, cfg: &StabilityConfig) -> Result<StabilityOutcome> {
    cfg.validate()?;
    let n = ds.len();
    if k < 2 || k > n {
        return Err(Error::Contract(format!("Bootstab needs 2 <= K <= n, got K = {k}, n = {n}")));
    }
    let sample_root = cfg.seed.named("boot").child(k as u64);
    let fit_root = cfg.seed.named("boot-fit").child(k as u64);
    let reps = (0..cfg.repetitions)
        .into_par_iter()
        .map(|a| {
            let mut fits = Vec::with_capacity(2);
            let mut retries = 0;
            for t in 0..2u64 {
                let mut last = String::new();
                let mut done = None;
                for attempt in 0..=cfg.max_retries {
                    let stream = sample_root.child(a as u64).child(t).child(attempt as u64);
                    let sample = bootstrap_sample(n, &stream);
                    if distinct(&sample) < k {
                        last = format!("bootstrap sample has fewer than {k} distinct objects");
                        continue;
                    }
                    let fit_seed = fit_root.child(a as u64).child(t).child(attempt as u64);
                    match extend_labels(ds, method, k, &sample, &fit_seed, cfg.kmeans_restarts) {
                        Ok(r) => {
                            retries += attempt;
                            done = Some(r);
                            break;
                        }
                        Err(e) => last = e.to_string(),
                    }
                }
                fits.push(done.ok_or_else(|| Error::RetryCapExceeded {
                    attempts: cfg.max_retries + 1,
                    reason: last,
                })?);
            }
            let (l2, k2, f2) = fits.pop().expect("two samples");
            let (l1, k1, f1) = fits.pop().expect("two samples");
            Ok((comembership_disagreement(&l1, k1, &l2, k2), retries, f1 || f2))
        })
        .collect::<Result<Vec<_>>>()?;
    let value = reps.iter().map(|r| r.0).sum::<f64>() / reps.len() as f64;
    let mut notes = Vec::new();
    if reps.iter().any(|r| r.2) {
        notes.push("no coordinates: nearest-medoid used for mean-centroid classification".into());
    }
    Ok(StabilityOutcome {
        value,
        retries: reps.iter().map(|r| r.1).sum(),
        vacuous_clusters: 0,
        notes,
    })
}
