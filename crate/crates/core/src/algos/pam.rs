//! Partitioning Around Medoids: greedy BUILD followed by best-improvement SWAP.

use super::check_k;
use crate::data::DissimilarityMatrix;
use crate::error::Result;
use crate::partition::Partition;

const MAX_SWAPS: usize = 1000;

#[derive(Debug, Clone)]
pub struct PamFit {
    pub partition: Partition,
    /// Medoid object of cluster `c` is `medoids[c]`; ascending.
    pub medoids: Vec<usize>,
    /// Sum of dissimilarities to the assigned medoid.
    pub cost: f64,
    /// Cost after BUILD and after each accepted swap.
    pub trace: Vec<f64>,
}

pub fn pam(d: &DissimilarityMatrix, k: usize) -> Result<Partition> {
    pam_fit(d, k).map(|f| f.partition)
}

/// Nearest and second-nearest medoid distance per object.
struct Assignment {
    nearest: Vec<usize>,
    dn: Vec<f64>,
    ds: Vec<f64>,
}

fn assign(d: &DissimilarityMatrix, medoids: &[usize]) -> Assignment {
    let n = d.len();
    let mut nearest = vec![0; n];
    let mut dn = vec![f64::INFINITY; n];
    let mut ds = vec![f64::INFINITY; n];
    for j in 0..n {
        for (slot, &m) in medoids.iter().enumerate() {
            let v = d.get(j, m);
            if v < dn[j] {
                ds[j] = dn[j];
                dn[j] = v;
                nearest[j] = slot;
            } else if v < ds[j] {
                ds[j] = v;
            }
        }
    }
    Assignment { nearest, dn, ds }
}

fn build(d: &DissimilarityMatrix, k: usize) -> Vec<usize> {
    let n = d.len();
    let first = (0..n)
        .map(|i| (i, d.row(i).iter().sum::<f64>()))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc })
        .0;
    let mut medoids = vec![first];
    let mut is_medoid = vec![false; n];
    is_medoid[first] = true;
    let mut dn: Vec<f64> = d.row(first).to_vec();
    while medoids.len() < k {
        let mut best = None;
        let mut best_gain = f64::NEG_INFINITY;
        for cand in (0..n).filter(|&c| !is_medoid[c]) {
            let row = d.row(cand);
            let gain: f64 = (0..n).map(|j| (dn[j] - row[j]).max(0.0)).sum();
            if gain > best_gain {
                best_gain = gain;
                best = Some(cand);
            }
        }
        let m = best.expect("k <= n leaves a candidate");
        is_medoid[m] = true;
        medoids.push(m);
        for (v, &x) in dn.iter_mut().zip(d.row(m)) {
            *v = v.min(x);
        }
    }
    medoids
}

/// BUILD+SWAP; deterministic, ties resolved towards the lowest index.
pub fn pam_fit(d: &DissimilarityMatrix, k: usize) -> Result<PamFit> {
    let n = d.len();
    check_k(k, n)?;
    let mut medoids = build(d, k);
    let mut a = assign(d, &medoids);
    let mut cost: f64 = a.dn.iter().sum();
    let mut trace = vec![cost];
    let mut is_medoid = vec![false; n];
    medoids.iter().for_each(|&m| is_medoid[m] = true);

    for _ in 0..MAX_SWAPS {
        let mut best_delta = 0.0;
        let mut best_swap = None;
        for slot in 0..k {
            for cand in (0..n).filter(|&c| !is_medoid[c]) {
                let row = d.row(cand);
                let mut delta = 0.0;
                for j in 0..n {
                    let to_cand = row[j];
                    delta += if a.nearest[j] == slot {
                        to_cand.min(a.ds[j]) - a.dn[j]
                    } else {
                        (to_cand - a.dn[j]).min(0.0)
                    };
                }
                // Relative threshold keeps rounding noise from cycling swaps.
                if delta < best_delta - 1e-12 * cost.max(1.0) {
                    best_delta = delta;
                    best_swap = Some((slot, cand));
                }
            }
        }
        let Some((slot, cand)) = best_swap else { break };
        is_medoid[medoids[slot]] = false;
        is_medoid[cand] = true;
        medoids[slot] = cand;
        a = assign(d, &medoids);
        let next: f64 = a.dn.iter().sum();
        debug_assert!(next <= cost + 1e-9 * cost.max(1.0), "PAM cost increased");
        cost = next;
        trace.push(cost);
    }

    medoids.sort_unstable();
    let a = assign(d, &medoids);
    let mut labels = a.nearest;
    // A medoid coinciding with another one must still own its cluster.
    for (slot, &m) in medoids.iter().enumerate() {
        labels[m] = slot;
    }
    let cost = (0..n).map(|j| d.get(j, medoids[labels[j]])).sum();
    Ok(PamFit {
        partition: Partition::new(labels, k)?,
        medoids,
        cost,
        trace,
    })
}
