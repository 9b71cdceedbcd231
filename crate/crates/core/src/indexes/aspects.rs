//! Indexes measuring one isolated aspect of cluster quality.

use super::check;
use crate::data::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Average within-cluster dissimilarity with equal weight per object:
/// `(1/n) Σ_k 1/(n_k − 1) Σ_{i≠j ∈ C_k} d(i,j)` over ordered pairs.
/// Singleton clusters contribute 0.
pub fn ave_within(d: &DissimilarityMatrix, part: &Partition) -> Result<f64> {
    check(d, part)?;
    let mut within = vec![0.0; part.k()];
    for (i, j, v) in d.pairs() {
        if part.label(i) == part.label(j) {
            within[part.label(i)] += 2.0 * v;
        }
    }
    let total: f64 = within
        .iter()
        .zip(part.sizes())
        .filter(|(_, &nk)| nk > 1)
        .map(|(s, &nk)| s / (nk - 1) as f64)
        .sum();
    Ok(total / d.len() as f64)
}

/// Separation index: mean of the smallest nearest-foreign-object distances,
/// taking `max(1, ⌊p·n_k⌋)` objects from each cluster.
pub fn sep_index(d: &DissimilarityMatrix, part: &Partition, p: f64) -> Result<f64> {
    check(d, part)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Contract(format!("p = {p} must lie in (0,1)")));
    }
    let mut border: Vec<Vec<f64>> = part.sizes().iter().map(|&s| Vec::with_capacity(s)).collect();
    for i in 0..d.len() {
        let own = part.label(i);
        let nearest = d
            .row(i)
            .iter()
            .zip(part.labels())
            .filter(|(_, &l)| l != own)
            .map(|(&v, _)| v)
            .fold(f64::INFINITY, f64::min);
        border[own].push(nearest);
    }
    let (mut sum, mut count) = (0.0, 0usize);
    for mut b in border {
        // The epsilon guards against p·n_k landing just below an integer.
        let take = ((p * b.len() as f64 + 1e-9).floor() as usize).max(1);
        b.sort_by(f64::total_cmp);
        sum += b[..take].iter().sum::<f64>();
        count += take;
    }
    Ok(sum / count as f64)
}

/// Largest edge of a minimum spanning tree over `members` (0 for fewer than 2).
pub(crate) fn mst_max_edge(d: &DissimilarityMatrix, members: &[usize]) -> f64 {
    let m = members.len();
    if m < 2 {
        return 0.0;
    }
    let mut in_tree = vec![false; m];
    let mut best = vec![f64::INFINITY; m];
    let mut widest = 0.0_f64;
    let mut cur = 0;
    in_tree[0] = true;
    for _ in 1..m {
        let row = d.row(members[cur]);
        let mut next = usize::MAX;
        let mut next_d = f64::INFINITY;
        for (slot, &obj) in members.iter().enumerate() {
            if in_tree[slot] {
                continue;
            }
            best[slot] = best[slot].min(row[obj]);
            if next == usize::MAX || best[slot] < next_d {
                next = slot;
                next_d = best[slot];
            }
        }
        in_tree[next] = true;
        widest = widest.max(next_d);
        cur = next;
    }
    widest
}

/// Widest within-cluster gap: over all clusters and all splits of a cluster
/// into two parts, the largest minimum cross dissimilarity. Computed as the
/// maximum minimum-spanning-tree edge per cluster.
pub fn widest_gap(d: &DissimilarityMatrix, part: &Partition) -> Result<f64> {
    check(d, part)?;
    Ok(part
        .clusters()
        .iter()
        .map(|members| mst_max_edge(d, members))
        .fold(0.0, f64::max))
}

/// Shannon entropy (natural log) of the cluster size distribution.
pub fn entropy(part: &Partition) -> Result<f64> {
    part.require_k_at_least_two()?;
    let n = part.len() as f64;
    Ok(-part
        .sizes()
        .iter()
        .map(|&s| {
            let q = s as f64 / n;
            q * q.ln()
        })
        .sum::<f64>())
}
