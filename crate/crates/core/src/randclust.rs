//! Random clusterings used as a reference population for calibration.
//!
//! Both generators start from K distinct objects drawn uniformly. Random
//! K-centroids assigns every object to its nearest seed in one pass; the
//! random K-linkage variants grow the clusters greedily one object at a time,
//! always adding the (object, cluster) pair with the smallest single,
//! complete or average linkage dissimilarity.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::algos::Linkage;
use crate::data::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rng::RngSeed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RandomMethodId {
    RKCentroid,
    RKSingle,
    RKComplete,
    RKAverage,
}

impl RandomMethodId {
    /// Generator order within a calibration collection.
    pub const ALL: [RandomMethodId; 4] = [
        RandomMethodId::RKCentroid,
        RandomMethodId::RKSingle,
        RandomMethodId::RKComplete,
        RandomMethodId::RKAverage,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RandomMethodId::RKCentroid => "rkcentroid",
            RandomMethodId::RKSingle => "rksingle",
            RandomMethodId::RKComplete => "rkcomplete",
            RandomMethodId::RKAverage => "rkaverage",
        }
    }

    /// One-letter plot mark: centroid, nearest, furthest, average.
    pub fn mark(self) -> char {
        match self {
            RandomMethodId::RKCentroid => 'c',
            RandomMethodId::RKSingle => 'n',
            RandomMethodId::RKComplete => 'f',
            RandomMethodId::RKAverage => 'a',
        }
    }

    pub fn generate(self, d: &DissimilarityMatrix, k: usize, seed: &RngSeed) -> Result<Partition> {
        match self {
            RandomMethodId::RKCentroid => random_k_centroids(d, k, seed),
            RandomMethodId::RKSingle => random_k_linkage(d, k, Linkage::Single, seed),
            RandomMethodId::RKComplete => random_k_linkage(d, k, Linkage::Complete, seed),
            RandomMethodId::RKAverage => random_k_linkage(d, k, Linkage::Average, seed),
        }
    }
}

impl fmt::Display for RandomMethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RandomMethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RandomMethodId::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Contract(format!("unknown random clustering method {s:?}")))
    }
}

fn check_k(d: &DissimilarityMatrix, k: usize) -> Result<()> {
    if k == 0 || k > d.len() {
        return Err(Error::Contract(format!("K = {k} must lie in 1..={}", d.len())));
    }
    Ok(())
}

/// K distinct seed objects, uniform over K-subsets, in ascending order.
pub fn draw_seeds(n: usize, k: usize, seed: &RngSeed) -> Vec<usize> {
    let mut s = sample(&mut seed.rng(), n, k).into_vec();
    s.sort_unstable();
    s
}

pub fn random_k_centroids(d: &DissimilarityMatrix, k: usize, seed: &RngSeed) -> Result<Partition> {
    check_k(d, k)?;
    random_k_centroids_from(d, &draw_seeds(d.len(), k, seed))
}

/// Nearest-centroid assignment for given centroid objects (ties to the lowest
/// centroid position; every centroid keeps its own cluster).
pub fn random_k_centroids_from(d: &DissimilarityMatrix, centroids: &[usize]) -> Result<Partition> {
    let mut labels: Vec<usize> = (0..d.len())
        .map(|i| {
            let row = d.row(i);
            let mut best = 0;
            for (c, &s) in centroids.iter().enumerate().skip(1) {
                if row[s] < row[centroids[best]] {
                    best = c;
                }
            }
            best
        })
        .collect();
    for (c, &s) in centroids.iter().enumerate() {
        labels[s] = c;
    }
    Partition::new(labels, centroids.len())
}

pub fn random_k_linkage(
    d: &DissimilarityMatrix,
    k: usize,
    linkage: Linkage,
    seed: &RngSeed,
) -> Result<Partition> {
    check_k(d, k)?;
    random_k_linkage_from(d, &draw_seeds(d.len(), k, seed), linkage)
}

/// Greedy growth from fixed seed objects.
///
/// Keeps the point-to-cluster dissimilarity of every unassigned object to every
/// cluster and updates only the column of the cluster that just grew. Ties in
/// the argmin go to the lowest object index, then the lowest cluster index.
pub fn random_k_linkage_from(
    d: &DissimilarityMatrix,
    seeds: &[usize],
    linkage: Linkage,
) -> Result<Partition> {
    if linkage == Linkage::Ward {
        return Err(Error::Contract("random K-linkage has no Ward variant".into()));
    }
    let n = d.len();
    let k = seeds.len();
    let mut labels = vec![usize::MAX; n];
    for (c, &s) in seeds.iter().enumerate() {
        labels[s] = c;
    }
    let mut sizes = vec![1usize; k];
    let mut remaining: Vec<usize> = (0..n).filter(|&i| labels[i] == usize::MAX).collect();
    // dist[x * k + c] for x in 0..n (only unassigned rows are read)
    let mut dist = vec![0.0; n * k];
    let mut best = vec![0usize; n];
    for &x in &remaining {
        let row = d.row(x);
        for (c, &s) in seeds.iter().enumerate() {
            dist[x * k + c] = row[s];
        }
        best[x] = argmin_cluster(&dist[x * k..(x + 1) * k]);
    }

    while !remaining.is_empty() {
        let (pos, &g) = remaining
            .iter()
            .enumerate()
            .fold(None::<(usize, &usize)>, |acc, (p, x)| match acc {
                Some((_, y)) if dist[y * k + best[*y]] <= dist[*x * k + best[*x]] => acc,
                _ => Some((p, x)),
            })
            .expect("nonempty");
        let h = best[g];
        labels[g] = h;
        sizes[h] += 1;
        remaining.remove(pos);
        let row_g = d.row(g);
        let grown = sizes[h] as f64;
        for &x in &remaining {
            let old = dist[x * k + h];
            let via = row_g[x];
            let new = match linkage {
                Linkage::Single => old.min(via),
                Linkage::Complete => old.max(via),
                Linkage::Average => old + (via - old) / grown,
                Linkage::Ward => unreachable!(),
            };
            dist[x * k + h] = new;
            let b = best[x];
            if b == h {
                if new > old {
                    best[x] = argmin_cluster(&dist[x * k..(x + 1) * k]);
                }
            } else if new < dist[x * k + b] || (new == dist[x * k + b] && h < b) {
                best[x] = h;
            }
        }
    }
    Partition::new(labels, k)
}

fn argmin_cluster(row: &[f64]) -> usize {
    let mut best = 0;
    for (c, &v) in row.iter().enumerate().skip(1) {
        if v < row[best] {
            best = c;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{euclidean_dissimilarity, DataMatrix};

    fn line(xs: &[f64]) -> DissimilarityMatrix {
        euclidean_dissimilarity(&DataMatrix::new(xs.len(), 1, xs.to_vec()).unwrap())
    }

    #[test]
    fn centroids_forced_assignment() {
        let d = line(&[0.0, 1.0, 10.0, 11.0]);
        let p = random_k_centroids_from(&d, &[0, 2]).unwrap();
        assert_eq!(p.labels(), &[0, 0, 1, 1]);
    }

    #[test]
    fn k_equals_n_is_identity() {
        let d = line(&[0.0, 1.0, 10.0, 11.0, 3.0]);
        for s in 0..5 {
            let p = random_k_centroids(&d, 5, &RngSeed::new(s)).unwrap();
            assert_eq!(p.labels(), &[0, 1, 2, 3, 4]);
            for l in [Linkage::Single, Linkage::Complete, Linkage::Average] {
                let q = random_k_linkage(&d, 5, l, &RngSeed::new(s)).unwrap();
                assert_eq!(q.labels(), &[0, 1, 2, 3, 4]);
            }
        }
    }

    #[test]
    fn coincident_centroids_keep_own_clusters() {
        let d = line(&[2.0, 2.0, 2.0]);
        let p = random_k_centroids_from(&d, &[0, 1]).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.label(1), 1);
    }

    #[test]
    fn linkage_pairs() {
        let d = line(&[0.0, 1.0, 10.0, 11.0]);
        for l in [Linkage::Single, Linkage::Complete, Linkage::Average] {
            assert_eq!(random_k_linkage_from(&d, &[0, 2], l).unwrap().labels(), &[0, 0, 1, 1]);
            assert_eq!(random_k_linkage_from(&d, &[0, 3], l).unwrap().labels(), &[0, 0, 1, 1]);
        }
    }

    #[test]
    fn rejects_ward() {
        let d = line(&[0.0, 1.0, 2.0]);
        assert!(random_k_linkage_from(&d, &[0, 1], Linkage::Ward).is_err());
    }
}
