use rand::seq::index::sample;

use super::check_k;
use crate::data::{sq_euclid, DataMatrix};
use crate::error::Result;
use crate::partition::Partition;
use crate::rng::RngSeed;

const MAX_ITER: usize = 100;

#[derive(Debug, Clone)]
pub struct KMeansFit {
    pub partition: Partition,
    pub centroids: Vec<Vec<f64>>,
    /// Within-cluster sum of squares of the returned partition.
    pub wss: f64,
    /// WSS after every update step of the winning restart.
    pub trace: Vec<f64>,
}

pub fn kmeans(data: &DataMatrix, k: usize, restarts: usize, seed: &RngSeed) -> Result<Partition> {
    kmeans_fit(data, k, restarts, seed).map(|f| f.partition)
}

/// Lloyd's algorithm from `restarts` random initialisations, keeping the
/// lowest WSS (earliest restart on ties).
pub fn kmeans_fit(data: &DataMatrix, k: usize, restarts: usize, seed: &RngSeed) -> Result<KMeansFit> {
    check_k(k, data.nrows())?;
    let mut best: Option<KMeansFit> = None;
    for r in 0..restarts.max(1) {
        let fit = lloyd(data, k, &seed.child(r as u64))?;
        if best.as_ref().is_none_or(|b| fit.wss < b.wss) {
            best = Some(fit);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn means(data: &DataMatrix, labels: &[usize], k: usize) -> Vec<Vec<f64>> {
    let p = data.ncols();
    let mut sums = vec![vec![0.0; p]; k];
    let mut counts = vec![0usize; k];
    for (row, &l) in data.rows().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums[l].iter_mut().zip(row) {
            *s += v;
        }
    }
    for (s, &c) in sums.iter_mut().zip(&counts) {
        if c > 0 {
            s.iter_mut().for_each(|v| *v /= c as f64);
        }
    }
    sums
}

fn wss(data: &DataMatrix, labels: &[usize], centroids: &[Vec<f64>]) -> f64 {
    data.rows()
        .zip(labels)
        .map(|(row, &l)| sq_euclid(row, &centroids[l]))
        .sum()
}

fn nearest(row: &[f64], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centre) in centroids.iter().enumerate() {
        let d = sq_euclid(row, centre);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    best
}

/// Moves the point farthest from its centroid into each empty cluster.
fn repair_empty(data: &DataMatrix, labels: &mut [usize], centroids: &mut [Vec<f64>], k: usize) {
    loop {
        let mut counts = vec![0usize; k];
        labels.iter().for_each(|&l| counts[l] += 1);
        let Some(empty) = counts.iter().position(|&c| c == 0) else {
            return;
        };
        let mut far = None;
        let mut far_d = -1.0;
        for (i, row) in data.rows().enumerate() {
            if counts[labels[i]] < 2 {
                continue;
            }
            let d = sq_euclid(row, &centroids[labels[i]]);
            if d > far_d {
                far_d = d;
                far = Some(i);
            }
        }
        let i = far.expect("k <= n leaves a cluster with two members");
        labels[i] = empty;
        centroids[empty] = data.row(i).to_vec();
    }
}

fn lloyd(data: &DataMatrix, k: usize, seed: &RngSeed) -> Result<KMeansFit> {
    let n = data.nrows();
    let mut rng = seed.rng();
    let mut centroids: Vec<Vec<f64>> = sample(&mut rng, n, k)
        .into_iter()
        .map(|i| data.row(i).to_vec())
        .collect();
    let mut labels = vec![usize::MAX; n];
    let mut trace = Vec::new();
    for _ in 0..MAX_ITER {
        let mut next: Vec<usize> = data.rows().map(|row| nearest(row, &centroids)).collect();
        repair_empty(data, &mut next, &mut centroids, k);
        if next == labels {
            break;
        }
        labels = next;
        centroids = means(data, &labels, k);
        let obj = wss(data, &labels, &centroids);
        if let Some(&prev) = trace.last() {
            debug_assert!(obj <= prev * (1.0 + 1e-12) + 1e-12, "k-means objective increased");
        }
        trace.push(obj);
    }
    let wss = wss(data, &labels, &centroids);
    Ok(KMeansFit {
        partition: Partition::new(labels, k)?,
        centroids,
        wss,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ari::adjusted_rand_index;
    use crate::scenarios::scenario1;

    fn line(xs: &[f64]) -> DataMatrix {
        DataMatrix::new(xs.len(), 1, xs.to_vec()).unwrap()
    }

    #[test]
    fn separated_pairs() {
        let p = kmeans(&line(&[0.0, 1.0, 10.0, 11.0]), 2, 10, &RngSeed::new(1)).unwrap();
        assert_eq!(p.label(0), p.label(1));
        assert_eq!(p.label(2), p.label(3));
        assert_ne!(p.label(0), p.label(2));
    }

    #[test]
    fn k_equals_n() {
        let fit = kmeans_fit(&line(&[0.0, 1.0, 10.0, 11.0]), 4, 3, &RngSeed::new(2)).unwrap();
        assert_eq!(fit.partition.k(), 4);
        assert_eq!(fit.wss, 0.0);
    }

    #[test]
    fn coincident_points_still_give_k_clusters() {
        let fit = kmeans_fit(&line(&[1.0, 1.0, 1.0, 2.0]), 3, 4, &RngSeed::new(3)).unwrap();
        assert_eq!(fit.partition.k(), 3);
    }

    #[test]
    fn objective_non_increasing() {
        let (data, _) = scenario1(&RngSeed::new(11)).unwrap();
        for r in 0..5 {
            let fit = kmeans_fit(&data, 6, 1, &RngSeed::new(r)).unwrap();
            for w in fit.trace.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12), "{:?}", fit.trace);
            }
        }
    }

    #[test]
    fn rejects_k_above_n() {
        assert!(kmeans(&line(&[0.0, 1.0]), 3, 1, &RngSeed::new(0)).is_err());
    }

    #[test]
    fn recovers_scenario1_on_most_seeds() {
        let good = (0..20)
            .filter(|&s| {
                let (data, truth) = scenario1(&RngSeed::new(1000 + s)).unwrap();
                let p = kmeans(&data, 3, 10, &RngSeed::new(s)).unwrap();
                adjusted_rand_index(&p, &truth).unwrap() >= 0.9
            })
            .count();
        assert!(good >= 18, "only {good}/20 seeds reached ARI 0.9");
    }
}
