//! CVNN: κ-nearest-neighbour separation plus average within-cluster
//! dissimilarity, normalised over a set of clusterings.

use crate::data::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::partition::Partition;

use super::check;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvnnComponents {
    pub sep: f64,
    pub com: f64,
}

/// κ nearest neighbours of every object (self excluded, ties by lowest index).
/// Depends only on the dissimilarities, so it is computed once per data set.
#[derive(Debug, Clone)]
pub struct NeighbourTable {
    kappa: usize,
    nn: Vec<usize>,
}

impl NeighbourTable {
    pub fn new(d: &DissimilarityMatrix, kappa: usize) -> Result<Self> {
        let n = d.len();
        if kappa < 1 || kappa >= n {
            return Err(Error::Contract(format!("kappa = {kappa} must lie in 1..={}", n - 1)));
        }
        let mut nn = Vec::with_capacity(n * kappa);
        let mut order: Vec<usize> = Vec::with_capacity(n - 1);
        for i in 0..n {
            let row = d.row(i);
            order.clear();
            order.extend((0..n).filter(|&j| j != i));
            order.select_nth_unstable_by(kappa - 1, |&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
            nn.extend_from_slice(&order[..kappa]);
        }
        Ok(Self { kappa, nn })
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.nn[i * self.kappa..(i + 1) * self.kappa]
    }

    /// Separation: worst cluster's mean share of foreign neighbours.
    pub fn sep(&self, part: &Partition) -> Result<f64> {
        part.require_len(self.nn.len() / self.kappa)?;
        part.require_k_at_least_two()?;
        let mut foreign = vec![0usize; part.k()];
        for i in 0..part.len() {
            let own = part.label(i);
            foreign[own] += self
                .neighbours(i)
                .iter()
                .filter(|&&j| part.label(j) != own)
                .count();
        }
        Ok(foreign
            .iter()
            .zip(part.sizes())
            .map(|(&q, &nk)| q as f64 / (nk * self.kappa) as f64)
            .fold(0.0, f64::max))
    }
}

/// Mean dissimilarity over all within-cluster unordered pairs; 0 if none.
pub(crate) fn compactness(d: &DissimilarityMatrix, part: &Partition) -> Result<f64> {
    check(d, part)?;
    let (mut sum, mut count) = (0.0, 0usize);
    for (i, j, v) in d.pairs() {
        if part.label(i) == part.label(j) {
            sum += v;
            count += 1;
        }
    }
    Ok(if count == 0 { 0.0 } else { sum / count as f64 })
}

pub fn cvnn_components(d: &DissimilarityMatrix, part: &Partition, kappa: usize) -> Result<CvnnComponents> {
    check(d, part)?;
    let sep = NeighbourTable::new(d, kappa)?.sep(part)?;
    Ok(CvnnComponents {
        sep,
        com: compactness(d, part)?,
    })
}

/// `sep / max sep + com / max com` over the given clusterings (smaller is
/// better). A zero maximum makes its term zero for everyone.
pub fn cvnn_aggregate(components: &[CvnnComponents]) -> Result<Vec<f64>> {
    if components.is_empty() {
        return Err(Error::Contract("CVNN needs at least one clustering".into()));
    }
    let max_sep = components.iter().map(|c| c.sep).fold(0.0, f64::max);
    let max_com = components.iter().map(|c| c.com).fold(0.0, f64::max);
    let ratio = |x: f64, m: f64| if m == 0.0 { 0.0 } else { x / m };
    Ok(components
        .iter()
        .map(|c| ratio(c.sep, max_sep) + ratio(c.com, max_com))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{euclidean_dissimilarity, DataMatrix};

    fn line(xs: &[f64]) -> DissimilarityMatrix {
        euclidean_dissimilarity(&DataMatrix::new(xs.len(), 1, xs.to_vec()).unwrap())
    }

    #[test]
    fn pairs_example() {
        let d = line(&[0.0, 1.0, 10.0, 11.0]);
        let p = Partition::new(vec![0, 0, 1, 1], 2).unwrap();
        let c = cvnn_components(&d, &p, 1).unwrap();
        assert_eq!(c, CvnnComponents { sep: 0.0, com: 1.0 });
        let c3 = cvnn_components(&d, &p, 3).unwrap();
        assert!((c3.sep - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn surrounded_cluster_hits_upper_bound() {
        // The singleton at 5 sits between two clusters; its neighbour is foreign.
        let d = line(&[0.0, 0.5, 5.0, 9.5, 10.0]);
        let p = Partition::new(vec![0, 0, 1, 2, 2], 3).unwrap();
        assert_eq!(cvnn_components(&d, &p, 1).unwrap().sep, 1.0);
    }

    #[test]
    fn aggregate_rules() {
        let one = cvnn_aggregate(&[CvnnComponents { sep: 0.0, com: 1.0 }]).unwrap();
        assert_eq!(one, vec![1.0]);

        let two = cvnn_aggregate(&[
            CvnnComponents { sep: 0.2, com: 2.0 },
            CvnnComponents { sep: 0.4, com: 4.0 },
        ])
        .unwrap();
        assert!((two[0] - 1.0).abs() < 1e-15 && (two[1] - 2.0).abs() < 1e-15);

        let zero_sep = cvnn_aggregate(&[
            CvnnComponents { sep: 0.0, com: 3.0 },
            CvnnComponents { sep: 0.0, com: 6.0 },
        ])
        .unwrap();
        assert_eq!(zero_sep, vec![0.5, 1.0]);

        assert!(cvnn_aggregate(&[]).is_err());
    }

    #[test]
    fn kappa_bounds() {
        let d = line(&[0.0, 1.0, 2.0]);
        assert!(NeighbourTable::new(&d, 3).is_err());
        assert!(NeighbourTable::new(&d, 0).is_err());
    }
}
