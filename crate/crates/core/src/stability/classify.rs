use crate::algos::MethodId;
use crate::data::{sq_euclid, Dataset};
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CentroidKind {
    /// Cluster mean in coordinate space (k-means, Ward).
    Mean,
    /// Member minimising the summed dissimilarity to the other members (PAM).
    Medoid,
}

/// Supervised rule for assigning new objects to existing clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassifierRule {
    NearestCentroid(CentroidKind),
    NearestNeighbour,
    FurthestNeighbour,
    AverageDissimilarity,
}

impl ClassifierRule {
    pub fn for_method(method: MethodId) -> Self {
        match method {
            MethodId::KMeans | MethodId::Ward => ClassifierRule::NearestCentroid(CentroidKind::Mean),
            MethodId::Pam => ClassifierRule::NearestCentroid(CentroidKind::Medoid),
            MethodId::Single => ClassifierRule::NearestNeighbour,
            MethodId::Complete => ClassifierRule::FurthestNeighbour,
            MethodId::Average => ClassifierRule::AverageDissimilarity,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub labels: Vec<usize>,
    /// Mean centroids were requested without coordinates; medoids were used.
    pub medoid_fallback: bool,
}

fn argmin(scores: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_v = f64::INFINITY;
    for (c, v) in scores.enumerate() {
        if v < best_v {
            best_v = v;
            best = c;
        }
    }
    best
}

fn medoid(ds: &Dataset, members: &[usize]) -> usize {
    let d = &ds.diss;
    let mut best = members[0];
    let mut best_v = f64::INFINITY;
    for &m in members {
        let v: f64 = members.iter().map(|&o| d.get(m, o)).sum();
        if v < best_v {
            best_v = v;
            best = m;
        }
    }
    best
}

/// Assigns each object in `targets` to a cluster of `train_labels`, which
/// partitions the objects listed in `train` (a multiset of object indices).
/// Ties go to the lowest cluster id.
pub fn classify(
    ds: &Dataset,
    train: &[usize],
    train_labels: &Partition,
    targets: &[usize],
    rule: ClassifierRule,
) -> Result<Classification> {
    train_labels.require_len(train.len())?;
    let k = train_labels.k();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (&obj, &l) in train.iter().zip(train_labels.labels()) {
        members[l].push(obj);
    }
    if members.iter().any(Vec::is_empty) {
        return Err(Error::Contract("classifier needs every cluster nonempty".into()));
    }
    let d = &ds.diss;
    let mut medoid_fallback = false;
    let labels = match rule {
        ClassifierRule::NearestCentroid(kind) => {
            let coords = match (kind, &ds.data) {
                (CentroidKind::Mean, Some(x)) => Some(x),
                (CentroidKind::Mean, None) => {
                    medoid_fallback = true;
                    None
                }
                (CentroidKind::Medoid, _) => None,
            };
            match coords {
                Some(x) => {
                    let centres: Vec<Vec<f64>> = members
                        .iter()
                        .map(|m| {
                            let mut c = vec![0.0; x.ncols()];
                            for &o in m {
                                c.iter_mut().zip(x.row(o)).for_each(|(a, b)| *a += b);
                            }
                            c.iter_mut().for_each(|a| *a /= m.len() as f64);
                            c
                        })
                        .collect();
                    targets
                        .iter()
                        .map(|&t| argmin(centres.iter().map(|c| sq_euclid(x.row(t), c))))
                        .collect()
                }
                None => {
                    let meds: Vec<usize> = members.iter().map(|m| medoid(ds, m)).collect();
                    targets
                        .iter()
                        .map(|&t| argmin(meds.iter().map(|&m| d.get(t, m))))
                        .collect()
                }
            }
        }
        ClassifierRule::NearestNeighbour => targets
            .iter()
            .map(|&t| {
                let row = d.row(t);
                argmin(members.iter().map(|m| m.iter().map(|&o| row[o]).fold(f64::INFINITY, f64::min)))
            })
            .collect(),
        ClassifierRule::FurthestNeighbour => targets
            .iter()
            .map(|&t| {
                let row = d.row(t);
                argmin(members.iter().map(|m| m.iter().map(|&o| row[o]).fold(0.0, f64::max)))
            })
            .collect(),
        ClassifierRule::AverageDissimilarity => targets
            .iter()
            .map(|&t| {
                let row = d.row(t);
                argmin(members.iter().map(|m| m.iter().map(|&o| row[o]).sum::<f64>() / m.len() as f64))
            })
            .collect(),
    };
    Ok(Classification {
        labels,
        medoid_fallback,
    })
}
