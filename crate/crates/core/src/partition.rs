use std::collections::HashMap;

use crate::error::{Error, Result};

/// A crisp partition of `n` objects into `K` nonempty clusters.
///
/// Labels are `0..K`. Construction rejects empty clusters instead of
/// renumbering them away.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    sizes: Vec<usize>,
}

impl Partition {
    /// `k` is the declared number of clusters; every label in `0..k` must occur.
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidData("empty partition".into()));
        }
        let mut sizes = vec![0; k];
        for &l in &labels {
            if l >= k {
                return Err(Error::Contract(format!("label {l} outside 0..{k}")));
            }
            sizes[l] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::EmptyCluster(empty));
        }
        Ok(Self { labels, sizes })
    }

    /// Relabels arbitrary ids to `0..K` in order of first appearance.
    pub fn from_arbitrary_labels<T: Eq + std::hash::Hash + Copy>(raw: &[T]) -> Self {
        let mut map = HashMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        let mut sizes = Vec::new();
        for &r in raw {
            let next = map.len();
            let l = *map.entry(r).or_insert(next);
            if l == sizes.len() {
                sizes.push(0);
            }
            sizes[l] += 1;
            labels.push(l);
        }
        Self { labels, sizes }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Member indices per cluster, each list ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }

    /// Applies `perm[old] = new` to every label.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        Self::new(self.labels.iter().map(|&l| perm[l]).collect(), self.k())
    }

    pub(crate) fn require_k_at_least_two(&self) -> Result<()> {
        if self.k() < 2 {
            return Err(Error::Contract(format!(
                "validity indexes need K >= 2, got K = {}",
                self.k()
            )));
        }
        Ok(())
    }

    pub(crate) fn require_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: self.len(),
            });
        }
        Ok(())
    }
}
