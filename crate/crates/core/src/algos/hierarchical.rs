//! Agglomerative clustering with Lance–Williams updates.
//!
//! Single linkage is read off a minimum spanning tree (Prim, O(n²)); complete,
//! average and Ward use the nearest-neighbour-chain algorithm, which yields the
//! same dendrogram as naive agglomeration for these reducible linkages. Ward
//! runs on squared dissimilarities and reports square-rooted heights.

use serde::{Deserialize, Serialize};

use super::check_k;
use crate::data::DissimilarityMatrix;
use crate::error::Result;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    Average,
    Ward,
}

/// Joins the clusters containing objects `a` and `b` at `height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub height: f64,
}

#[derive(Debug, Clone)]
pub struct Dendrogram {
    n: usize,
    /// n − 1 merges in non-decreasing height order.
    merges: Vec<Merge>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl Dendrogram {
    pub fn build(d: &DissimilarityMatrix, linkage: Linkage) -> Self {
        let mut merges = match linkage {
            Linkage::Single => mst_merges(d),
            _ => nn_chain(d, linkage),
        };
        // Stable: equal heights keep discovery order, so children precede parents.
        merges.sort_by(|x, y| x.height.total_cmp(&y.height));
        Self { n: d.len(), merges }
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Partition into exactly `k` clusters; labels follow first appearance.
    pub fn cut(&self, k: usize) -> Result<Partition> {
        check_k(k, self.n)?;
        let mut uf = UnionFind::new(self.n);
        for m in &self.merges[..self.n - k] {
            uf.union(m.a, m.b);
        }
        let roots: Vec<usize> = (0..self.n).map(|i| uf.find(i)).collect();
        Ok(Partition::from_arbitrary_labels(&roots))
    }
}

pub fn hierarchical(d: &DissimilarityMatrix, linkage: Linkage, k: usize) -> Result<Partition> {
    check_k(k, d.len())?;
    Dendrogram::build(d, linkage).cut(k)
}

fn mst_merges(d: &DissimilarityMatrix) -> Vec<Merge> {
    let n = d.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut from = vec![0usize; n];
    let mut merges = Vec::with_capacity(n - 1);
    let mut cur = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let row = d.row(cur);
        let mut next = usize::MAX;
        let mut next_d = f64::INFINITY;
        for j in 0..n {
            if in_tree[j] {
                continue;
            }
            if row[j] < best[j] {
                best[j] = row[j];
                from[j] = cur;
            }
            if best[j] < next_d || next == usize::MAX {
                next_d = best[j];
                next = j;
            }
        }
        in_tree[next] = true;
        merges.push(Merge {
            a: from[next].min(next),
            b: from[next].max(next),
            height: next_d,
        });
        cur = next;
    }
    merges
}

fn nn_chain(d: &DissimilarityMatrix, linkage: Linkage) -> Vec<Merge> {
    let n = d.len();
    let ward = linkage == Linkage::Ward;
    let mut w: Vec<f64> = (0..n * n)
        .map(|idx| {
            let v = d.get(idx / n, idx % n);
            if ward {
                v * v
            } else {
                v
            }
        })
        .collect();
    let mut size = vec![1usize; n];
    let mut active = vec![true; n];
    let mut remaining = n;
    let mut chain: Vec<usize> = Vec::with_capacity(n);
    let mut merges = Vec::with_capacity(n - 1);

    while remaining > 1 {
        if chain.is_empty() {
            chain.push(active.iter().position(|&a| a).expect("active cluster"));
        }
        let (a, b) = loop {
            let tip = *chain.last().expect("nonempty chain");
            let prev = chain.len().checked_sub(2).map(|i| chain[i]);
            let row = &w[tip * n..(tip + 1) * n];
            // Prefer the chain predecessor on ties, otherwise the lowest index.
            let mut nn = prev.unwrap_or(usize::MAX);
            let mut nn_d = prev.map_or(f64::INFINITY, |p| row[p]);
            for (j, &v) in row.iter().enumerate() {
                if j != tip && active[j] && (v < nn_d || nn == usize::MAX) {
                    nn = j;
                    nn_d = v;
                }
            }
            if Some(nn) == prev {
                chain.pop();
                chain.pop();
                break (tip, nn);
            }
            chain.push(nn);
        };
        let (keep, gone) = (a.min(b), a.max(b));
        let dab = w[keep * n + gone];
        let (na, nb) = (size[keep] as f64, size[gone] as f64);
        for x in 0..n {
            if !active[x] || x == keep || x == gone {
                continue;
            }
            let (dax, dbx) = (w[keep * n + x], w[gone * n + x]);
            let v = match linkage {
                Linkage::Complete => dax.max(dbx),
                Linkage::Average => (na * dax + nb * dbx) / (na + nb),
                Linkage::Ward => {
                    let nx = size[x] as f64;
                    ((na + nx) * dax + (nb + nx) * dbx - nx * dab) / (na + nb + nx)
                }
                Linkage::Single => dax.min(dbx),
            };
            w[keep * n + x] = v;
            w[x * n + keep] = v;
        }
        active[gone] = false;
        size[keep] += size[gone];
        remaining -= 1;
        merges.push(Merge {
            a: keep,
            b: gone,
            height: if ward { dab.max(0.0).sqrt() } else { dab },
        });
    }
    merges
}
