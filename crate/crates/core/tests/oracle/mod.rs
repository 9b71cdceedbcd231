//! Naive reference implementations used to check the fast code paths.
//! Deliberately written with plain loops over objects and exhaustive search.

#![allow(dead_code)]

use clustval::{DissimilarityMatrix, Partition};

fn members(part: &Partition) -> Vec<Vec<usize>> {
    let mut m = vec![Vec::new(); part.k()];
    for i in 0..part.len() {
        m[part.label(i)].push(i);
    }
    m
}

pub fn asw(d: &DissimilarityMatrix, part: &Partition) -> f64 {
    let cl = members(part);
    let n = part.len();
    let mut total = 0.0;
    for i in 0..n {
        let own = &cl[part.label(i)];
        if own.len() == 1 {
            continue;
        }
        let a = own.iter().filter(|&&j| j != i).map(|&j| d.get(i, j)).sum::<f64>() / (own.len() - 1) as f64;
        let mut b = f64::INFINITY;
        for (h, other) in cl.iter().enumerate() {
            if h != part.label(i) {
                let m = other.iter().map(|&j| d.get(i, j)).sum::<f64>() / other.len() as f64;
                b = b.min(m);
            }
        }
        let s = if a.max(b) == 0.0 { 0.0 } else { (b - a) / a.max(b) };
        total += s;
    }
    total / n as f64
}

/// Ratio of between to within squared dissimilarity using ordered double sums.
pub fn ch(d: &DissimilarityMatrix, part: &Partition) -> f64 {
    let n = part.len();
    let k = part.k();
    let mut t = 0.0;
    for i in 0..n {
        for j in 0..n {
            t += d.get(i, j).powi(2);
        }
    }
    t /= 2.0 * n as f64;
    let mut w = 0.0;
    for c in members(part) {
        let mut s = 0.0;
        for &i in &c {
            for &j in &c {
                s += d.get(i, j).powi(2);
            }
        }
        w += s / (2.0 * c.len() as f64);
    }
    ((t - w) / (k - 1) as f64) / (w / (n - k) as f64)
}

pub fn dunn(d: &DissimilarityMatrix, part: &Partition) -> f64 {
    let cl = members(part);
    let mut sep = f64::INFINITY;
    for a in 0..cl.len() {
        for b in 0..cl.len() {
            if a != b {
                for &i in &cl[a] {
                    for &j in &cl[b] {
                        sep = sep.min(d.get(i, j));
                    }
                }
            }
        }
    }
    let mut diam = 0.0_f64;
    let mut any = false;
    for c in &cl {
        for &i in c {
            for &j in c {
                if i != j {
                    any = true;
                    diam = diam.max(d.get(i, j));
                }
            }
        }
    }
    if any {
        sep / diam
    } else {
        f64::INFINITY
    }
}

pub fn pearson_gamma(d: &DissimilarityMatrix, part: &Partition) -> f64 {
    let n = part.len();
    let mut x = Vec::new();
    let mut y = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            x.push(d.get(i, j));
            y.push(if part.label(i) == part.label(j) { 0.0 } else { 1.0 });
        }
    }
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let cov: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// κ nearest neighbours by a full sort on (dissimilarity, index).
pub fn knn(d: &DissimilarityMatrix, i: usize, kappa: usize) -> Vec<usize> {
    let mut others: Vec<usize> = (0..d.len()).filter(|&j| j != i).collect();
    others.sort_by(|&a, &b| d.get(i, a).partial_cmp(&d.get(i, b)).unwrap().then(a.cmp(&b)));
    others.truncate(kappa);
    others
}

pub fn cvnn_sep(d: &DissimilarityMatrix, part: &Partition, kappa: usize) -> f64 {
    let mut worst = 0.0_f64;
    for c in members(part) {
        let mut s = 0.0;
        for &i in &c {
            let q = knn(d, i, kappa).iter().filter(|&&j| part.label(j) != part.label(i)).count();
            s += q as f64 / kappa as f64;
        }
        worst = worst.max(s / c.len() as f64);
    }
    worst
}

pub fn cvnn_com(d: &DissimilarityMatrix, part: &Partition) -> f64 {
    let (mut s, mut c) = (0.0, 0);
    for i in 0..part.len() {
        for j in 0..i {
            if part.label(i) == part.label(j) {
                s += d.get(i, j);
                c += 1;
            }
        }
    }
    if c == 0 {
        0.0
    } else {
        s / c as f64
    }
}

/// Mean over objects of the average dissimilarity to the rest of their cluster.
pub fn ave_within(d: &DissimilarityMatrix, part: &Partition) -> f64 {
    let cl = members(part);
    let n = part.len();
    let mut total = 0.0;
    for i in 0..n {
        let own = &cl[part.label(i)];
        if own.len() > 1 {
            total += own.iter().map(|&j| d.get(i, j)).sum::<f64>() / (own.len() - 1) as f64;
        }
    }
    total / n as f64
}

pub fn sep_index(d: &DissimilarityMatrix, part: &Partition, p: f64) -> f64 {
    let mut pool = Vec::new();
    for c in members(part) {
        let mut near: Vec<f64> = c
            .iter()
            .map(|&i| {
                (0..part.len())
                    .filter(|&j| part.label(j) != part.label(i))
                    .map(|j| d.get(i, j))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        near.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let take = ((p * c.len() as f64 + 1e-9).floor() as usize).max(1);
        pool.extend_from_slice(&near[..take]);
    }
    pool.iter().sum::<f64>() / pool.len() as f64
}

/// Largest over clusters and two-part splits of the smallest cross
/// dissimilarity, by enumerating every split.
pub fn widest_gap(d: &DissimilarityMatrix, part: &Partition) -> f64 {
    let mut widest = 0.0_f64;
    for c in members(part) {
        let m = c.len();
        if m < 2 {
            continue;
        }
        // Fix the first member on side A so each split is seen once.
        for mask in 0u32..(1 << (m - 1)) {
            let side_b: Vec<bool> = (0..m).map(|t| t > 0 && mask >> (t - 1) & 1 == 1).collect();
            if !side_b.iter().any(|&b| b) {
                continue;
            }
            let mut cross = f64::INFINITY;
            for a in 0..m {
                for b in 0..m {
                    if !side_b[a] && side_b[b] {
                        cross = cross.min(d.get(c[a], c[b]));
                    }
                }
            }
            widest = widest.max(cross);
        }
    }
    widest
}

pub fn entropy(part: &Partition) -> f64 {
    let n = part.len() as f64;
    let mut h = 0.0;
    for c in members(part) {
        let q = c.len() as f64 / n;
        h -= q * q.ln();
    }
    h
}

/// ARI from pair agreement counts over all unordered pairs.
pub fn ari(p: &Partition, q: &Partition) -> f64 {
    let n = p.len();
    let (mut both, mut only_p, mut only_q, mut total) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let a = p.label(i) == p.label(j);
            let b = q.label(i) == q.label(j);
            both += f64::from(u8::from(a && b));
            only_p += f64::from(u8::from(a));
            only_q += f64::from(u8::from(b));
            total += 1.0;
        }
    }
    let expected = only_p * only_q / total;
    let max = 0.5 * (only_p + only_q);
    if max == expected {
        return 1.0;
    }
    (both - expected) / (max - expected)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Growth {
    Single,
    Complete,
    Average,
}

/// Greedy random-linkage growth with every point-to-cluster dissimilarity
/// recomputed from the members at every step.
pub fn random_linkage_trace(d: &DissimilarityMatrix, seeds: &[usize], growth: Growth) -> Vec<usize> {
    let n = d.len();
    let mut label = vec![usize::MAX; n];
    let mut clusters: Vec<Vec<usize>> = seeds.iter().map(|&s| vec![s]).collect();
    for (c, &s) in seeds.iter().enumerate() {
        label[s] = c;
    }
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for x in 0..n {
            if label[x] != usize::MAX {
                continue;
            }
            for (h, members) in clusters.iter().enumerate() {
                let ds = members.iter().map(|&y| d.get(x, y));
                let v = match growth {
                    Growth::Single => ds.fold(f64::INFINITY, f64::min),
                    Growth::Complete => ds.fold(0.0, f64::max),
                    Growth::Average => ds.sum::<f64>() / members.len() as f64,
                };
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, x, h));
                }
            }
        }
        let Some((_, x, h)) = best else { break };
        label[x] = h;
        clusters[h].push(x);
    }
    label
}

/// Nearest-seed assignment with every seed kept in its own cluster.
pub fn random_centroid_trace(d: &DissimilarityMatrix, seeds: &[usize]) -> Vec<usize> {
    (0..d.len())
        .map(|i| {
            if let Some(c) = seeds.iter().position(|&s| s == i) {
                return c;
            }
            let mut best = 0;
            for c in 1..seeds.len() {
                if d.get(i, seeds[c]) < d.get(i, seeds[best]) {
                    best = c;
                }
            }
            best
        })
        .collect()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_nan() || b.is_nan() {
        return a.is_nan() && b.is_nan();
    }
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    // The absolute floor only covers results that cancel to round-off size.
    (a - b).abs() <= tol * a.abs().max(b.abs()) || (a - b).abs() <= 1e-14
}

pub mod instances {
    use clustval::{DataMatrix, DissimilarityMatrix, Partition, RngSeed};
    use rand::seq::SliceRandom;
    use rand::Rng;

    /// A random dissimilarity matrix with `n` objects: Euclidean, arbitrary
    /// metric-free, or integer-valued with many ties, depending on `kind`.
    pub fn dissimilarity(n: usize, kind: u64, seed: &RngSeed) -> DissimilarityMatrix {
        let mut rng = seed.rng();
        match kind % 3 {
            0 => {
                let p = rng.random_range(1..=3);
                let vals: Vec<f64> = (0..n * p).map(|_| rng.random_range(-5.0..5.0)).collect();
                clustval::euclidean_dissimilarity(&DataMatrix::new(n, p, vals).unwrap())
            }
            1 => {
                let mut m = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..i {
                        let v = rng.random_range(0.01..10.0);
                        m[i * n + j] = v;
                        m[j * n + i] = v;
                    }
                }
                DissimilarityMatrix::new(n, m).unwrap()
            }
            _ => {
                let mut m = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..i {
                        let v = f64::from(rng.random_range(1..=4u32));
                        m[i * n + j] = v;
                        m[j * n + i] = v;
                    }
                }
                DissimilarityMatrix::new(n, m).unwrap()
            }
        }
    }

    /// A random partition of `n` objects into exactly `k` nonempty clusters.
    pub fn partition(n: usize, k: usize, seed: &RngSeed) -> Partition {
        let mut rng = seed.rng();
        let mut labels: Vec<usize> = (0..n).map(|i| if i < k { i } else { rng.random_range(0..k) }).collect();
        labels.shuffle(&mut rng);
        Partition::new(labels, k).unwrap()
    }

    /// Instance `i` of a reproducible family with 3 ≤ n ≤ 12 and 2 ≤ K ≤ n − 1.
    pub fn instance(i: u64) -> (DissimilarityMatrix, Partition) {
        let seed = RngSeed::new(0x0bac1e).child(i);
        let mut rng = seed.named("shape").rng();
        let n = rng.random_range(3..=12);
        let k = rng.random_range(2..n);
        (dissimilarity(n, i, &seed.named("d")), partition(n, k, &seed.named("p")))
    }
}
