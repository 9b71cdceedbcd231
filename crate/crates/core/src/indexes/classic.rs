use super::check;
use crate::data::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Per-object sums of dissimilarities to each cluster: `sums[i * k + c]`.
fn cluster_sums(d: &DissimilarityMatrix, part: &Partition) -> Vec<f64> {
    let k = part.k();
    let labels = part.labels();
    let mut sums = vec![0.0; d.len() * k];
    for i in 0..d.len() {
        let out = &mut sums[i * k..(i + 1) * k];
        for (&v, &l) in d.row(i).iter().zip(labels) {
            out[l] += v;
        }
    }
    sums
}

/// Average silhouette width. Objects in singleton clusters, and objects with
/// `a = b = 0`, get silhouette 0.
pub fn asw(d: &DissimilarityMatrix, part: &Partition) -> Result<f64> {
    check(d, part)?;
    let k = part.k();
    let sizes = part.sizes();
    let sums = cluster_sums(d, part);
    let total: f64 = (0..d.len())
        .map(|i| {
            let own = part.label(i);
            if sizes[own] == 1 {
                return 0.0;
            }
            let row = &sums[i * k..(i + 1) * k];
            let a = row[own] / (sizes[own] - 1) as f64;
            let b = (0..k)
                .filter(|&h| h != own)
                .map(|h| row[h] / sizes[h] as f64)
                .fold(f64::INFINITY, f64::min);
            let m = a.max(b);
            if m == 0.0 {
                0.0
            } else {
                (b - a) / m
            }
        })
        .sum();
    Ok(total / d.len() as f64)
}

/// Calinski–Harabasz in dissimilarity form, with ordered-pair sums.
///
/// `W = 0` yields `+inf` (or `NaN` when `B = 0` as well).
pub fn calinski_harabasz(d: &DissimilarityMatrix, part: &Partition) -> Result<f64> {
    check(d, part)?;
    let (n, k) = (d.len(), part.k());
    if n <= k {
        return Err(Error::Contract(format!("CH needs n > K, got n = {n}, K = {k}")));
    }
    let mut within = vec![0.0; k];
    let mut all = 0.0;
    for (i, j, v) in d.pairs() {
        let sq = v * v;
        all += 2.0 * sq;
        if part.label(i) == part.label(j) {
            within[part.label(i)] += 2.0 * sq;
        }
    }
    let w: f64 = within
        .iter()
        .zip(part.sizes())
        .map(|(s, &nk)| s / nk as f64)
        .sum();
    let b = all / n as f64 - w;
    let b = if b < 0.0 && b > -1e-12 * all { 0.0 } else { b };
    Ok(b * (n - k) as f64 / (w * (k - 1) as f64))
}

/// Minimum between-cluster over maximum within-cluster dissimilarity. `+inf`
/// when every cluster is a singleton (or all within distances are zero while
/// clusters are apart); `NaN` when both are zero.
pub fn dunn(d: &DissimilarityMatrix, part: &Partition) -> Result<f64> {
    check(d, part)?;
    let mut min_between = f64::INFINITY;
    let mut max_within = 0.0_f64;
    let mut any_within = false;
    for (i, j, v) in d.pairs() {
        if part.label(i) == part.label(j) {
            any_within = true;
            max_within = max_within.max(v);
        } else {
            min_between = min_between.min(v);
        }
    }
    if !any_within {
        return Ok(f64::INFINITY);
    }
    Ok(min_between / max_within)
}

/// Pearson correlation between pair dissimilarities and the between-cluster
/// indicator. `NaN` when either vector is constant.
pub fn pearson_gamma(d: &DissimilarityMatrix, part: &Partition) -> Result<f64> {
    check(d, part)?;
    let n = d.len();
    let m = (n * (n - 1) / 2) as f64;
    let mut sum_d = 0.0;
    let mut between = 0usize;
    for (i, j, v) in d.pairs() {
        sum_d += v;
        if part.label(i) != part.label(j) {
            between += 1;
        }
    }
    let mean_d = sum_d / m;
    let mean_c = between as f64 / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, j, v) in d.pairs() {
        let dx = v - mean_d;
        let c = if part.label(i) != part.label(j) { 1.0 } else { 0.0 };
        sxy += dx * (c - mean_c);
        sxx += dx * dx;
    }
    let syy = between as f64 * (1.0 - mean_c) * (1.0 - mean_c)
        + (m - between as f64) * mean_c * mean_c;
    if sxx == 0.0 || syy == 0.0 {
        return Ok(f64::NAN);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{euclidean_dissimilarity, DataMatrix};

    fn line(xs: &[f64]) -> DissimilarityMatrix {
        euclidean_dissimilarity(&DataMatrix::new(xs.len(), 1, xs.to_vec()).unwrap())
    }

    fn pairs2() -> (DissimilarityMatrix, Partition) {
        (
            line(&[0.0, 1.0, 10.0, 11.0]),
            Partition::new(vec![0, 0, 1, 1], 2).unwrap(),
        )
    }

    #[test]
    fn asw_examples() {
        let p = Partition::new(vec![0, 0, 1, 1], 2).unwrap();
        assert_eq!(asw(&line(&[0.0, 0.0, 10.0, 10.0]), &p).unwrap(), 1.0);

        let (d, p) = pairs2();
        // s = (10.5-1)/10.5 for the outer points, (9.5-1)/9.5 for the inner ones
        let want = (2.0 * (9.5 / 10.5) + 2.0 * (8.5 / 9.5)) / 4.0;
        assert!((asw(&d, &p).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.89975).abs() < 1e-5);

        assert_eq!(asw(&line(&[3.0; 4]), &p).unwrap(), 0.0);
    }

    #[test]
    fn asw_rejects_single_cluster() {
        let d = line(&[0.0, 1.0]);
        let p = Partition::new(vec![0, 0], 1).unwrap();
        assert!(matches!(asw(&d, &p), Err(Error::Contract(_))));
    }

    #[test]
    fn ch_examples() {
        let (d, p) = pairs2();
        assert!((calinski_harabasz(&d, &p).unwrap() - 200.0).abs() < 1e-10);

        let flat = line(&[2.0; 5]);
        let q = Partition::new(vec![0, 1, 0, 1, 1], 2).unwrap();
        assert!(calinski_harabasz(&flat, &q).unwrap().is_nan());

        let scaled = d.scaled(3.5).unwrap();
        let a = calinski_harabasz(&d, &p).unwrap();
        let b = calinski_harabasz(&scaled, &p).unwrap();
        assert!((a - b).abs() < 1e-9 * a);
    }

    #[test]
    fn ch_zero_within_is_infinite() {
        let d = line(&[0.0, 0.0, 5.0]);
        let p = Partition::new(vec![0, 0, 1], 2).unwrap();
        assert_eq!(calinski_harabasz(&d, &p).unwrap(), f64::INFINITY);
    }

    #[test]
    fn dunn_examples() {
        let (d, p) = pairs2();
        assert_eq!(dunn(&d, &p).unwrap(), 9.0);

        let touching = line(&[0.0, 1.0, 1.0, 2.0]);
        assert_eq!(dunn(&touching, &p).unwrap(), 0.0);

        let singletons = Partition::new(vec![0, 1, 2, 3], 4).unwrap();
        assert_eq!(dunn(&d, &singletons).unwrap(), f64::INFINITY);
    }

    #[test]
    fn pearson_gamma_examples() {
        let groups = [0, 0, 1, 1, 1];
        let d = DissimilarityMatrix::from_fn(5, |i, j| if groups[i] == groups[j] { 2.0 } else { 7.0 })
            .unwrap();
        let p = Partition::from_arbitrary_labels(&groups);
        assert!((pearson_gamma(&d, &p).unwrap() - 1.0).abs() < 1e-15);

        let (d, p) = pairs2();
        let v = pearson_gamma(&d, &p).unwrap();
        assert!((v - 0.9909).abs() < 5e-5, "{v}");
        let swapped = p.relabel(&[1, 0]).unwrap();
        assert_eq!(pearson_gamma(&d, &swapped).unwrap(), v);

        let flat = line(&[1.0; 4]);
        assert!(pearson_gamma(&flat, &p).unwrap().is_nan());
    }
}
