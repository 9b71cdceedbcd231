//! Adjusted Rand Index (Hubert and Arabie) from the contingency table.

use crate::error::Result;
use crate::partition::Partition;

fn choose2(x: u64) -> u128 {
    let x = u128::from(x);
    x * x.saturating_sub(1) / 2
}

/// Chance-corrected pair agreement between two partitions of the same objects.
///
/// Pair counts are accumulated exactly in 128-bit integers; only the final
/// ratio is formed in floating point. When both partitions put every pair in
/// the same relation (e.g. both are one block) the index is defined as 1.
pub fn adjusted_rand_index(p1: &Partition, p2: &Partition) -> Result<f64> {
    p2.require_len(p1.len())?;
    let n = p1.len() as u64;
    let (k1, k2) = (p1.k(), p2.k());
    let mut table = vec![0u64; k1 * k2];
    for (&a, &b) in p1.labels().iter().zip(p2.labels()) {
        table[a * k2 + b] += 1;
    }
    let index: u128 = table.iter().map(|&c| choose2(c)).sum();
    let rows: u128 = p1.sizes().iter().map(|&s| choose2(s as u64)).sum();
    let cols: u128 = p2.sizes().iter().map(|&s| choose2(s as u64)).sum();
    let total = choose2(n);
    if total == 0 {
        return Ok(1.0);
    }
    // (index - rows*cols/total) / (max - rows*cols/total), scaled by total
    // so that numerator and denominator stay integral.
    let prod = rows * cols;
    let num = (index * total) as f64 - prod as f64;
    let den = ((rows + cols) * total) as f64 / 2.0 - prod as f64;
    if den == 0.0 {
        return Ok(1.0);
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: &[usize]) -> Partition {
        Partition::from_arbitrary_labels(l)
    }

    #[test]
    fn identical_is_one() {
        let a = p(&[1, 1, 2, 2]);
        assert_eq!(adjusted_rand_index(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn crossing_example() {
        let v = adjusted_rand_index(&p(&[1, 1, 2, 2]), &p(&[1, 2, 1, 2])).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
    }

    #[test]
    fn permuted_labels_same_value() {
        let a = p(&[0, 0, 1, 1, 2, 2, 2]);
        let b = p(&[0, 1, 1, 1, 2, 0, 2]);
        let b_perm = b.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(
            adjusted_rand_index(&a, &b).unwrap(),
            adjusted_rand_index(&a, &b_perm).unwrap()
        );
    }

    #[test]
    fn mismatched_lengths() {
        assert!(adjusted_rand_index(&p(&[0, 1]), &p(&[0, 1, 1])).is_err());
    }

    #[test]
    fn large_one_block_vs_singletons() {
        let n = 10_000;
        let one = Partition::new(vec![0; n], 1).unwrap();
        let all = Partition::new((0..n).collect(), n).unwrap();
        let v = adjusted_rand_index(&one, &all).unwrap();
        assert!(v.is_finite());
        assert!(v.abs() < 1e-12);
    }
}
