//! Calibration of raw index values against random clusterings, and their
//! aggregation into composite indexes.

mod collection;
mod composite;
mod zscore;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use collection::{build_collection, ClusteringCollection, Entry, ProperClustering};
pub use composite::{aggregate, rank_clusterings, Aggregates, Component, CompositeSpec, Ranked};
pub use zscore::{zscore, zscore_calibrate, Calibrated, CalibrationRegime};

use crate::algos::MethodId;
use crate::error::{Error, Result};
use crate::indexes::{Direction, IndexId};
use crate::randclust::RandomMethodId;
use crate::stability::StabilityId;

pub const DEFAULT_B: usize = 100;

/// Anything that can enter a composite: an index or a stability statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentId {
    Index(IndexId),
    Stability(StabilityId),
}

impl ComponentId {
    pub fn direction(self) -> Direction {
        match self {
            ComponentId::Index(i) => i.direction(),
            ComponentId::Stability(s) => s.direction(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ComponentId::Index(i) => i.name(),
            ComponentId::Stability(s) => s.name(),
        }
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComponentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<StabilityId>()
            .map(ComponentId::Stability)
            .or_else(|_| s.parse::<IndexId>().map(ComponentId::Index))
            .map_err(|_| Error::Contract(format!("unknown index or stability statistic {s:?}")))
    }
}

impl From<IndexId> for ComponentId {
    fn from(i: IndexId) -> Self {
        ComponentId::Index(i)
    }
}

impl From<StabilityId> for ComponentId {
    fn from(s: StabilityId) -> Self {
        ComponentId::Stability(s)
    }
}

/// Where a clustering in the collection came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Proper(MethodId),
    Random(RandomMethodId),
}

impl Source {
    pub fn is_proper(self) -> bool {
        matches!(self, Source::Proper(_))
    }

    pub fn kind(self) -> &'static str {
        match self {
            Source::Proper(_) => "proper",
            Source::Random(_) => "random",
        }
    }

    pub fn method_name(self) -> &'static str {
        match self {
            Source::Proper(m) => m.name(),
            Source::Random(r) => r.name(),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.method_name())
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::data::{DataMatrix, Dataset};
    use crate::indexes::IndexParams;
    use crate::partition::Partition;
    use crate::rng::RngSeed;

    fn part(k: usize) -> Partition {
        Partition::new((0..6).map(|i| i % k).collect(), k).unwrap()
    }

    fn entry(source: Source, k: usize, raw: Vec<Option<f64>>) -> Entry {
        Entry {
            source,
            k,
            draw: 0,
            partition: part(k),
            raw,
        }
    }

    fn rnd(k: usize, v: f64) -> Entry {
        entry(Source::Random(RandomMethodId::RKCentroid), k, vec![Some(v)])
    }

    fn drift() -> ClusteringCollection {
        let mut es = Vec::new();
        for (k, shift) in [(2, 0.0), (3, 10.0)] {
            for v in [1.0, 2.0, 3.0] {
                es.push(rnd(k, v + shift));
            }
        }
        ClusteringCollection::from_entries(vec![IndexId::Asw.into()], es, 3).unwrap()
    }

    #[test]
    fn per_k_removes_drift_pooled_keeps_it() {
        let c = drift();
        let per = zscore_calibrate(&c, CalibrationRegime::PerK);
        let got: Vec<f64> = (0..6).map(|e| per.value(e, 0).unwrap()).collect();
        for (a, b) in got.iter().zip([-1.0, 0.0, 1.0, -1.0, 0.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let pooled = zscore_calibrate(&c, CalibrationRegime::PooledAllK);
        let lo: f64 = (0..3).map(|e| pooled.value(e, 0).unwrap()).sum::<f64>() / 3.0;
        let hi: f64 = (3..6).map(|e| pooled.value(e, 0).unwrap()).sum::<f64>() / 3.0;
        assert!(lo < -0.8 && hi > 0.8);
        assert!((lo + hi).abs() < 1e-12);
    }

    #[test]
    fn constant_group_maps_to_zero_with_diagnostic() {
        let es = (0..4).map(|_| rnd(2, 5.0)).collect();
        let c = ClusteringCollection::from_entries(vec![IndexId::Asw.into()], es, 4).unwrap();
        let cal = zscore_calibrate(&c, CalibrationRegime::PooledAllK);
        assert!((0..4).all(|e| cal.value(e, 0) == Some(0.0)));
        assert_eq!(cal.diagnostics().len(), 1);
    }

    #[test]
    fn degenerate_values_are_excluded() {
        let mut es: Vec<Entry> = [1.0, 2.0, 3.0].iter().map(|&v| rnd(2, v)).collect();
        es.push(rnd(2, f64::INFINITY));
        es.push(rnd(2, f64::NAN));
        let c = ClusteringCollection::from_entries(vec![IndexId::Ch.into()], es, 5).unwrap();
        let cal = zscore_calibrate(&c, CalibrationRegime::PerK);
        assert_eq!(cal.value(0, 0), Some(-1.0));
        assert_eq!(cal.value(3, 0), None);
        assert_eq!(cal.value(4, 0), None);
    }

    #[test]
    fn stability_groups_hold_proper_entries_only() {
        let comps = vec![IndexId::Asw.into(), StabilityId::Bootstab.into()];
        let mut es = vec![
            entry(Source::Random(RandomMethodId::RKSingle), 2, vec![Some(0.1), None]),
            entry(Source::Random(RandomMethodId::RKSingle), 2, vec![Some(0.2), None]),
        ];
        es.push(entry(Source::Proper(MethodId::Pam), 2, vec![Some(0.5), Some(0.1)]));
        es.push(entry(Source::Proper(MethodId::Ward), 2, vec![Some(0.7), Some(0.3)]));
        let c = ClusteringCollection::from_entries(comps, es, 2).unwrap();
        let cal = zscore_calibrate(&c, CalibrationRegime::PooledAllK);
        assert_eq!(cal.value(0, 1), None);
        let z = std::f64::consts::FRAC_1_SQRT_2;
        assert!((cal.value(2, 1).unwrap() + z).abs() < 1e-12);
        assert!((cal.value(3, 1).unwrap() - z).abs() < 1e-12);
    }

    #[test]
    fn a1_a2_definitions() {
        let a1 = CompositeSpec::a1();
        assert_eq!(a1.components().len(), 3);
        assert!(a1.components().iter().all(|c| c.weight == 1.0));
        let signs: Vec<(ComponentId, f64)> = a1.components().iter().map(|c| (c.id, c.sign)).collect();
        assert_eq!(
            signs,
            vec![
                (IndexId::AveWithin.into(), -1.0),
                (IndexId::PearsonGamma.into(), 1.0),
                (StabilityId::Bootstab.into(), -1.0)
            ]
        );
        let a2 = CompositeSpec::a2();
        let ids: Vec<ComponentId> = a2.components().iter().map(|c| c.id).collect();
        assert_eq!(
            ids,
            vec![IndexId::SepIndex.into(), IndexId::WidestGap.into(), StabilityId::Bootstab.into()]
        );
        assert_eq!(a2.components()[1].sign, -1.0);
        assert!(!ids.contains(&IndexId::AveWithin.into()));
    }

    #[test]
    fn spec_validation() {
        let bad_sign = Component {
            id: IndexId::Asw.into(),
            weight: 1.0,
            sign: -1.0,
        };
        assert!(CompositeSpec::new("x", vec![bad_sign]).is_err());
        assert!(CompositeSpec::from_weights("x", &[(IndexId::Asw.into(), 0.0)]).is_err());
        assert!(CompositeSpec::from_weights("x", &[]).is_err());
        assert!(CompositeSpec::from_weights("x", &[(IndexId::Asw.into(), 1.0), (IndexId::Asw.into(), 2.0)]).is_err());
        let custom = CompositeSpec::parse("ave_within:2, ps").unwrap();
        assert_eq!(custom.components()[0].weight, 2.0);
        assert_eq!(custom.components()[1].id, StabilityId::PredictionStrength.into());
        assert_eq!(CompositeSpec::parse("A1").unwrap(), CompositeSpec::a1());
    }

    fn two_index(values: &[(Source, usize, f64, f64)]) -> ClusteringCollection {
        let es = values
            .iter()
            .map(|&(s, k, a, b)| entry(s, k, vec![Some(a), Some(b)]))
            .collect();
        ClusteringCollection::from_entries(vec![IndexId::Asw.into(), IndexId::AveWithin.into()], es, 1).unwrap()
    }

    #[test]
    fn opposite_components_cancel() {
        let r = Source::Random(RandomMethodId::RKAverage);
        // asw z = (-1, 0, 1); ave_within z = (1, 0, -1) so its signed value equals asw's
        let c = two_index(&[(r, 2, 1.0, 3.0), (r, 2, 2.0, 2.0), (r, 2, 3.0, 1.0)]);
        let cal = zscore_calibrate(&c, CalibrationRegime::PooledAllK);
        let spec = CompositeSpec::from_weights("x", &[(IndexId::Asw.into(), 1.0), (IndexId::AveWithin.into(), 1.0)]).unwrap();
        let agg = aggregate(&c, &cal, &spec).unwrap();
        assert_eq!(agg.values, vec![Some(-1.0), Some(0.0), Some(1.0)]);

        let c = two_index(&[(r, 2, 1.0, 1.0), (r, 2, 2.0, 2.0), (r, 2, 3.0, 3.0)]);
        let cal = zscore_calibrate(&c, CalibrationRegime::PooledAllK);
        let agg = aggregate(&c, &cal, &spec).unwrap();
        assert!(agg.values.iter().all(|v| v.unwrap().abs() < 1e-15));
    }

    #[test]
    fn missing_component_is_an_error() {
        let c = drift();
        let cal = zscore_calibrate(&c, CalibrationRegime::PooledAllK);
        assert!(aggregate(&c, &cal, &CompositeSpec::a1()).is_err());
    }

    #[test]
    fn ranking_keeps_proper_entries_and_breaks_ties() {
        let r = Source::Random(RandomMethodId::RKCentroid);
        let pam = Source::Proper(MethodId::Pam);
        let km = Source::Proper(MethodId::KMeans);
        let c = two_index(&[
            (r, 2, 9.0, 0.0),
            (r, 3, 0.0, 9.0),
            (pam, 3, 5.0, 5.0),
            (km, 3, 5.0, 5.0),
            (pam, 2, 5.0, 5.0),
        ]);
        let spec = CompositeSpec::from_weights("x", &[(IndexId::Asw.into(), 1.0), (IndexId::AveWithin.into(), 1.0)]).unwrap();
        let (ranked, _) = rank_clusterings(&c, &spec, CalibrationRegime::PooledAllK).unwrap();
        let order: Vec<(Source, usize)> = ranked.iter().map(|r| (r.source, r.k)).collect();
        assert_eq!(order, vec![(pam, 2), (km, 3), (pam, 3)]);

        let single = two_index(&[(r, 2, 1.0, 1.0), (r, 2, 2.0, 3.0), (pam, 2, 0.0, 7.0)]);
        let (ranked, _) = rank_clusterings(&single, &spec, CalibrationRegime::PerK).unwrap();
        assert_eq!(ranked.len(), 1);
        assert_eq!(ranked[0].source, pam);
    }

    #[test]
    fn dominating_entry_wins_a1() {
        let comps = vec![IndexId::AveWithin.into(), IndexId::PearsonGamma.into(), StabilityId::Bootstab.into()];
        let es = vec![
            entry(Source::Proper(MethodId::Pam), 2, vec![Some(3.0), Some(0.2), Some(0.3)]),
            entry(Source::Proper(MethodId::Pam), 3, vec![Some(1.0), Some(0.9), Some(0.05)]),
            entry(Source::Proper(MethodId::Pam), 4, vec![Some(2.0), Some(0.5), Some(0.2)]),
        ];
        let c = ClusteringCollection::from_entries(comps, es, 1).unwrap();
        let (ranked, _) = rank_clusterings(&c, &CompositeSpec::a1(), CalibrationRegime::PooledAllK).unwrap();
        assert_eq!(ranked[0].k, 3);
    }

    fn small_dataset() -> Dataset {
        let rows: Vec<Vec<f64>> = (0..24)
            .map(|i| vec![(i % 3) as f64 * 5.0 + (i as f64 * 0.37).sin(), (i as f64 * 0.73).cos()])
            .collect();
        Dataset::from_data(DataMatrix::from_rows(&rows).unwrap())
    }

    fn proper_for(ds: &Dataset, ks: &[usize]) -> BTreeMap<usize, Vec<ProperClustering>> {
        ks.iter()
            .map(|&k| {
                let list = [MethodId::Pam, MethodId::Average]
                    .iter()
                    .map(|&m| ProperClustering {
                        method: m,
                        partition: m.cluster(ds, k, &RngSeed::new(1)).unwrap(),
                        stability: BTreeMap::from([(StabilityId::Bootstab, 0.1 * k as f64)]),
                    })
                    .collect();
                (k, list)
            })
            .collect()
    }

    #[test]
    fn collection_sizes_and_order() {
        let ds = small_dataset();
        let proper = proper_for(&ds, &[2, 3, 4]);
        let b = 5;
        let c = build_collection(
            &ds,
            &proper,
            &IndexId::ALL,
            &[StabilityId::Bootstab],
            IndexParams::default(),
            b,
            &RngSeed::new(9),
        )
        .unwrap();
        assert_eq!(c.ks(), vec![2, 3, 4]);
        for k in 2..=4 {
            let at_k: Vec<&Entry> = c.entries().iter().filter(|e| e.k == k).collect();
            assert_eq!(at_k.len(), 4 * b + 2);
            assert!(at_k[..4 * b].iter().all(|e| !e.source.is_proper()));
            assert_eq!(at_k[0].source, Source::Random(RandomMethodId::RKCentroid));
            assert_eq!(at_k[4 * b - 1].source, Source::Random(RandomMethodId::RKAverage));
            assert!(at_k.iter().all(|e| e.partition.k() == k));
        }
        let boot = c.component_position(StabilityId::Bootstab.into()).unwrap();
        assert!(c.entries().iter().all(|e| e.raw[boot].is_some() == e.source.is_proper()));
        assert!(c.entries().iter().all(|e| e.raw[..boot].iter().all(Option::is_some)));

        let again = build_collection(
            &ds,
            &proper,
            &IndexId::ALL,
            &[StabilityId::Bootstab],
            IndexParams::default(),
            b,
            &RngSeed::new(9),
        )
        .unwrap();
        let cal = zscore_calibrate(&c, CalibrationRegime::PooledAllK);
        let mut x = Vec::new();
        let mut y = Vec::new();
        c.write_long_csv(&mut x, &cal).unwrap();
        again.write_long_csv(&mut y, &zscore_calibrate(&again, CalibrationRegime::PooledAllK)).unwrap();
        assert_eq!(x, y);
        let text = String::from_utf8(x).unwrap();
        assert!(text.starts_with("source,K,index_id,raw_value,calibrated_value,degenerate_flag\n"));
        let rows = text.lines().count() - 1;
        assert_eq!(rows, 3 * (4 * b + 2) * IndexId::ALL.len() + 3 * 2);
    }

    #[test]
    fn build_rejects_bad_input() {
        let ds = small_dataset();
        let proper = proper_for(&ds, &[2]);
        let seed = RngSeed::new(0);
        assert!(build_collection(&ds, &proper, &IndexId::ALL, &[], IndexParams::default(), 0, &seed).is_err());
        let mut bad = BTreeMap::new();
        bad.insert(25, Vec::new());
        assert!(build_collection(&ds, &bad, &IndexId::ALL, &[], IndexParams::default(), 1, &seed).is_err());
    }
}
