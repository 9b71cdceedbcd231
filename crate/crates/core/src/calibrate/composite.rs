use serde::{Deserialize, Serialize};

use super::{zscore_calibrate, Calibrated, CalibrationRegime, ClusteringCollection, ComponentId, Source};
use crate::error::{Error, Result};
use crate::indexes::IndexId;
use crate::stability::StabilityId;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub id: ComponentId,
    pub weight: f64,
    pub sign: f64,
}

/// A signed, weighted mean of calibrated components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub name: String,
    components: Vec<Component>,
}

impl CompositeSpec {
    /// Validates that weights are positive and finite and that each sign
    /// matches its component's direction.
    pub fn new(name: impl Into<String>, components: Vec<Component>) -> Result<Self> {
        let name = name.into();
        if components.is_empty() {
            return Err(Error::Contract(format!("composite {name:?} has no components")));
        }
        for c in &components {
            if !(c.weight > 0.0 && c.weight.is_finite()) {
                return Err(Error::Contract(format!("weight of {} must be positive, got {}", c.id, c.weight)));
            }
            if c.sign != c.id.direction().sign() {
                return Err(Error::Contract(format!("sign of {} must be {}", c.id, c.id.direction().sign())));
            }
        }
        for (i, c) in components.iter().enumerate() {
            if components[..i].iter().any(|d| d.id == c.id) {
                return Err(Error::Contract(format!("{} listed twice in {name:?}", c.id)));
            }
        }
        Ok(Self { name, components })
    }

    /// Builds a spec from weights alone, taking each sign from the direction.
    pub fn from_weights(name: impl Into<String>, weights: &[(ComponentId, f64)]) -> Result<Self> {
        Self::new(
            name,
            weights
                .iter()
                .map(|&(id, weight)| Component {
                    id,
                    weight,
                    sign: id.direction().sign(),
                })
                .collect(),
        )
    }

    pub fn a1() -> Self {
        Self::from_weights(
            "a1",
            &[
                (IndexId::AveWithin.into(), 1.0),
                (IndexId::PearsonGamma.into(), 1.0),
                (StabilityId::Bootstab.into(), 1.0),
            ],
        )
        .expect("valid")
    }

    pub fn a2() -> Self {
        Self::from_weights(
            "a2",
            &[
                (IndexId::SepIndex.into(), 1.0),
                (IndexId::WidestGap.into(), 1.0),
                (StabilityId::Bootstab.into(), 1.0),
            ],
        )
        .expect("valid")
    }

    /// `a1`, `a2`, or a custom spec such as `ave_within:2,pearson_gamma:1`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a1" => return Ok(Self::a1()),
            "a2" => return Ok(Self::a2()),
            _ => {}
        }
        let weights = s
            .split(',')
            .map(|part| {
                let (id, w) = part.split_once(':').unwrap_or((part, "1"));
                let w: f64 = w
                    .trim()
                    .parse()
                    .map_err(|_| Error::Contract(format!("bad weight in {part:?}")))?;
                Ok((id.trim().parse::<ComponentId>()?, w))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_weights(s.trim(), &weights)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.name.clone(),
            self.components
                .iter()
                .map(|x| Component {
                    weight: x.weight * c,
                    ..*x
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct Aggregates {
    /// One value per collection entry; `None` when a component is missing.
    pub values: Vec<Option<f64>>,
    pub diagnostics: Vec<String>,
}

/// Computes `Σ w·sign·z / Σ w` for every entry of the collection.
pub fn aggregate(coll: &ClusteringCollection, calibrated: &Calibrated, spec: &CompositeSpec) -> Result<Aggregates> {
    let positions = spec
        .components()
        .iter()
        .map(|c| {
            coll.component_position(c.id)
                .ok_or_else(|| Error::Contract(format!("{} required by {} is not in the collection", c.id, spec.name)))
        })
        .collect::<Result<Vec<_>>>()?;
    let wsum: f64 = spec.components().iter().map(|c| c.weight).sum();
    let mut diagnostics = Vec::new();
    let values = coll
        .entries()
        .iter()
        .enumerate()
        .map(|(e, entry)| {
            let mut acc = 0.0;
            for (c, &pos) in spec.components().iter().zip(&positions) {
                match calibrated.value(e, pos) {
                    Some(z) => acc += c.weight * c.sign * z,
                    None => {
                        if entry.source.is_proper() {
                            diagnostics.push(format!(
                                "{} skipped for {} at K = {}: no calibrated {}",
                                spec.name, entry.source, entry.k, c.id
                            ));
                        }
                        return None;
                    }
                }
            }
            Some(acc / wsum)
        })
        .collect();
    Ok(Aggregates { values, diagnostics })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ranked {
    pub entry: usize,
    pub source: Source,
    pub k: usize,
    pub value: f64,
}

/// Calibrates, aggregates and orders the proper clusterings by composite
/// value, best first. Ties go to smaller K, then method order.
pub fn rank_clusterings(
    coll: &ClusteringCollection,
    spec: &CompositeSpec,
    regime: CalibrationRegime,
) -> Result<(Vec<Ranked>, Vec<String>)> {
    let calibrated = zscore_calibrate(coll, regime);
    let agg = aggregate(coll, &calibrated, spec)?;
    let mut ranked: Vec<Ranked> = coll
        .entries()
        .iter()
        .zip(&agg.values)
        .enumerate()
        .filter_map(|(e, (entry, v))| {
            let value = (*v)?;
            entry.source.is_proper().then_some(Ranked {
                entry: e,
                source: entry.source,
                k: entry.k,
                value,
            })
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.value
            .total_cmp(&a.value)
            .then(a.k.cmp(&b.k))
            .then(a.source.cmp(&b.source))
    });
    let mut diagnostics = calibrated.diagnostics().to_vec();
    diagnostics.extend(agg.diagnostics);
    Ok((ranked, diagnostics))
}
