use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ClusteringCollection;
use crate::error::{Error, Result};

/// Which clusterings share a standardisation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CalibrationRegime {
    /// One group per K.
    PerK,
    /// One group over all K.
    #[default]
    #[serde(rename = "pooled")]
    PooledAllK,
}

impl fmt::Display for CalibrationRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CalibrationRegime::PerK => "perk",
            CalibrationRegime::PooledAllK => "pooled",
        })
    }
}

impl FromStr for CalibrationRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "perk" => Ok(CalibrationRegime::PerK),
            "pooled" | "pooledallk" => Ok(CalibrationRegime::PooledAllK),
            _ => Err(Error::Contract(format!("unknown calibration regime {s:?}"))),
        }
    }
}

/// Standardises `values` with the sample mean and standard deviation.
/// Returns `None` when fewer than two values are given or the deviation is 0.
pub fn zscore(values: &[f64]) -> Option<Vec<f64>> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sd = var.sqrt();
    if !(sd > 0.0) || !sd.is_finite() {
        return None;
    }
    Some(values.iter().map(|v| (v - mean) / sd).collect())
}

/// Calibrated values aligned with a collection's entries and components.
#[derive(Debug, Clone)]
pub struct Calibrated {
    regime: CalibrationRegime,
    ncomp: usize,
    values: Vec<Option<f64>>,
    diagnostics: Vec<String>,
}

impl Calibrated {
    pub fn regime(&self) -> CalibrationRegime {
        self.regime
    }

    /// Calibrated value of component position `c` for entry `e`; `None` when the
    /// raw value is missing or degenerate.
    pub fn value(&self, e: usize, c: usize) -> Option<f64> {
        self.values[e * self.ncomp + c]
    }

    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }
}

/// Z-score calibration of every component within the groups given by
/// `regime`. Degenerate and missing raw values are left out of the group and
/// stay uncalibrated. A group without spread maps to 0 and is reported.
pub fn zscore_calibrate(coll: &ClusteringCollection, regime: CalibrationRegime) -> Calibrated {
    let entries = coll.entries();
    let ncomp = coll.components().len();
    let mut values = vec![None; entries.len() * ncomp];
    let mut diagnostics = Vec::new();

    let groups: Vec<(Option<usize>, Vec<usize>)> = match regime {
        CalibrationRegime::PooledAllK => vec![(None, (0..entries.len()).collect())],
        CalibrationRegime::PerK => coll
            .ks()
            .into_iter()
            .map(|k| (Some(k), (0..entries.len()).filter(|&e| entries[e].k == k).collect()))
            .collect(),
    };

    for (c, id) in coll.components().iter().enumerate() {
        for (k, members) in &groups {
            let (idx, raw): (Vec<usize>, Vec<f64>) = members
                .iter()
                .filter_map(|&e| entries[e].raw[c].filter(|v| v.is_finite()).map(|v| (e, v)))
                .unzip();
            if idx.is_empty() {
                continue;
            }
            let z = zscore(&raw).unwrap_or_else(|| {
                let scope = k.map_or("all K".to_string(), |k| format!("K = {k}"));
                diagnostics.push(format!(
                    "{id} at {scope}: {} usable value(s) without spread, calibrated to 0",
                    raw.len()
                ));
                vec![0.0; raw.len()]
            });
            for (e, v) in idx.into_iter().zip(z) {
                values[e * ncomp + c] = Some(v);
            }
        }
    }

    Calibrated {
        regime,
        ncomp,
        values,
        diagnostics,
    }
}
