//! Repeated runs on freshly generated scenario data, summarised as the number
//! of times each criterion picks each K plus the mean ARI of its picks.

use std::fmt::Write as _;

use anyhow::Result;
use rayon::prelude::*;

use clustval::{Dataset, RngSeed, Scenario};

use crate::config::Settings;
use crate::pipeline::{run_validation, ValidationResult};

#[derive(Debug, Clone, PartialEq)]
pub struct SimRow {
    pub criterion: String,
    /// Picks per K, aligned with [`SimulationSummary::ks`].
    pub counts: Vec<usize>,
    /// Replicates where the criterion had nothing to pick.
    pub missing: usize,
    pub mean_ari: Option<f64>,
}

impl SimRow {
    pub fn count_at(&self, ks: &[usize], k: usize) -> usize {
        ks.iter().position(|&x| x == k).map_or(0, |i| self.counts[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSummary {
    pub scenario: Scenario,
    pub replicates: usize,
    pub ks: Vec<usize>,
    pub rows: Vec<SimRow>,
}

impl SimulationSummary {
    pub fn row(&self, criterion: &str) -> Option<&SimRow> {
        self.rows.iter().find(|r| r.criterion == criterion)
    }

    pub fn count(&self, criterion: &str, k: usize) -> usize {
        self.row(criterion).map_or(0, |r| r.count_at(&self.ks, k))
    }

    /// Counts per K with the true K marked `*`, followed by mean ARI.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} ({}), {} replicates",
            self.scenario.name(),
            self.scenario.description(),
            self.replicates
        );
        let _ = write!(s, "{:<16}", "criterion");
        for k in &self.ks {
            let _ = write!(s, "{:>6}", format!("K={k}"));
        }
        let _ = writeln!(s, "{:>10}", "mean ARI");
        for row in &self.rows {
            let _ = write!(s, "{:<16}", row.criterion);
            for (k, c) in self.ks.iter().zip(&row.counts) {
                let mark = if self.scenario.true_ks().contains(k) { "*" } else { " " };
                let _ = write!(s, "{:>5}{mark}", c);
            }
            match row.mean_ari {
                Some(a) => {
                    let _ = writeln!(s, "{a:>10.3}");
                }
                None => {
                    let _ = writeln!(s, "{:>10}", "-");
                }
            }
        }
        s
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["scenario", "criterion", "K", "count", "true_k", "mean_ari"])?;
        for row in &self.rows {
            for (k, c) in self.ks.iter().zip(&row.counts) {
                w.write_record([
                    self.scenario.name(),
                    row.criterion.clone(),
                    k.to_string(),
                    c.to_string(),
                    u8::from(self.scenario.true_ks().contains(k)).to_string(),
                    row.mean_ari.map(|a| a.to_string()).unwrap_or_default(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Selected K and its ARI.
type PickSummary = (usize, Option<f64>);

/// Data and pipeline seeds for replicate `r`.
pub fn replicate_seeds(master: &RngSeed, r: usize) -> (RngSeed, RngSeed) {
    (master.named("data").child(r as u64), master.named("run").child(r as u64))
}

/// Runs `replicates` validations on independent draws of `scenario`.
///
/// Replicates are computed in parallel batches; `sink` sees every result in
/// replicate order, so anything it writes is independent of scheduling.
pub fn run_simulation_study(
    scenario: Scenario,
    replicates: usize,
    s: &Settings,
    mut sink: impl FnMut(usize, &ValidationResult) -> Result<()>,
) -> Result<SimulationSummary> {
    let ks: Vec<usize> = s.ks().collect();
    let mut picks: Vec<Vec<(String, Option<PickSummary>)>> = Vec::with_capacity(replicates);
    let batch = rayon::current_num_threads().max(1);
    for start in (0..replicates).step_by(batch) {
        let end = (start + batch).min(replicates);
        let results = (start..end)
            .into_par_iter()
            .map(|r| {
                let (data_seed, run_seed) = replicate_seeds(&s.seed, r);
                let (data, truth) = scenario.generate(&data_seed)?;
                run_validation(&Dataset::from_data(data), Some(&truth), s, &run_seed)
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, res) in results.iter().enumerate() {
            sink(start + i, res)?;
            picks.push(
                res.selections
                    .iter()
                    .map(|sel| (sel.criterion.clone(), sel.pick.as_ref().map(|p| (p.k, p.ari))))
                    .collect(),
            );
        }
    }

    let criteria: Vec<String> = picks
        .first()
        .map(|p| p.iter().map(|(c, _)| c.clone()).collect())
        .unwrap_or_default();
    let rows = criteria
        .iter()
        .enumerate()
        .map(|(ci, name)| {
            let mut counts = vec![0; ks.len()];
            let mut missing = 0;
            let mut aris = Vec::new();
            for rep in &picks {
                match rep[ci].1 {
                    Some((k, ari)) => {
                        if let Some(i) = ks.iter().position(|&x| x == k) {
                            counts[i] += 1;
                        }
                        aris.extend(ari);
                    }
                    None => missing += 1,
                }
            }
            SimRow {
                criterion: name.clone(),
                counts,
                missing,
                mean_ari: (!aris.is_empty()).then(|| aris.iter().sum::<f64>() / aris.len() as f64),
            }
        })
        .collect();

    Ok(SimulationSummary {
        scenario,
        replicates,
        ks,
        rows,
    })
}
