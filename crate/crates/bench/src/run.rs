//! Drives a configured run end to end and writes its artifacts.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};

use clustval::data::{read_csv, CsvOptions};
use clustval::{Dataset, Partition};

use crate::config::RunConfig;
use crate::pipeline::{run_validation, ValidationResult};
use crate::plots::emit_plots;
use crate::report::{results_writer, validation_summary, write_results};
use crate::simulate::{replicate_seeds, run_simulation_study, SimulationSummary};

/// Files written by a run.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub results: PathBuf,
    pub summary: PathBuf,
    pub plots: Vec<PathBuf>,
}

fn load(cfg: &RunConfig) -> Result<(Dataset, Option<Partition>, String)> {
    if let Some(path) = &cfg.data {
        let loaded = read_csv(
            path,
            CsvOptions {
                has_header: cfg.has_header,
                class_column: cfg.class_column,
            },
        )
        .with_context(|| format!("loading {}", path.display()))?;
        return Ok((Dataset::from_data(loaded.data), loaded.truth, path.display().to_string()));
    }
    let Some(scenario) = cfg.scenario()? else {
        bail!("no data: give a data file or a scenario")
    };
    let (data_seed, _) = replicate_seeds(&clustval::RngSeed::new(cfg.seed), 0);
    let (data, truth) = scenario.generate(&data_seed)?;
    Ok((Dataset::from_data(data), Some(truth), format!("{} ({})", scenario.name(), scenario.description())))
}

/// Validates one data set: a CSV file or replicate 0 of a scenario.
pub fn validate(cfg: &RunConfig) -> Result<(ValidationResult, Artifacts)> {
    let settings = cfg.settings()?;
    let (ds, truth, title) = load(cfg)?;
    settings.check_size(ds.len())?;
    let run_seed = if cfg.scenario.is_some() {
        replicate_seeds(&settings.seed, 0).1
    } else {
        settings.seed.named("run").child(0)
    };
    let result = run_validation(&ds, truth.as_ref(), &settings, &run_seed)?;

    fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;
    let results = cfg.out.join("results.csv");
    let mut w = results_writer(BufWriter::new(File::create(&results)?))?;
    write_results(&mut w, 0, &result)?;
    w.flush()?;
    let summary = cfg.out.join("summary.txt");
    fs::write(&summary, validation_summary(&title, &result))?;
    fs::write(cfg.out.join("config.json"), serde_json::to_string_pretty(cfg)?)?;
    let plots = if cfg.plots {
        emit_plots(&result, &cfg.out.join("plots"))?
    } else {
        Vec::new()
    };
    Ok((
        result,
        Artifacts {
            results,
            summary,
            plots,
        },
    ))
}

/// Runs the configured number of scenario replicates.
pub fn simulate(cfg: &RunConfig) -> Result<(SimulationSummary, Artifacts)> {
    let settings = cfg.settings()?;
    let Some(scenario) = cfg.scenario()? else {
        bail!("simulation needs a scenario")
    };
    fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;
    let results = cfg.out.join("results.csv");
    let mut w = results_writer(BufWriter::new(File::create(&results)?))?;
    let mut plots = Vec::new();
    let plot_dir = cfg.out.join("plots");
    let summary = run_simulation_study(scenario, cfg.replicates, &settings, |r, res| {
        write_results(&mut w, r, res)?;
        if r == 0 && cfg.plots {
            plots = emit_plots(res, &plot_dir)?;
        }
        Ok(())
    })?;
    w.flush()?;
    let summary_path = cfg.out.join("summary.txt");
    fs::write(&summary_path, summary.table())?;
    summary.write_csv(File::create(cfg.out.join("simulation.csv"))?)?;
    fs::write(cfg.out.join("config.json"), serde_json::to_string_pretty(cfg)?)?;
    Ok((
        summary,
        Artifacts {
            results,
            summary: summary_path,
            plots,
        },
    ))
}
