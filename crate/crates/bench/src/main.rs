use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use clustval::CalibrationRegime;
use clustval_bench::{run, RunConfig};

/// Calibrated internal cluster validation.
#[derive(Parser, Debug)]
#[command(name = "clustval", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate clusterings of one data set.
    Validate(Common),
    /// Repeat validation on fresh draws of a scenario and tabulate the picks.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Number of replicates.
        #[arg(long)]
        replicates: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// JSON config file; flags given here take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV data file, one object per row.
    #[arg(long, conflicts_with = "scenario")]
    data: Option<PathBuf>,
    /// The CSV file has no header row.
    #[arg(long)]
    no_header: bool,
    /// The last CSV column holds known classes.
    #[arg(long)]
    class_column: bool,
    /// Built-in scenario, scenario1 .. scenario6 (or s1 .. s6).
    #[arg(long)]
    scenario: Option<String>,
    /// Clustering methods: kmeans, pam, single, complete, average, ward.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Methods whose clusterings may be selected; the rest only calibrate.
    #[arg(long, value_delimiter = ',')]
    candidates: Option<Vec<String>>,
    #[arg(long)]
    kmin: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    /// Indexes to compute.
    #[arg(long, value_delimiter = ',')]
    indexes: Option<Vec<String>>,
    /// Stability statistics: ps, bootstab.
    #[arg(long, value_delimiter = ',')]
    stability: Option<Vec<String>>,
    /// Composites: a1, a2, or custom lists like ave_within:2,ps:1 separated by ';'.
    #[arg(long, value_delimiter = ';')]
    composites: Option<Vec<String>>,
    /// Random clusterings per generator and K.
    #[arg(long = "B")]
    b: Option<usize>,
    /// Resampling repetitions for stability.
    #[arg(long = "A")]
    a: Option<usize>,
    #[arg(long)]
    kappa: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// pooled or perk.
    #[arg(long)]
    regime: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the SVG plots.
    #[arg(long)]
    no_plots: bool,
}

impl Common {
    fn into_config(self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if self.data.is_some() {
            cfg.data = self.data;
            cfg.scenario = None;
        }
        if self.scenario.is_some() {
            cfg.scenario = self.scenario;
            cfg.data = None;
        }
        if self.no_header {
            cfg.has_header = false;
        }
        if self.class_column {
            cfg.class_column = true;
        }
        if self.no_plots {
            cfg.plots = false;
        }
        macro_rules! set {
            ($($f:ident),*) => {$( if let Some(v) = self.$f { cfg.$f = v; } )*};
        }
        set!(methods, candidates, kmin, kmax, indexes, stability, composites, b, a, kappa, p, seed, out);
        if let Some(r) = self.regime {
            cfg.regime = r.parse::<CalibrationRegime>()?;
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn real_main() -> Result<()> {
    match Cli::parse().command {
        Command::Validate(common) => {
            let cfg = common.into_config()?;
            let (_, art) = run::validate(&cfg)?;
            print!("{}", std::fs::read_to_string(&art.summary)?);
            eprintln!("wrote {} and {} plot(s)", art.results.display(), art.plots.len());
        }
        Command::Simulate { common, replicates } => {
            let mut cfg = common.into_config()?;
            if let Some(r) = replicates {
                cfg.replicates = r;
            }
            let (summary, art) = run::simulate(&cfg)?;
            print!("{}", summary.table());
            eprintln!("wrote {} and {} plot(s)", art.results.display(), art.plots.len());
        }
    }
    Ok(())
}
