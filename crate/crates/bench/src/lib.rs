//! Benchmark harness around `clustval`: configuration, the validation
//! pipeline, scenario simulations, reports and plots.

pub mod config;
pub mod pipeline;
pub mod plots;
pub mod report;
pub mod run;
pub mod simulate;

pub use config::{RunConfig, Settings};
pub use pipeline::{run_validation, Pick, Selection, ValidationResult};
pub use simulate::{run_simulation_study, SimRow, SimulationSummary};
