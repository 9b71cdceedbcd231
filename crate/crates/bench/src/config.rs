//! Run configuration: a JSON file whose fields can be overridden from the
//! command line.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};

use clustval::calibrate::DEFAULT_B;
use clustval::stability::DEFAULT_REPETITIONS;
use clustval::{CalibrationRegime, ComponentId, CompositeSpec, IndexId, IndexParams, MethodId, RngSeed, Scenario, StabilityId};

/// Everything a run needs, as written in a config file. Names are the same
/// strings the command line accepts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// CSV file with one object per row.
    pub data: Option<PathBuf>,
    pub has_header: bool,
    /// The last column holds known class labels rather than a feature. A
    /// header naming the last column `class` has the same effect.
    pub class_column: bool,
    /// Built-in scenario name, e.g. `scenario1` or `s1`.
    pub scenario: Option<String>,
    pub replicates: usize,
    pub methods: Vec<String>,
    /// Methods whose clusterings may be selected. Empty means all of
    /// `methods`; the others still enter the calibration pool.
    pub candidates: Vec<String>,
    pub kmin: usize,
    pub kmax: usize,
    pub indexes: Vec<String>,
    pub stability: Vec<String>,
    pub composites: Vec<String>,
    #[serde(rename = "B", alias = "b")]
    pub b: usize,
    #[serde(rename = "A", alias = "a")]
    pub a: usize,
    pub kappa: usize,
    pub p: f64,
    pub regime: CalibrationRegime,
    pub seed: u64,
    pub out: PathBuf,
    pub plots: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let params = IndexParams::default();
        Self {
            data: None,
            has_header: true,
            class_column: false,
            scenario: None,
            replicates: 1,
            methods: vec!["pam".into()],
            candidates: Vec::new(),
            kmin: 2,
            kmax: 10,
            indexes: IndexId::ALL.iter().map(|i| i.name().to_string()).collect(),
            stability: StabilityId::ALL.iter().map(|s| s.name().to_string()).collect(),
            composites: vec!["a1".into(), "a2".into()],
            b: DEFAULT_B,
            a: DEFAULT_REPETITIONS,
            kappa: params.kappa,
            p: params.p,
            regime: CalibrationRegime::PooledAllK,
            seed: 1,
            out: PathBuf::from("clustval-out"),
            plots: true,
        }
    }
}

/// Parsed and checked form of [`RunConfig`].
#[derive(Debug, Clone)]
pub struct Settings {
    pub methods: Vec<MethodId>,
    pub candidates: Vec<MethodId>,
    pub kmin: usize,
    pub kmax: usize,
    pub indexes: Vec<IndexId>,
    pub stability: Vec<StabilityId>,
    pub composites: Vec<CompositeSpec>,
    pub b: usize,
    pub a: usize,
    pub params: IndexParams,
    pub regime: CalibrationRegime,
    pub seed: RngSeed,
}

impl Settings {
    pub fn ks(&self) -> std::ops::RangeInclusive<usize> {
        self.kmin..=self.kmax
    }

    /// Checks the parts that depend on the number of objects.
    pub fn check_size(&self, n: usize) -> Result<()> {
        ensure!(
            self.kmax < n,
            "kmax = {} must be at most n - 1 = {}",
            self.kmax,
            n.saturating_sub(1)
        );
        self.params.validate(n).map_err(anyhow::Error::from)
    }
}

fn parse_list<T>(what: &str, items: &[String]) -> Result<Vec<T>>
where
    T: std::str::FromStr + PartialEq,
    T::Err: std::fmt::Display,
{
    let mut out = Vec::new();
    for s in items {
        let v = s.parse::<T>().map_err(|e| anyhow::anyhow!("{what}: {e}"))?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn scenario(&self) -> Result<Option<Scenario>> {
        self.scenario
            .as_deref()
            .map(|s| s.parse::<Scenario>().map_err(anyhow::Error::from))
            .transpose()
    }

    /// Validates every field that does not depend on the data.
    pub fn settings(&self) -> Result<Settings> {
        match (&self.data, &self.scenario) {
            (Some(_), Some(_)) => bail!("give either a data file or a scenario, not both"),
            (None, None) => bail!("no data: give a data file or a scenario"),
            _ => {}
        }
        self.scenario()?;
        ensure!(self.replicates >= 1, "replicates must be at least 1");
        ensure!(self.kmin >= 2, "kmin must be at least 2");
        ensure!(self.kmax >= self.kmin, "kmax = {} is below kmin = {}", self.kmax, self.kmin);
        ensure!(self.b >= 1, "B must be at least 1");
        ensure!(self.a >= 1, "A must be at least 1");
        let methods: Vec<MethodId> = parse_list("methods", &self.methods)?;
        ensure!(!methods.is_empty(), "at least one method is needed");
        let mut candidates: Vec<MethodId> = parse_list("candidates", &self.candidates)?;
        if candidates.is_empty() {
            candidates = methods.clone();
        }
        if let Some(c) = candidates.iter().find(|c| !methods.contains(c)) {
            bail!("candidate method {c} is not among the methods");
        }
        let indexes: Vec<IndexId> = parse_list("indexes", &self.indexes)?;
        let stability: Vec<StabilityId> = parse_list("stability", &self.stability)?;
        let composites = self
            .composites
            .iter()
            .map(|s| CompositeSpec::parse(s).map_err(anyhow::Error::from))
            .collect::<Result<Vec<_>>>()?;
        for spec in &composites {
            for c in spec.components() {
                let present = match c.id {
                    ComponentId::Index(i) => indexes.contains(&i),
                    ComponentId::Stability(s) => stability.contains(&s),
                };
                ensure!(present, "composite {} needs {}, which is not requested", spec.name, c.id);
            }
        }
        let params = IndexParams {
            p: self.p,
            kappa: self.kappa,
        };
        ensure!(self.p > 0.0 && self.p < 1.0, "p must lie strictly between 0 and 1");
        ensure!(self.kappa >= 1, "kappa must be at least 1");
        Ok(Settings {
            methods,
            candidates,
            kmin: self.kmin,
            kmax: self.kmax,
            indexes,
            stability,
            composites,
            b: self.b,
            a: self.a,
            params,
            regime: self.regime,
            seed: RngSeed::new(self.seed),
        })
    }
}
