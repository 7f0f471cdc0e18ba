use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bipartite::{ConstraintSpec, McEvent, ModelParams};
use crate::capacity::GraphFormat;
use crate::error::{Error, Result};

/// One command with every parameter it reads.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Draw one graph from the ensemble and measure its code.
    CodesSample {
        params: ModelParams,
        constraint: ConstraintSpec,
    },
    /// Measure a stored biadjacency matrix against distance and diversity
    /// targets.
    CodesVerify {
        graph: PathBuf,
        delta: f64,
        gamma: f64,
        constraint: ConstraintSpec,
    },
    CodesSearch {
        params: ModelParams,
        constraint: ConstraintSpec,
        max_attempts: u64,
    },
    CodesMontecarlo {
        params: ModelParams,
        constraint: ConstraintSpec,
        event: McEvent,
        trials: u64,
    },
    /// Lower and upper capacity bounds, plus certificates up to `rmax` when
    /// given. Without `theta_value` the registry must know the graph.
    CapacityBounds {
        graph: PathBuf,
        format: GraphFormat,
        gamma: f64,
        theta_value: Option<f64>,
        rmax: Option<usize>,
    },
    CapacityCertify {
        graph: PathBuf,
        format: GraphFormat,
        gamma: f64,
        rmax: usize,
    },
    /// Exact independence number and lexicographically smallest maximum
    /// stable set of `G(r, k)`; `k` defaults to `r`.
    CapacityMis {
        graph: PathBuf,
        format: GraphFormat,
        r: usize,
        k: Option<usize>,
    },
    /// The pigeonhole inequality for one `d`, or every `d` in `1..=r`.
    CapacityRecursion {
        graph: PathBuf,
        format: GraphFormat,
        r: usize,
        d: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CodesSample { .. } => "codes-sample",
            Command::CodesVerify { .. } => "codes-verify",
            Command::CodesSearch { .. } => "codes-search",
            Command::CodesMontecarlo { .. } => "codes-montecarlo",
            Command::CapacityBounds { .. } => "capacity-bounds",
            Command::CapacityCertify { .. } => "capacity-certify",
            Command::CapacityMis { .. } => "capacity-mis",
            Command::CapacityRecursion { .. } => "capacity-recursion",
        }
    }

    pub fn is_randomized(&self) -> bool {
        matches!(
            self,
            Command::CodesSample { .. }
                | Command::CodesSearch { .. }
                | Command::CodesMontecarlo { .. }
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    #[default]
    Table,
    Record,
    Csv,
}

impl std::str::FromStr for Emit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Emit::Table),
            "record" => Ok(Emit::Record),
            "csv" => Ok(Emit::Csv),
            _ => Err(Error::Validation(format!("unknown output format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub emit: Emit,
    /// Write the emitted text here instead of standard output.
    pub out: Option<PathBuf>,
    /// For sampling and search: also store the chosen biadjacency matrix.
    pub graph_out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub seed: u64,
    #[serde(default)]
    pub output: OutputSpec,
}

impl RunConfig {
    /// Checks the parameter ranges each command relies on before any work
    /// starts.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: u64| {
            if v == 0 {
                Err(Error::Validation(format!("{name} must be at least 1")))
            } else {
                Ok(())
            }
        };
        match &self.command {
            Command::CodesSample { params, constraint } => {
                params.validate_shape()?;
                constraint.validate()
            }
            Command::CodesVerify {
                delta,
                gamma,
                constraint,
                ..
            } => {
                if !(0.0..0.5).contains(delta) {
                    return Err(Error::Validation(format!(
                        "delta = {delta} must lie in [0, 0.5)"
                    )));
                }
                if !(0.0..=1.0).contains(gamma) {
                    return Err(Error::Validation(format!(
                        "gamma = {gamma} must lie in [0, 1]"
                    )));
                }
                constraint.validate()
            }
            Command::CodesSearch {
                params,
                constraint,
                max_attempts,
            } => {
                params.validate_shape()?;
                positive("max-attempts", *max_attempts)?;
                constraint.validate()
            }
            Command::CodesMontecarlo {
                params,
                constraint,
                trials,
                ..
            } => {
                params.validate_shape()?;
                positive("trials", *trials)?;
                constraint.validate()
            }
            Command::CapacityBounds { gamma, rmax, .. } => {
                gamma_in_range(*gamma)?;
                positive("rmax", rmax.unwrap_or(1) as u64)
            }
            Command::CapacityCertify { gamma, rmax, .. } => {
                gamma_in_range(*gamma)?;
                positive("rmax", *rmax as u64)
            }
            Command::CapacityMis { r, k, .. } => {
                positive("r", *r as u64)?;
                match k {
                    Some(k) if k > r => Err(Error::Validation(format!("k = {k} exceeds r = {r}"))),
                    _ => Ok(()),
                }
            }
            Command::CapacityRecursion { r, d, .. } => {
                positive("r", *r as u64)?;
                match d {
                    Some(d) if *d == 0 || d > r => Err(Error::Validation(format!(
                        "need 1 <= d <= r, got d = {d}, r = {r}"
                    ))),
                    _ => Ok(()),
                }
            }
        }
    }
}

fn gamma_in_range(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "gamma = {gamma} must lie in (0, 1]"
        )))
    }
}
