use serde::{Deserialize, Serialize};

use super::constraint::{check_constraint, ConstraintSpec};
use super::graph::{code_from_graph, diversity_index, sample_bipartite};
use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::exec::{derive_seed, Backend};
use crate::gf2core::DEFAULT_ENUMERATION_CAP;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

pub const MIN_TRIALS: u64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McEvent {
    /// Diversity index at least `params.gamma`.
    DiversityGeGamma,
    /// No nonzero codeword lighter than `floor(delta n) + 1`. The trivial
    /// code counts as a success.
    MinDistanceGeTarget,
    /// The graph satisfies the supplied constraint.
    Constraint,
}

impl McEvent {
    pub fn name(self) -> &'static str {
        match self {
            McEvent::DiversityGeGamma => "diversity_ge_gamma",
            McEvent::MinDistanceGeTarget => "min_distance_ge_target",
            McEvent::Constraint => "constraint",
        }
    }
}

impl std::str::FromStr for McEvent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diversity_ge_gamma" | "diversity" => Ok(McEvent::DiversityGeGamma),
            "min_distance_ge_target" | "distance" => Ok(McEvent::MinDistanceGeTarget),
            "constraint" => Ok(McEvent::Constraint),
            _ => Err(Error::Parameter(format!("unknown Monte Carlo event {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub event: McEvent,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Wilson score interval for `successes` out of `trials` at quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

pub fn monte_carlo_event(
    params: &ModelParams,
    event: McEvent,
    c: &ConstraintSpec,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    monte_carlo_event_with(Backend::default(), params, event, c, trials, seed)
}

/// Frequency of `event` over `trials` independently sampled graphs with a
/// 95% Wilson interval. Trial `i` samples with `derive_seed(seed, i)`, so
/// the count is the same on every backend.
pub fn monte_carlo_event_with(
    backend: Backend,
    params: &ModelParams,
    event: McEvent,
    c: &ConstraintSpec,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    if trials < MIN_TRIALS {
        return Err(Error::Parameter(format!(
            "at least {MIN_TRIALS} trials required, got {trials}"
        )));
    }
    params.validate_shape()?;
    let m = params.m();
    match event {
        McEvent::DiversityGeGamma if m < 2 => {
            return Err(Error::DegenerateInput(format!(
                "diversity needs two right nodes, m = {m}"
            )))
        }
        McEvent::MinDistanceGeTarget if params.n.saturating_sub(m) > DEFAULT_ENUMERATION_CAP => {
            return Err(Error::SizeCap {
                what: "n - m",
                size: (params.n - m) as u128,
                cap: DEFAULT_ENUMERATION_CAP as u128,
            })
        }
        McEvent::Constraint => c.check_applicable(params.n, m)?,
        _ => {}
    }
    let threshold = params.distance_threshold();

    let outcomes = backend.map_range(0..trials, |i| -> Result<bool> {
        let g = sample_bipartite(params, derive_seed(seed, i))?;
        match event {
            McEvent::DiversityGeGamma => Ok(diversity_index(&g)? >= params.gamma),
            McEvent::MinDistanceGeTarget => {
                match code_from_graph(&g)
                    .min_distance_with(Backend::Sequential, DEFAULT_ENUMERATION_CAP)
                {
                    Ok(d) => Ok(d >= threshold),
                    Err(Error::DegenerateCode) => Ok(true),
                    Err(e) => Err(e),
                }
            }
            McEvent::Constraint => check_constraint(&g, c),
        }
    });
    let mut successes = 0u64;
    for o in outcomes {
        successes += o? as u64;
    }
    let (ci_low, ci_high) = wilson_interval(successes, trials, Z_95);
    Ok(McEstimate {
        event,
        trials,
        successes,
        estimate: successes as f64 / trials as f64,
        ci_low,
        ci_high,
    })
}
