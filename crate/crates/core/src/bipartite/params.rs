use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the random bipartite code ensemble and of the targets a
/// search should meet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Block length (number of left / codeword nodes).
    pub n: usize,
    /// Check density; the graph has `ceil(epsilon * n)` right nodes.
    pub epsilon: f64,
    /// Edge probability.
    pub p: f64,
    /// Deviation parameter of the neighbourhood-size concentration bounds.
    pub theta: f64,
    /// Slack in the per-check parity bound.
    pub eta: f64,
    /// Weight threshold separating the small-set and large-set cases.
    pub t: usize,
    /// Target relative distance.
    pub delta: f64,
    /// Target diversity index.
    pub gamma: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            n: 24,
            epsilon: 0.7,
            p: 0.25,
            theta: 0.1,
            eta: 0.1,
            t: 1,
            delta: 0.125,
            gamma: 0.3,
        }
    }
}

// Guards against products like 0.7 * 24 = 16.799999999999997 landing on the
// wrong side of an integer.
const ROUNDING_SLACK: f64 = 1e-9;

fn open_interval(name: &str, v: f64, lo: f64, hi: f64) -> Result<()> {
    if v > lo && v < hi {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "{name} = {v} must lie in ({lo}, {hi})"
        )))
    }
}

impl ModelParams {
    /// Number of right (parity) nodes, `ceil(epsilon * n)`.
    pub fn m(&self) -> usize {
        ((self.epsilon * self.n as f64 - ROUNDING_SLACK).ceil() as usize).max(1)
    }

    /// Smallest admissible minimum distance, `floor(delta * n) + 1`.
    pub fn distance_threshold(&self) -> usize {
        (self.delta * self.n as f64 + ROUNDING_SLACK).floor() as usize + 1
    }

    /// Checks the full set of open-interval constraints on every field.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        open_interval("p", self.p, 0.0, 0.5)?;
        open_interval("theta", self.theta, 0.0, 0.25)?;
        open_interval("eta", self.eta, 0.0, 0.5)?;
        open_interval("delta", self.delta, 0.0, 0.5)?;
        open_interval("gamma", self.gamma, 0.0, 1.0)?;
        if self.t == 0 {
            return Err(Error::Parameter("t must be at least 1".into()));
        }
        Ok(())
    }

    /// The weaker check used by sampling: `n >= 1`, `epsilon > 0` and
    /// `p` a probability.
    pub fn validate_shape(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Parameter("n must be at least 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Parameter(format!(
                "epsilon = {} must be positive",
                self.epsilon
            )));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Parameter(format!(
                "p = {} must lie in [0, 1]",
                self.p
            )));
        }
        Ok(())
    }
}
