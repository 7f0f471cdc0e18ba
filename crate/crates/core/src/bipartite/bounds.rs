//! Closed-form probability bounds behind the existence argument for the
//! bipartite ensemble. All logarithms are base 2 except inside `delta0`,
//! whose `ln(n e / t)` comes from `C(n, t) <= (n e / t)^t`.

use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::gf2core::entropy;

/// A probability bound as derived (`raw`, possibly outside `[0, 1]`) and as
/// reported (`value`, clamped).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityBound {
    pub raw: f64,
    pub value: f64,
}

impl ProbabilityBound {
    fn new(raw: f64) -> Self {
        ProbabilityBound {
            raw,
            value: raw.clamp(0.0, 1.0),
        }
    }
}

/// Probability that a `Binomial(g, p)` count is even: `1/2 + (1 - 2p)^g / 2`.
pub fn parity_even_prob(g: u32, p: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    0.5 + 0.5 * (1.0 - 2.0 * p).powi(g as i32)
}

/// Diversity ratio guaranteed when every neighbourhood size is within a
/// factor `1 +- theta` of its mean: `(1 - theta) / (1 + theta) - p`.
pub fn step1_gamma(theta: f64, p: f64) -> f64 {
    (1.0 - theta) / (1.0 + theta) - p
}

/// Lower bound `1 - 4 m^2 exp(-theta^2 n p^2 / 4)` on the probability that
/// all neighbourhood sizes and pairwise differences concentrate.
pub fn bound_e_div(params: &ModelParams) -> ProbabilityBound {
    let (n, m) = (params.n as f64, params.m() as f64);
    let exponent = params.theta.powi(2) * n * params.p.powi(2) / 4.0;
    ProbabilityBound::new(1.0 - 4.0 * m * m * (-exponent).exp())
}

/// `Delta_0 = m p (1-p)^(t-1) - t ln(n e / t) - 2 ln t`; the probability that
/// some nonzero word of weight at most `t` is a codeword is at most
/// `exp(-Delta_0)`.
pub fn bound_delta0(params: &ModelParams) -> Result<f64> {
    let t = params.t;
    if t == 0 || 2 * t >= params.n {
        return Err(Error::Precondition(format!(
            "delta0 needs 1 <= t < n/2, got t = {t}, n = {}",
            params.n
        )));
    }
    let (n, m, p, t) = (params.n as f64, params.m() as f64, params.p, t as f64);
    Ok(m * p * (1.0 - p).powf(t - 1.0) - t * (n * std::f64::consts::E / t).ln() - 2.0 * t.ln())
}

/// `exp(-Delta_0)` as a probability bound on the small-weight failure event.
pub fn bound_e_low_failure(params: &ModelParams) -> Result<ProbabilityBound> {
    Ok(ProbabilityBound::new((-bound_delta0(params)?).exp()))
}

/// `beta = (1 - eta) epsilon - H(delta)`.
pub fn beta(params: &ModelParams) -> Result<f64> {
    Ok((1.0 - params.eta) * params.epsilon - entropy(params.delta)?)
}

/// Upper bound `2^(-beta n)` on the probability that some word of weight in
/// `(t, delta n]` satisfies every check. Requires `beta > 0`.
pub fn bound_e_up(params: &ModelParams) -> Result<ProbabilityBound> {
    let b = beta(params)?;
    if b <= 0.0 {
        return Err(Error::Parameter(format!(
            "beta = (1 - eta) epsilon - H(delta) = {b} must be positive"
        )));
    }
    Ok(ProbabilityBound::new((-b * params.n as f64).exp2()))
}

/// Smallest `t >= 1` with `1/2 + (1 - 2p)^(t+1) / 2 <= 2^-(1 - eta)`, so that
/// every set of more than `t` codeword nodes passes a given check with
/// probability at most `2^-(1 - eta)`.
pub fn choose_t(p: f64, eta: f64) -> Result<u32> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::Parameter(format!("p = {p} must lie in (0, 0.5)")));
    }
    if !(eta > 0.0 && eta < 0.5) {
        return Err(Error::Parameter(format!(
            "eta = {eta} must lie in (0, 0.5)"
        )));
    }
    let target = (-(1.0 - eta)).exp2();
    // target > 1/2 and (1 - 2p)^g decreases to 0, so the scan terminates
    let mut t = 1u32;
    while parity_even_prob(t + 1, p) > target {
        t += 1;
    }
    Ok(t)
}

/// Every closed-form quantity for one parameter set, for reporting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub m: usize,
    pub step1_gamma: f64,
    pub e_div_lower: ProbabilityBound,
    pub delta0: Option<f64>,
    pub e_low_failure_upper: Option<ProbabilityBound>,
    pub beta: Option<f64>,
    pub e_up_failure_upper: Option<ProbabilityBound>,
    pub choose_t: Option<u32>,
}

/// Evaluates every bound whose preconditions hold for `params`.
pub fn bounds_report(params: &ModelParams) -> BoundsReport {
    BoundsReport {
        m: params.m(),
        step1_gamma: step1_gamma(params.theta, params.p),
        e_div_lower: bound_e_div(params),
        delta0: bound_delta0(params).ok(),
        e_low_failure_upper: bound_e_low_failure(params).ok(),
        beta: beta(params).ok(),
        e_up_failure_upper: bound_e_up(params).ok(),
        choose_t: choose_t(params.p, params.eta).ok(),
    }
}
