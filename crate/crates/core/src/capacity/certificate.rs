use super::bounds::Certificate;
use super::graph::SimpleGraph;
use super::mis::{alpha_exact_with, DEFAULT_VERTEX_CAP};
use super::product::{power_size, restricted_power_capped};
use crate::error::{Error, Result};
use crate::exec::Backend;

/// Difference budget `floor(gamma r)`.
pub fn difference_budget(gamma: f64, r: usize) -> usize {
    (gamma * r as f64 + 1e-9).floor() as usize
}

/// Smallest admissible order `ceil(1 / gamma)`.
pub fn min_order(gamma: f64) -> usize {
    ((1.0 / gamma) - 1e-9).ceil().max(1.0) as usize
}

/// Finite-order witnesses `alpha(G(r, floor(gamma r)))^(1/r)` for every
/// admissible `r <= r_max` whose power fits under the vertex cap.
pub fn capacity_certificate(g: &SimpleGraph, gamma: f64, r_max: usize) -> Result<Vec<Certificate>> {
    capacity_certificate_with(g, gamma, r_max, Backend::default(), DEFAULT_VERTEX_CAP)
}

pub fn capacity_certificate_with(
    g: &SimpleGraph,
    gamma: f64,
    r_max: usize,
    backend: Backend,
    cap: usize,
) -> Result<Vec<Certificate>> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!("gamma = {gamma} must lie in (0, 1]")));
    }
    if r_max == 0 {
        return Err(Error::Domain("r_max must be at least 1".into()));
    }
    let r_min = min_order(gamma);
    let feasible: Vec<usize> = (r_min..=r_max)
        .take_while(|&r| power_size(g.n(), r, cap).is_ok())
        .collect();
    if feasible.is_empty() {
        return Err(Error::Feasibility(format!(
            "no order r in [{r_min}, {r_max}] with {}^r <= {cap} vertices",
            g.n()
        )));
    }
    feasible
        .into_iter()
        .map(|r| {
            let k = difference_budget(gamma, r);
            let pg = restricted_power_capped(g, r, k, cap)?;
            let alpha = alpha_exact_with(&pg.graph, backend, cap)?;
            Ok(Certificate {
                r,
                k,
                alpha,
                value: (alpha as f64).powf(1.0 / r as f64),
            })
        })
        .collect()
}

/// Both sides of `A(r, d) <= n^(r-d) A(d, d)`, with `A(r, d) = alpha(G(r, d))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RecursionCheck {
    pub r: usize,
    pub d: usize,
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
}

pub fn recursion_check(g: &SimpleGraph, r: usize, d: usize) -> Result<bool> {
    recursion_terms(g, r, d, Backend::default()).map(|c| c.holds)
}

pub fn recursion_terms(
    g: &SimpleGraph,
    r: usize,
    d: usize,
    backend: Backend,
) -> Result<RecursionCheck> {
    if d == 0 || d > r {
        return Err(Error::Domain(format!(
            "need 1 <= d <= r, got d = {d}, r = {r}"
        )));
    }
    let a = |order: usize| -> Result<u128> {
        let pg = restricted_power_capped(g, order, d, DEFAULT_VERTEX_CAP)?;
        Ok(alpha_exact_with(&pg.graph, backend, DEFAULT_VERTEX_CAP)? as u128)
    };
    let lhs = a(r)?;
    let rhs = (g.n() as u128).pow((r - d) as u32) * a(d)?;
    Ok(RecursionCheck {
        r,
        d,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}
