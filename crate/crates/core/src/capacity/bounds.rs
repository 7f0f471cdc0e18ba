use serde::{Deserialize, Serialize};

use super::graph::{degree_stats, SimpleGraph};
use super::mis::alpha_exact;
use crate::error::{Error, Result};
use crate::gf2core::entropy;

/// Absolute tolerance for every real-valued bound comparison.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// `f(gamma, x)`: `1 / (2^H(gamma) x^gamma)` below the breakpoint
/// `gamma = x / (x + 1)`, `1 / (x + 1)` from it on. The two branches meet at
/// the breakpoint.
pub fn f_bound(gamma: f64, x: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!("gamma = {gamma} must lie in (0, 1]")));
    }
    if !(x >= 1.0 && x.is_finite()) {
        return Err(Error::Domain(format!("x = {x} must be at least 1")));
    }
    if gamma < x / (x + 1.0) {
        Ok(1.0 / (entropy(gamma)?.exp2() * x.powf(gamma)))
    } else {
        Ok(1.0 / (x + 1.0))
    }
}

/// Where a full-capacity value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThetaSource {
    /// `sqrt(5)` for the 5-cycle (Lovász).
    LovaszFiveCycle,
    CompleteGraph,
    /// Capacity equals the independence number for perfect graphs.
    PerfectBipartite,
    PerfectCoBipartite,
    UserSupplied,
}

impl ThetaSource {
    pub fn label(self) -> &'static str {
        match self {
            ThetaSource::LovaszFiveCycle => "lovasz-five-cycle",
            ThetaSource::CompleteGraph => "complete-graph",
            ThetaSource::PerfectBipartite => "perfect-bipartite",
            ThetaSource::PerfectCoBipartite => "perfect-cobipartite",
            ThetaSource::UserSupplied => "user-supplied",
        }
    }

    /// True for values that rest on a known theorem rather than user input.
    pub fn is_registry(self) -> bool {
        self != ThetaSource::UserSupplied
    }
}

/// One finite-order witness `alpha(G(r, k))^(1/r)` with `k = floor(gamma r)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub r: usize,
    pub k: usize,
    pub alpha: usize,
    pub value: f64,
}

/// A certificate measured against the capacity upper bounds.
///
/// The pigeonhole step bounds `alpha(G(r, k))^(1/r)` by
/// `n (theta / n)^(k / r)`. That equals the `gamma` upper bound only when
/// `k = gamma r` exactly; when `gamma r` is fractional the floored budget
/// gives a larger per-order bound, and the certificate may exceed the
/// `gamma` bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub r: usize,
    pub k: usize,
    pub value: f64,
    pub order_bound: f64,
    pub within_order_bound: bool,
    pub integral_budget: bool,
    pub within_upper: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerTerms {
    /// `n f(gamma, d_av)`
    pub average_degree: f64,
    /// `n f(gamma, Delta)`
    pub max_degree: f64,
    /// `n f(gamma, n - 1)`
    pub complete: f64,
}

impl LowerTerms {
    pub fn max(&self) -> f64 {
        self.average_degree.max(self.max_degree).max(self.complete)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub n: usize,
    pub gamma: f64,
    pub d_av: f64,
    pub delta_max: usize,
    pub alpha: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub lower_terms: LowerTerms,
    pub theta_value: f64,
    pub theta_source: ThetaSource,
    pub certificates: Vec<Certificate>,
    pub certificate_checks: Vec<CertificateCheck>,
}

impl CapacityReport {
    pub fn attach_certificates(&mut self, certificates: Vec<Certificate>) {
        let nf = self.n as f64;
        self.certificate_checks = certificates
            .iter()
            .map(|c| {
                let order_bound = nf * (self.theta_value / nf).powf(c.k as f64 / c.r as f64);
                CertificateCheck {
                    r: c.r,
                    k: c.k,
                    value: c.value,
                    order_bound,
                    within_order_bound: c.value <= order_bound + BOUND_TOLERANCE,
                    integral_budget: (self.gamma * c.r as f64 - c.k as f64).abs()
                        <= BOUND_TOLERANCE,
                    within_upper: c.value <= self.upper_bound + BOUND_TOLERANCE,
                }
            })
            .collect();
        self.certificates = certificates;
    }

    /// Every certificate within its per-order bound, and within the `gamma`
    /// upper bound whenever `gamma r` is an integer.
    pub fn certificates_consistent(&self) -> bool {
        self.certificate_checks
            .iter()
            .all(|c| c.within_order_bound && (!c.integral_budget || c.within_upper))
    }
}

/// Lower bound `n max(f(gamma, d_av), f(gamma, Delta), f(gamma, n-1))` and
/// upper bound `n (theta / n)^gamma` for the `gamma`-fractional capacity.
///
/// The graph must be connected with at least 3 vertices, and `theta_value`
/// must lie in `[alpha(g), n]`.
pub fn capacity_bounds(
    g: &SimpleGraph,
    gamma: f64,
    theta_value: f64,
    theta_source: ThetaSource,
) -> Result<CapacityReport> {
    let n = g.n();
    if n < 3 {
        return Err(Error::Applicability(format!(
            "graph has {n} vertices, need at least 3"
        )));
    }
    if !g.is_connected() {
        return Err(Error::Applicability("graph is not connected".into()));
    }
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!("gamma = {gamma} must lie in (0, 1]")));
    }
    let alpha = alpha_exact(g)?;
    if !(theta_value >= alpha as f64 - BOUND_TOLERANCE && theta_value <= n as f64 + BOUND_TOLERANCE)
    {
        return Err(Error::Provenance(format!(
            "capacity value {theta_value} ({}) outside [alpha, n] = [{alpha}, {n}]",
            theta_source.label()
        )));
    }
    let (d_av, delta_max) = degree_stats(g);
    let nf = n as f64;
    let lower_terms = LowerTerms {
        average_degree: nf * f_bound(gamma, d_av)?,
        max_degree: nf * f_bound(gamma, delta_max as f64)?,
        complete: nf * f_bound(gamma, nf - 1.0)?,
    };
    Ok(CapacityReport {
        n,
        gamma,
        d_av,
        delta_max,
        alpha,
        lower_bound: lower_terms.max(),
        upper_bound: nf * (theta_value / nf).powf(gamma),
        lower_terms,
        theta_value,
        theta_source,
        certificates: Vec::new(),
        certificate_checks: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_examples() {
        for x in 1..=30 {
            let x = x as f64;
            assert_eq!(f_bound(1.0, x).unwrap(), 1.0 / (x + 1.0));
        }
        assert!((f_bound(0.5, 2.0).unwrap() - 0.353_553_390_593_273_8).abs() < 1e-15);
        assert!((f_bound(1e-12, 3.0).unwrap() - 1.0).abs() < 1e-9);
        assert!(f_bound(0.0, 2.0).is_err());
        assert!(f_bound(1.1, 2.0).is_err());
        assert!(f_bound(0.5, 0.5).is_err());
    }

    #[test]
    fn f_is_continuous_at_the_breakpoint() {
        for x in 1..=20 {
            let x = x as f64;
            let b = x / (x + 1.0);
            let left = 1.0 / (entropy(b).unwrap().exp2() * x.powf(b));
            assert!((left - f_bound(b, x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn c5_half_capacity() {
        let r = capacity_bounds(
            &SimpleGraph::cycle(5).unwrap(),
            0.5,
            5f64.sqrt(),
            ThetaSource::LovaszFiveCycle,
        )
        .unwrap();
        assert!((r.lower_bound - 1.767_766_952_966_368_8).abs() < 1e-12);
        assert!((r.upper_bound - 3.343_701_524_882_11).abs() < 1e-12);
        assert_eq!(r.lower_bound, r.lower_terms.average_degree);
        assert!((r.lower_terms.complete - 1.25).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_sandwich_collapses() {
        for n in 3..8 {
            let r = capacity_bounds(
                &SimpleGraph::complete(n).unwrap(),
                1.0,
                1.0,
                ThetaSource::CompleteGraph,
            )
            .unwrap();
            assert!((r.lower_bound - 1.0).abs() < 1e-12);
            assert!((r.upper_bound - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn perfect_graphs_at_full_capacity() {
        for g in [
            SimpleGraph::path(3).unwrap(),
            SimpleGraph::path(6).unwrap(),
            SimpleGraph::complete_bipartite(2, 3).unwrap(),
            SimpleGraph::complete_bipartite(1, 5).unwrap(),
        ] {
            let alpha = alpha_exact(&g).unwrap() as f64;
            let r = capacity_bounds(&g, 1.0, alpha, ThetaSource::PerfectBipartite).unwrap();
            let (d_av, _) = degree_stats(&g);
            assert!((r.lower_terms.average_degree - g.n() as f64 / (d_av + 1.0)).abs() < 1e-12);
            assert!(r.lower_bound <= r.upper_bound + BOUND_TOLERANCE);
        }
    }

    #[test]
    fn applicability_and_provenance_errors() {
        let disconnected = SimpleGraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            capacity_bounds(&disconnected, 0.5, 2.0, ThetaSource::UserSupplied),
            Err(Error::Applicability(_))
        ));
        assert!(matches!(
            capacity_bounds(
                &SimpleGraph::path(2).unwrap(),
                0.5,
                1.0,
                ThetaSource::UserSupplied
            ),
            Err(Error::Applicability(_))
        ));
        let c5 = SimpleGraph::cycle(5).unwrap();
        assert!(matches!(
            capacity_bounds(&c5, 0.5, 1.5, ThetaSource::UserSupplied),
            Err(Error::Provenance(_))
        ));
        assert!(matches!(
            capacity_bounds(&c5, 0.5, 5.5, ThetaSource::UserSupplied),
            Err(Error::Provenance(_))
        ));
        assert!(capacity_bounds(&c5, 0.0, 2.2, ThetaSource::UserSupplied).is_err());
    }
}
