use serde::{Deserialize, Serialize};

use super::constraint::{check_constraint, ConstraintSpec};
use super::graph::{code_from_graph, diversity_index, sample_bipartite_forcing, BipartiteGraph};
use super::params::ModelParams;
use super::verify::{reverify, Reverification};
use crate::error::{Error, Result};
use crate::exec::{derive_seed, Backend};
use crate::gf2core::{entropy, DEFAULT_ENUMERATION_CAP};

/// Metrics of the code defined by one sampled graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub dimension: usize,
    /// `None` for the trivial code, or when the dimension exceeds the
    /// enumeration cap.
    pub min_distance: Option<usize>,
    pub relative_distance: Option<f64>,
    pub diversity_index: f64,
    pub rate: f64,
    pub redundancy: f64,
}

impl CodeSummary {
    pub fn of(g: &BipartiteGraph) -> Result<Self> {
        let code = code_from_graph(g);
        let min_distance =
            match code.min_distance_with(Backend::Sequential, DEFAULT_ENUMERATION_CAP) {
                Ok(d) => Some(d),
                Err(Error::DegenerateCode | Error::SizeCap { .. }) => None,
                Err(e) => return Err(e),
            };
        let (rate, redundancy) = code.rate_and_redundancy();
        Ok(CodeSummary {
            n: g.n_left(),
            m: g.n_right(),
            rank: code.rank(),
            dimension: code.dimension(),
            min_distance,
            relative_distance: min_distance.map(|d| (d - 1) as f64 / g.n_left() as f64),
            diversity_index: diversity_index(g)?,
            rate,
            redundancy,
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatisfiedFlags {
    pub distance: bool,
    pub diversity: bool,
    pub constraint: bool,
    /// Independent re-verification agreed; only ever set on an accepted
    /// attempt.
    pub verified: bool,
}

impl SatisfiedFlags {
    pub fn all(&self) -> bool {
        self.distance && self.diversity && self.constraint && self.verified
    }

    fn targets_met(&self) -> bool {
        self.distance && self.diversity && self.constraint
    }

    fn count(&self) -> usize {
        [self.distance, self.diversity, self.constraint]
            .iter()
            .filter(|&&b| b)
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub graph: BipartiteGraph,
    pub summary: CodeSummary,
    /// 1-based index of the reported attempt (the accepted one, or
    /// `max_attempts` when the search was exhausted).
    pub attempts: u64,
    /// Index of the reported graph; its sampling seed is
    /// `derive_seed(seed, attempt_index)`.
    pub attempt_index: u64,
    pub seed: u64,
    pub distance_threshold: usize,
    pub satisfied: SatisfiedFlags,
    pub reverification: Option<Reverification>,
}

impl SearchResult {
    pub fn is_satisfied(&self) -> bool {
        self.satisfied.all()
    }
}

struct Attempt {
    index: u64,
    graph: BipartiteGraph,
    summary: CodeSummary,
    flags: SatisfiedFlags,
}

impl Attempt {
    // flags met, then distance, then diversity
    fn score(&self) -> (usize, usize, f64) {
        (
            self.flags.count(),
            self.summary.min_distance.unwrap_or(0),
            self.summary.diversity_index,
        )
    }
}

fn check_search_params(params: &ModelParams, c: &ConstraintSpec) -> Result<()> {
    params.validate_shape()?;
    if !(0.0..0.5).contains(&params.delta) {
        return Err(Error::Parameter(format!(
            "delta = {} must lie in [0, 0.5)",
            params.delta
        )));
    }
    if !(0.0..1.0).contains(&params.gamma) {
        return Err(Error::Parameter(format!(
            "gamma = {} must lie in [0, 1)",
            params.gamma
        )));
    }
    let h = entropy(params.delta)?;
    if params.epsilon <= h {
        return Err(Error::Parameter(format!(
            "epsilon = {} must exceed H(delta) = {h}",
            params.epsilon
        )));
    }
    let (n, m) = (params.n, params.m());
    if m < 2 {
        return Err(Error::Parameter(format!(
            "search needs at least two right nodes, m = {m}"
        )));
    }
    if m > n {
        return Err(Error::Parameter(format!("m = {m} exceeds n = {n}")));
    }
    if n - m > DEFAULT_ENUMERATION_CAP {
        return Err(Error::SizeCap {
            what: "n - m",
            size: (n - m) as u128,
            cap: DEFAULT_ENUMERATION_CAP as u128,
        });
    }
    c.check_applicable(n, m)
}

pub fn rejection_search(
    params: &ModelParams,
    c: &ConstraintSpec,
    seed: u64,
    max_attempts: u64,
) -> Result<SearchResult> {
    rejection_search_with(Backend::default(), params, c, seed, max_attempts)
}

/// Samples graphs until one meets the distance threshold
/// `floor(delta n) + 1`, the diversity target `gamma` and the constraint.
///
/// Attempt `i` (zero-based) samples with seed `derive_seed(seed, i)`. Edges
/// that the constraint forces outright are set on every sample, which draws
/// from the ensemble conditioned on those edges; everything else in the
/// constraint is checked on the result. The first accepting index wins, so
/// the outcome does not depend on the backend. The accepted graph is
/// re-verified with the naive checkers before it is reported. When
/// `max_attempts` run out, the best-scoring attempt (earliest on ties) is
/// returned with `satisfied` flags unset.
pub fn rejection_search_with(
    backend: Backend,
    params: &ModelParams,
    c: &ConstraintSpec,
    seed: u64,
    max_attempts: u64,
) -> Result<SearchResult> {
    if max_attempts == 0 {
        return Err(Error::Parameter("max_attempts must be at least 1".into()));
    }
    check_search_params(params, c)?;
    let threshold = params.distance_threshold();
    let forced = c.forced_edges(params.n);
    let check_hn = contains_hn(c);

    let evaluate = |index: u64| -> Result<Attempt> {
        let graph = sample_bipartite_forcing(params, derive_seed(seed, index), &forced)?;
        let summary = CodeSummary::of(&graph)?;
        let flags = SatisfiedFlags {
            distance: summary.min_distance.is_some_and(|d| d >= threshold),
            diversity: summary.diversity_index >= params.gamma,
            constraint: check_constraint(&graph, c)?,
            verified: false,
        };
        Ok(Attempt {
            index,
            graph,
            summary,
            flags,
        })
    };

    let batch = if backend.is_parallel() { 64 } else { 1 };
    let mut best: Option<Attempt> = None;
    let mut start = 0u64;
    while start < max_attempts {
        let end = (start + batch).min(max_attempts);
        let results = backend.map_range(start..end, evaluate);
        for attempt in results {
            let attempt = attempt?;
            if attempt.flags.targets_met() {
                return accept(attempt, seed, threshold, params.gamma, check_hn);
            }
            if best.as_ref().is_none_or(|b| attempt.score() > b.score()) {
                best = Some(attempt);
            }
        }
        start = end;
    }
    let best = best.expect("max_attempts >= 1");
    Ok(SearchResult {
        graph: best.graph,
        summary: best.summary,
        attempts: max_attempts,
        attempt_index: best.index,
        seed,
        distance_threshold: threshold,
        satisfied: SatisfiedFlags::default(),
        reverification: None,
    })
}

pub(crate) fn contains_hn(c: &ConstraintSpec) -> bool {
    match c {
        ConstraintSpec::Hn => true,
        ConstraintSpec::And { of } => of.iter().any(contains_hn),
        _ => false,
    }
}

fn accept(
    attempt: Attempt,
    seed: u64,
    threshold: usize,
    gamma: f64,
    check_hn: bool,
) -> Result<SearchResult> {
    let check = reverify(&attempt.graph, threshold, gamma, check_hn)?;
    if !check.all_ok() || check.min_distance != attempt.summary.min_distance {
        return Err(Error::Validation(format!(
            "independent re-verification disagrees with the search on attempt {}: {check:?}",
            attempt.index
        )));
    }
    let mut flags = attempt.flags;
    flags.verified = true;
    Ok(SearchResult {
        graph: attempt.graph,
        summary: attempt.summary,
        attempts: attempt.index + 1,
        attempt_index: attempt.index,
        seed,
        distance_threshold: threshold,
        satisfied: flags,
        reverification: Some(check),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuous_targets_accept_immediately() {
        let params = ModelParams {
            n: 12,
            epsilon: 0.5,
            p: 0.3,
            delta: 0.0,
            gamma: 0.0,
            ..Default::default()
        };
        let r = rejection_search(&params, &ConstraintSpec::Always, 4, 50).unwrap();
        assert!(r.is_satisfied());
        assert_eq!(r.distance_threshold, 1);
        // only a trivial code can be rejected here
        if r.attempts > 1 {
            for i in 0..r.attempt_index {
                let g = crate::bipartite::sample_bipartite(&params, derive_seed(4, i)).unwrap();
                assert_eq!(code_from_graph(&g).dimension(), 0);
            }
        }
    }

    #[test]
    fn zero_edge_probability_never_accepts() {
        let params = ModelParams {
            n: 16,
            epsilon: 0.7,
            p: 0.0,
            delta: 0.125,
            gamma: 0.0,
            ..Default::default()
        };
        let r = rejection_search(&params, &ConstraintSpec::Always, 1, 20).unwrap();
        assert!(!r.is_satisfied());
        assert_eq!(r.attempts, 20);
        assert_eq!(r.summary.min_distance, Some(1));
        assert!(r.reverification.is_none());
    }

    #[test]
    fn deterministic_across_backends() {
        let params = ModelParams {
            n: 20,
            epsilon: 0.7,
            p: 0.25,
            delta: 0.1,
            gamma: 0.2,
            ..Default::default()
        };
        let a = rejection_search_with(
            Backend::Sequential,
            &params,
            &ConstraintSpec::Always,
            9,
            300,
        )
        .unwrap();
        let b = rejection_search_with(Backend::Parallel, &params, &ConstraintSpec::Always, 9, 300)
            .unwrap();
        assert_eq!(a, b);
        let c = rejection_search_with(Backend::Parallel, &params, &ConstraintSpec::Always, 9, 300)
            .unwrap();
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            serde_json::to_string(&c).unwrap()
        );
    }

    #[test]
    fn accepted_result_meets_targets() {
        let params = ModelParams {
            n: 24,
            epsilon: 0.7,
            p: 0.25,
            delta: 0.125,
            gamma: 0.3,
            ..Default::default()
        };
        let r = rejection_search(&params, &ConstraintSpec::Always, 2024, 500).unwrap();
        assert!(r.is_satisfied(), "{:?}", r.summary);
        assert!(r.summary.min_distance.unwrap() >= 4);
        assert!(r.summary.diversity_index >= 0.3);
        assert!(r.summary.rate >= 1.0 - 17.0 / 24.0);
    }

    #[test]
    fn parameter_errors() {
        let ok = ModelParams::default();
        let hn = ConstraintSpec::Hn;
        assert!(matches!(
            rejection_search(
                &ModelParams {
                    epsilon: 0.4,
                    delta: 0.125,
                    ..ok.clone()
                },
                &hn,
                0,
                10
            ),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            rejection_search(
                &ModelParams {
                    n: 64,
                    epsilon: 0.6,
                    ..ok.clone()
                },
                &hn,
                0,
                10
            ),
            Err(Error::SizeCap { .. })
        ));
        assert!(matches!(
            rejection_search(
                &ModelParams {
                    n: 16,
                    epsilon: 0.25,
                    delta: 0.01,
                    ..ok.clone()
                },
                &hn,
                0,
                10
            ),
            Err(Error::Precondition(_))
        ));
        assert!(rejection_search(&ok, &hn, 0, 0).is_err());
    }
}
