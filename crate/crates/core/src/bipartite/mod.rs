//! The random bipartite-graph code ensemble.
//!
//! Left nodes are codeword positions, right nodes are parity checks, and each
//! edge is present independently with probability `p`. This module samples
//! the ensemble, measures the diversity index and graph constraints of a
//! sample, evaluates the closed-form probability bounds, and runs seeded
//! rejection searches and Monte Carlo estimates over it.

mod bounds;
mod constraint;
mod graph;
mod montecarlo;
mod params;
mod search;
pub mod verify;

pub use bounds::{
    beta, bound_delta0, bound_e_div, bound_e_low_failure, bound_e_up, bounds_report, choose_t,
    parity_even_prob, step1_gamma, BoundsReport, ProbabilityBound,
};
pub use constraint::{
    builtin_predicate, check_constraint, hn_exact_probability, hn_required_edges, ConstraintSpec,
    Predicate, BUILTIN_PREDICATES,
};
pub use graph::{
    code_from_graph, diversity_index, sample_bipartite, sample_bipartite_forcing, BipartiteGraph,
};
pub use montecarlo::{
    monte_carlo_event, monte_carlo_event_with, wilson_interval, McEstimate, McEvent, MIN_TRIALS,
    Z_95,
};
pub use params::ModelParams;
pub(crate) use search::contains_hn;
pub use search::{
    rejection_search, rejection_search_with, CodeSummary, SatisfiedFlags, SearchResult,
};
