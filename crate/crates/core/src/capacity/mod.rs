//! Fractional graph capacity.
//!
//! Restricted powers `G(r, k)`, an exact independence-number solver,
//! finite-order capacity certificates, and the closed-form lower/upper
//! sandwich for the `gamma`-fractional capacity of a connected graph.

mod bounds;
mod certificate;
mod graph;
mod io;
mod mis;
mod product;
mod registry;

pub use bounds::{
    capacity_bounds, f_bound, CapacityReport, Certificate, CertificateCheck, LowerTerms,
    ThetaSource, BOUND_TOLERANCE,
};
pub use certificate::{
    capacity_certificate, capacity_certificate_with, difference_budget, min_order, recursion_check,
    recursion_terms, RecursionCheck,
};
pub use graph::{degree_stats, SimpleGraph};
pub use io::{
    detect_format, parse_dimacs, parse_edge_list, parse_graph, parse_graph_file, to_dimacs,
    to_edge_list, GraphFormat,
};
pub use mis::{
    alpha_exact, alpha_exact_with, maximum_stable_set, maximum_stable_set_with, DEFAULT_VERTEX_CAP,
};
pub use product::{
    ball_size_exact, expected_ball_size, restricted_power, restricted_power_capped, ProductGraph,
};
pub use registry::capacity_registry_lookup;
