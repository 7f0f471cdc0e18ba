//! Deliberately naive re-implementations of the acceptance properties.
//!
//! None of these share code with the fast paths they check: no packed-row
//! popcounts, no Gray-code walk, no precomputed edge lists.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::constraint::isqrt;
use super::graph::BipartiteGraph;
use crate::error::{Error, Result};

/// Neighbourhood `R_j` rebuilt by scanning single entries.
fn neighbourhood(g: &BipartiteGraph, j: usize) -> BTreeSet<usize> {
    (0..g.n_left())
        .filter(|&i| g.biadjacency().get(j, i))
        .collect()
}

/// Diversity index by explicit set differences over all ordered pairs.
pub fn naive_diversity_index(g: &BipartiteGraph) -> Result<f64> {
    if g.n_right() < 2 {
        return Err(Error::DegenerateInput("fewer than two right nodes".into()));
    }
    let sets: Vec<BTreeSet<usize>> = (0..g.n_right()).map(|j| neighbourhood(g, j)).collect();
    let mut best = 1.0f64;
    for (x, rx) in sets.iter().enumerate() {
        for (y, ry) in sets.iter().enumerate() {
            if x == y || rx.is_empty() {
                continue;
            }
            let diff = rx.difference(ry).count();
            best = best.min(diff as f64 / rx.len() as f64);
        }
    }
    Ok(best)
}

/// The `hn` predicate by direct lookup of each required edge.
pub fn naive_hn(g: &BipartiteGraph) -> bool {
    let root = isqrt(g.n_left());
    if g.n_right() < root + 1 {
        return false;
    }
    // a_i is column i-1, b_j is row j-1
    (2..=root).all(|i| g.has_edge(i - 2, i - 1) && g.has_edge(i, i - 1))
}

/// Codewords of the graph code found by enumerating the nullspace and then
/// re-checking every parity `XOR_{i in R_j} c_i = 0` bit by bit; minimum
/// weight of the nonzero ones. `None` for the trivial code.
pub fn naive_min_distance(g: &BipartiteGraph) -> Result<Option<usize>> {
    let words = g.biadjacency().nullspace_enumerate()?;
    let sets: Vec<BTreeSet<usize>> = (0..g.n_right()).map(|j| neighbourhood(g, j)).collect();
    let mut best: Option<usize> = None;
    for w in &words {
        for r in &sets {
            let parity = r.iter().filter(|&&i| w.get(i)).count() % 2;
            if parity != 0 {
                return Err(Error::Validation(format!(
                    "enumerated word {w} violates a check"
                )));
            }
        }
        let weight = (0..w.len()).filter(|&i| w.get(i)).count();
        if weight > 0 {
            best = Some(best.map_or(weight, |b| b.min(weight)));
        }
    }
    Ok(best)
}

/// Outcome of independently re-checking an accepted graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reverification {
    pub min_distance: Option<usize>,
    pub distance_ok: bool,
    pub diversity_index: f64,
    pub diversity_ok: bool,
    pub hn_checked: bool,
    pub hn_ok: bool,
    pub rate: f64,
    pub rate_ok: bool,
}

impl Reverification {
    pub fn all_ok(&self) -> bool {
        self.distance_ok && self.diversity_ok && self.hn_ok && self.rate_ok
    }
}

/// Re-verifies distance threshold, diversity target, the `hn` predicate when
/// `check_hn` is set, and `rate >= 1 - m/n` with the naive checkers. The
/// rate comes from the enumerated codeword count.
pub fn reverify(
    g: &BipartiteGraph,
    distance_threshold: usize,
    gamma: f64,
    check_hn: bool,
) -> Result<Reverification> {
    let min_distance = naive_min_distance(g)?;
    let diversity_index = naive_diversity_index(g)?;
    let count = g.biadjacency().nullspace_enumerate()?.len();
    let rate = (count as f64).log2() / g.n_left() as f64;
    let hn_ok = !check_hn || naive_hn(g);
    Ok(Reverification {
        distance_ok: min_distance.is_some_and(|d| d >= distance_threshold),
        min_distance,
        diversity_ok: diversity_index >= gamma,
        diversity_index,
        hn_checked: check_hn,
        hn_ok,
        rate_ok: rate >= 1.0 - g.n_right() as f64 / g.n_left() as f64 - 1e-12,
        rate,
    })
}
