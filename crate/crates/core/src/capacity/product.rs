use serde::{Deserialize, Serialize};

use super::graph::SimpleGraph;
use super::mis::DEFAULT_VERTEX_CAP;
use crate::error::{Error, Result};

/// `G(r, k)`: vertex set `V^r`, with distinct tuples adjacent when every
/// coordinate pair lies in a closed neighbourhood of the base graph and at
/// most `k` coordinates differ. `k = r` is the strong power, `k = 1` the
/// Cartesian power.
///
/// Tuples are numbered in mixed radix `n` with coordinate 0 most
/// significant, so vertex order is lexicographic tuple order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductGraph {
    pub base: SimpleGraph,
    pub r: usize,
    pub k: usize,
    pub graph: SimpleGraph,
}

impl AsRef<SimpleGraph> for SimpleGraph {
    fn as_ref(&self) -> &SimpleGraph {
        self
    }
}

impl AsRef<SimpleGraph> for ProductGraph {
    fn as_ref(&self) -> &SimpleGraph {
        &self.graph
    }
}

impl ProductGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    pub fn tuple(&self, index: usize) -> Vec<usize> {
        index_to_tuple(self.base.n(), self.r, index)
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple_to_index(self.base.n(), tuple)
    }
}

pub(crate) fn index_to_tuple(n: usize, r: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; r];
    for slot in t.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    t
}

pub(crate) fn tuple_to_index(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

/// `n^r`, refused when above `cap`.
pub(crate) fn power_size(n: usize, r: usize, cap: usize) -> Result<usize> {
    let size = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::SizeCap {
            what: "product vertex count",
            size,
            cap: cap as u128,
        });
    }
    Ok(size as usize)
}

pub fn restricted_power(g: &SimpleGraph, r: usize, k: usize) -> Result<ProductGraph> {
    restricted_power_capped(g, r, k, DEFAULT_VERTEX_CAP)
}

pub fn restricted_power_capped(
    g: &SimpleGraph,
    r: usize,
    k: usize,
    cap: usize,
) -> Result<ProductGraph> {
    if r == 0 {
        return Err(Error::Domain("product order r must be at least 1".into()));
    }
    if k > r {
        return Err(Error::Domain(format!(
            "difference budget k = {k} exceeds r = {r}"
        )));
    }
    let n = g.n();
    let size = power_size(n, r, cap)?;
    let closed: Vec<Vec<usize>> = (0..n).map(|v| g.closed_neighbourhood(v)).collect();
    let adj = (0..size)
        .map(|index| {
            let v = index_to_tuple(n, r, index);
            let mut out = Vec::new();
            neighbours_rec(&closed, &v, k, 0, 0, 0, &mut out);
            out.retain(|&u| u != index);
            out
        })
        .collect();
    Ok(ProductGraph {
        base: g.clone(),
        r,
        k,
        graph: SimpleGraph::from_sorted_adjacency(adj),
    })
}

// Depth-first over coordinates in order, so indices come out sorted.
fn neighbours_rec(
    closed: &[Vec<usize>],
    v: &[usize],
    budget: usize,
    pos: usize,
    prefix: usize,
    used: usize,
    out: &mut Vec<usize>,
) {
    if pos == v.len() {
        out.push(prefix);
        return;
    }
    let n = closed.len();
    for &x in &closed[v[pos]] {
        let used = used + usize::from(x != v[pos]);
        if used <= budget {
            neighbours_rec(closed, v, budget, pos + 1, prefix * n + x, used, out);
        }
    }
}

/// Size of the closed ball around tuple `v` in `G(r, k)`, counted by testing
/// every tuple of `V^r` against the adjacency rule.
pub fn ball_size_exact(g: &SimpleGraph, r: usize, k: usize, v: &[usize]) -> Result<usize> {
    if v.len() != r {
        return Err(Error::Dimension {
            expected: r,
            actual: v.len(),
        });
    }
    if let Some(&bad) = v.iter().find(|&&x| x >= g.n()) {
        return Err(Error::Domain(format!("tuple entry {bad} is not a vertex")));
    }
    let n = g.n();
    let size = power_size(n, r, DEFAULT_VERTEX_CAP)?;
    Ok((0..size)
        .filter(|&index| {
            let u = index_to_tuple(n, r, index);
            let mut diff = 0;
            u.iter().zip(v).all(|(&a, &b)| {
                if a != b {
                    diff += 1;
                }
                a == b || g.adjacent(a, b)
            }) && diff <= k
        })
        .count())
}

/// `sum_{j=0}^{k} C(r, j) d_av^j`: the mean closed-ball size over a uniform
/// tuple.
pub fn expected_ball_size(g: &SimpleGraph, r: usize, k: usize) -> f64 {
    let (d_av, _) = super::graph::degree_stats(g);
    let mut binom = 1.0;
    let mut total = 0.0;
    for j in 0..=k.min(r) {
        total += binom * d_av.powi(j as i32);
        binom = binom * (r - j) as f64 / (j + 1) as f64;
    }
    total
}
