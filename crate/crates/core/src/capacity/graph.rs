use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected graph on vertices `0..n` without loops or multi-edges.
/// Neighbour lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds a graph from an edge list, rejecting loops, duplicates (in
    /// either orientation) and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("graph needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Validation(format!("duplicate edge ({u}, {})", w[0])));
            }
        }
        Ok(SimpleGraph { adj })
    }

    /// Trusted constructor for adjacency built by this crate: lists must be
    /// sorted, symmetric and loop-free.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(u, l)| { l.windows(2).all(|w| w[0] < w[1]) && !l.contains(&u) }));
        SimpleGraph { adj }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Validation(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        SimpleGraph::new(n, &edges)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let edges: Vec<_> = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        SimpleGraph::new(a + b, &edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// `N[v]`: neighbours of `v` together with `v`, sorted.
    pub fn closed_neighbourhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let pos = out.partition_point(|&u| u < v);
        out.insert(pos, v);
        out
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None::<bool>; self.n()];
        for start in 0..self.n() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let s = side[u].expect("visited");
                for &v in &self.adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!s);
                            queue.push_back(v);
                        }
                        Some(t) if t == s => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.adjacent(u, v)).collect())
            .collect();
        SimpleGraph::from_sorted_adjacency(adj)
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|l| l.len() + 1 == self.n())
    }

    /// Whether `set` is pairwise non-adjacent.
    pub fn is_stable(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }
}

/// Average and maximum degree.
pub fn degree_stats(g: &SimpleGraph) -> (f64, usize) {
    let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
    let max = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    (total as f64 / g.n() as f64, max)
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<SimpleGraph> for GraphRepr {
    fn from(g: SimpleGraph) -> Self {
        GraphRepr {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphRepr> for SimpleGraph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        SimpleGraph::new(r.n, &r.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_stats_examples() {
        assert_eq!(degree_stats(&SimpleGraph::cycle(5).unwrap()), (2.0, 2));
        assert_eq!(
            degree_stats(&SimpleGraph::complete_bipartite(1, 3).unwrap()),
            (1.5, 3)
        );
        assert_eq!(degree_stats(&SimpleGraph::complete(4).unwrap()), (3.0, 3));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            SimpleGraph::new(3, &[(1, 1)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            SimpleGraph::new(3, &[(0, 1), (1, 0)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            SimpleGraph::new(3, &[(0, 3)]),
            Err(Error::Validation(_))
        ));
        assert!(SimpleGraph::new(0, &[]).is_err());
    }

    #[test]
    fn structure_queries() {
        let c5 = SimpleGraph::cycle(5).unwrap();
        assert!(c5.is_connected());
        assert!(!c5.is_bipartite());
        assert!(SimpleGraph::cycle(6).unwrap().is_bipartite());
        assert!(!SimpleGraph::new(4, &[(0, 1), (2, 3)])
            .unwrap()
            .is_connected());
        assert_eq!(c5.closed_neighbourhood(0), vec![0, 1, 4]);
        assert_eq!(c5.complement().edge_count(), 5);
        assert!(SimpleGraph::complete(4).unwrap().is_complete());
        assert!(c5.is_stable(&[0, 2]));
        assert!(!c5.is_stable(&[0, 1]));
        let json = serde_json::to_string(&c5).unwrap();
        assert_eq!(serde_json::from_str::<SimpleGraph>(&json).unwrap(), c5);
    }
}
