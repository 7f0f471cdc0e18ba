//! Exact maximum stable set by branch and bound.
//!
//! The search keeps the candidate set as a bitset. At each node it takes
//! every vertex of candidate-degree at most one (always safe), solves a
//! 2-regular remainder directly as disjoint cycles, and otherwise branches on
//! the candidate of maximum degree (lowest index on ties): first with it in
//! the set, then without it. A greedy clique cover of the candidates bounds
//! the stable sets still reachable and prunes the node when it cannot beat
//! the incumbent.

use std::sync::atomic::{AtomicUsize, Ordering};

use super::graph::SimpleGraph;
use crate::error::{Error, Result};
use crate::exec::Backend;

/// Default limit on the number of vertices handed to the solver.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;

/// Depth of the branching tree expanded up front to produce parallel tasks.
const SPLIT_DEPTH: usize = 6;

type Set = Vec<u64>;

fn contains(s: &[u64], v: usize) -> bool {
    s[v / 64] >> (v % 64) & 1 == 1
}

fn remove(s: &mut [u64], v: usize) {
    s[v / 64] &= !(1u64 << (v % 64));
}

fn popcount(s: &[u64]) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

fn members(s: &[u64]) -> impl Iterator<Item = usize> + '_ {
    s.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

struct Solver {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

struct Shared {
    best: AtomicUsize,
    /// Stop as soon as `best` reaches this value.
    stop_at: usize,
}

impl Shared {
    fn best(&self) -> usize {
        self.best.load(Ordering::Relaxed)
    }

    fn offer(&self, size: usize) {
        self.best.fetch_max(size, Ordering::Relaxed);
    }

    fn done(&self) -> bool {
        self.best() >= self.stop_at
    }
}

enum Step {
    Finished,
    Branch { vertex: usize },
}

impl Solver {
    fn new(g: &SimpleGraph) -> Self {
        let n = g.n();
        let words = n.div_ceil(64);
        let mut adj = vec![0u64; n * words];
        for u in 0..n {
            for &v in g.neighbors(u) {
                adj[u * words + v / 64] |= 1 << (v % 64);
            }
        }
        Solver { n, words, adj }
    }

    fn nbr(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn full(&self) -> Set {
        let mut s = vec![!0u64; self.words];
        if !self.n.is_multiple_of(64) {
            s[self.words - 1] = (1u64 << (self.n % 64)) - 1;
        }
        s
    }

    /// Removes `v` and its neighbours from `cand`.
    fn take(&self, cand: &mut [u64], v: usize) {
        for (c, a) in cand.iter_mut().zip(self.nbr(v)) {
            *c &= !a;
        }
        remove(cand, v);
    }

    /// Greedy stable set: repeatedly take a vertex of minimum candidate
    /// degree.
    fn greedy(&self, mut cand: Set) -> usize {
        let mut size = 0;
        while let Some(v) = members(&cand).min_by_key(|&v| (and_count(self.nbr(v), &cand), v)) {
            self.take(&mut cand, v);
            size += 1;
        }
        size
    }

    /// Number of cliques in a greedy partition of `cand`; an upper bound on
    /// its independence number.
    fn clique_cover(&self, cand: &[u64]) -> usize {
        // each clique keeps the candidates adjacent to all of its members
        let mut joinable: Vec<Set> = Vec::new();
        for v in members(cand) {
            match joinable.iter_mut().find(|j| contains(j, v)) {
                Some(j) => {
                    for (x, a) in j.iter_mut().zip(self.nbr(v)) {
                        *x &= a;
                    }
                }
                None => {
                    let j: Set = self.nbr(v).iter().zip(cand).map(|(a, c)| a & c).collect();
                    joinable.push(j);
                }
            }
        }
        joinable.len()
    }

    /// Independence number of a graph whose every vertex has degree two:
    /// a disjoint union of cycles.
    fn cycles_alpha(&self, cand: &[u64]) -> usize {
        let mut left: Set = cand.to_vec();
        let mut total = 0;
        loop {
            let Some(start) = members(&left).next() else {
                break;
            };
            let mut len = 0;
            let mut stack = vec![start];
            remove(&mut left, start);
            while let Some(u) = stack.pop() {
                len += 1;
                let next: Vec<usize> = members(self.nbr(u))
                    .filter(|&w| contains(&left, w))
                    .collect();
                for w in next {
                    remove(&mut left, w);
                    stack.push(w);
                }
            }
            total += len / 2;
        }
        total
    }

    /// Applies reductions and bounds to `(cand, size)` in place. Either the
    /// node is settled or a branching vertex is returned.
    fn reduce(&self, cand: &mut Set, size: &mut usize, sh: &Shared) -> Step {
        loop {
            if sh.done() {
                return Step::Finished;
            }
            let count = popcount(cand);
            if count == 0 {
                sh.offer(*size);
                return Step::Finished;
            }
            if *size + count <= sh.best() {
                return Step::Finished;
            }
            let mut low: Option<usize> = None;
            let mut high = (0usize, usize::MAX);
            for v in members(cand) {
                let d = and_count(self.nbr(v), cand);
                if d <= 1 {
                    low = Some(v);
                    break;
                }
                if d > high.0 {
                    high = (d, v);
                }
            }
            if let Some(v) = low {
                self.take(cand, v);
                *size += 1;
                continue;
            }
            if high.0 == 2 {
                sh.offer(*size + self.cycles_alpha(cand));
                return Step::Finished;
            }
            if *size + self.clique_cover(cand) <= sh.best() {
                return Step::Finished;
            }
            return Step::Branch { vertex: high.1 };
        }
    }

    fn expand(&self, mut cand: Set, mut size: usize, sh: &Shared) {
        while let Step::Branch { vertex } = self.reduce(&mut cand, &mut size, sh) {
            let mut with = cand.clone();
            self.take(&mut with, vertex);
            self.expand(with, size + 1, sh);
            remove(&mut cand, vertex);
        }
    }

    /// Expands the top of the tree into independent subproblems.
    fn split(
        &self,
        cand: Set,
        size: usize,
        depth: usize,
        sh: &Shared,
        out: &mut Vec<(Set, usize)>,
    ) {
        if depth == 0 {
            out.push((cand, size));
            return;
        }
        let (mut cand, mut size) = (cand, size);
        if let Step::Branch { vertex } = self.reduce(&mut cand, &mut size, sh) {
            let mut with = cand.clone();
            self.take(&mut with, vertex);
            self.split(with, size + 1, depth - 1, sh, out);
            remove(&mut cand, vertex);
            self.split(cand, size, depth - 1, sh, out);
        }
    }

    /// Largest stable set size within `cand`, or any value `>= stop_at` once
    /// one of that size is found. Never below `floor`.
    fn run(&self, backend: Backend, cand: Set, floor: usize, stop_at: usize) -> usize {
        let sh = Shared {
            best: AtomicUsize::new(floor),
            stop_at,
        };
        if !sh.done() {
            sh.offer(self.greedy(cand.clone()));
        }
        if backend.is_parallel() {
            let mut tasks = Vec::new();
            self.split(cand, 0, SPLIT_DEPTH, &sh, &mut tasks);
            backend.map_slice(&tasks, |(c, s)| self.expand(c.clone(), *s, &sh));
        } else {
            self.expand(cand, 0, &sh);
        }
        sh.best()
    }
}

fn check_cap(g: &SimpleGraph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::SizeCap {
            what: "solver vertex count",
            size: g.n() as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// Exact independence number under the default cap and backend.
pub fn alpha_exact<G: AsRef<SimpleGraph>>(g: &G) -> Result<usize> {
    alpha_exact_with(g.as_ref(), Backend::default(), DEFAULT_VERTEX_CAP)
}

pub fn alpha_exact_with(g: &SimpleGraph, backend: Backend, cap: usize) -> Result<usize> {
    check_cap(g, cap)?;
    let s = Solver::new(g);
    Ok(s.run(backend, s.full(), 0, usize::MAX))
}

/// The lexicographically smallest maximum stable set, ascending.
pub fn maximum_stable_set<G: AsRef<SimpleGraph>>(g: &G) -> Result<Vec<usize>> {
    maximum_stable_set_with(g.as_ref(), Backend::default(), DEFAULT_VERTEX_CAP)
}

/// Computes `alpha`, then fixes vertices in ascending order: `v` joins the
/// witness when the candidates left after taking it still hold enough
/// vertices to complete a maximum stable set. The result is independent of
/// the backend and of the search order.
pub fn maximum_stable_set_with(
    g: &SimpleGraph,
    backend: Backend,
    cap: usize,
) -> Result<Vec<usize>> {
    check_cap(g, cap)?;
    let s = Solver::new(g);
    let alpha = s.run(backend, s.full(), 0, usize::MAX);
    let mut chosen = Vec::with_capacity(alpha);
    let mut cand = s.full();
    for v in 0..s.n {
        if chosen.len() == alpha {
            break;
        }
        if !contains(&cand, v) {
            continue;
        }
        let need = alpha - chosen.len() - 1;
        let mut with = cand.clone();
        s.take(&mut with, v);
        if need == 0 || s.run(backend, with.clone(), 0, need) >= need {
            chosen.push(v);
            cand = with;
        } else {
            remove(&mut cand, v);
        }
    }
    debug_assert_eq!(chosen.len(), alpha);
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive search over all vertex subsets, lexicographically smallest
    /// optimum.
    fn brute_force(g: &SimpleGraph) -> (usize, Vec<usize>) {
        let n = g.n();
        let mut best: (usize, Vec<usize>) = (0, vec![]);
        for mask in 0u32..1 << n {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if set.len() >= best.0 && g.is_stable(&set) && (set.len() > best.0 || set < best.1) {
                best = (set.len(), set);
            }
        }
        best
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        SimpleGraph::new(n, &edges).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(alpha_exact(&SimpleGraph::cycle(5).unwrap()).unwrap(), 2);
        assert_eq!(alpha_exact(&SimpleGraph::cycle(7).unwrap()).unwrap(), 3);
        assert_eq!(alpha_exact(&SimpleGraph::complete(6).unwrap()).unwrap(), 1);
        assert_eq!(alpha_exact(&SimpleGraph::path(4).unwrap()).unwrap(), 2);
        assert_eq!(alpha_exact(&SimpleGraph::new(3, &[]).unwrap()).unwrap(), 3);
        assert_eq!(
            maximum_stable_set(&SimpleGraph::cycle(5).unwrap()).unwrap(),
            vec![0, 2]
        );
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=14);
            let p = rng.gen_range(0.05..0.8);
            let g = random_graph(&mut rng, n, p);
            let (alpha, witness) = brute_force(&g);
            for backend in [Backend::Sequential, Backend::Parallel] {
                assert_eq!(alpha_exact_with(&g, backend, 100).unwrap(), alpha);
                assert_eq!(maximum_stable_set_with(&g, backend, 100).unwrap(), witness);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = SimpleGraph::cycle(10).unwrap();
        assert!(matches!(
            alpha_exact_with(&g, Backend::Sequential, 9),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn larger_sparse_graphs() {
        assert_eq!(alpha_exact(&SimpleGraph::cycle(101).unwrap()).unwrap(), 50);
        assert_eq!(alpha_exact(&SimpleGraph::path(101).unwrap()).unwrap(), 51);
        assert_eq!(
            alpha_exact(&SimpleGraph::complete_bipartite(30, 45).unwrap()).unwrap(),
            45
        );
    }
}
