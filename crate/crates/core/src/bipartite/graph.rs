use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::gf2core::{BitMatrix, LinearCode};

/// Bipartite graph between codeword nodes `a_1..a_n` (left) and parity
/// nodes `b_1..b_m` (right).
///
/// Row `j` of the biadjacency matrix is the neighbourhood `R_j` of `b_j`;
/// column `i` is the neighbourhood `N_i` of `a_i`. Indices are zero-based, so
/// `b_j` is row `j - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BitMatrix", into = "BitMatrix")]
pub struct BipartiteGraph {
    biadjacency: BitMatrix,
}

impl BipartiteGraph {
    pub fn new(biadjacency: BitMatrix) -> Result<Self> {
        if biadjacency.rows() == 0 {
            return Err(Error::Domain(
                "bipartite graph needs at least one right node".into(),
            ));
        }
        Ok(BipartiteGraph { biadjacency })
    }

    pub fn empty(n_left: usize, n_right: usize) -> Result<Self> {
        BipartiteGraph::new(BitMatrix::zeros(n_right, n_left)?)
    }

    pub fn n_left(&self) -> usize {
        self.biadjacency.cols()
    }

    pub fn n_right(&self) -> usize {
        self.biadjacency.rows()
    }

    pub fn biadjacency(&self) -> &BitMatrix {
        &self.biadjacency
    }

    /// Whether left node `left` and right node `right` (both zero-based) are
    /// joined.
    pub fn has_edge(&self, right: usize, left: usize) -> bool {
        self.biadjacency.get(right, left)
    }

    pub fn add_edge(&mut self, right: usize, left: usize) {
        self.biadjacency.set(right, left, true);
    }

    pub fn edge_count(&self) -> usize {
        self.biadjacency.count_ones()
    }

    /// `R_j`, left neighbours of right node `j`.
    pub fn right_neighbourhood(&self, j: usize) -> Vec<usize> {
        self.biadjacency.row(j).support()
    }

    /// `N_i`, right neighbours of left node `i`.
    pub fn left_neighbourhood(&self, i: usize) -> Vec<usize> {
        (0..self.n_right())
            .filter(|&j| self.has_edge(j, i))
            .collect()
    }

    pub fn to_text(&self) -> String {
        self.biadjacency.to_text()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        BipartiteGraph::new(BitMatrix::parse_text(text)?)
    }
}

impl TryFrom<BitMatrix> for BipartiteGraph {
    type Error = Error;

    fn try_from(m: BitMatrix) -> Result<Self> {
        BipartiteGraph::new(m)
    }
}

impl From<BipartiteGraph> for BitMatrix {
    fn from(g: BipartiteGraph) -> Self {
        g.biadjacency
    }
}

/// Samples the ensemble graph: `n` left nodes, `m = ceil(epsilon n)` right
/// nodes, each of the `n m` edges present independently with probability `p`.
///
/// Draws come from ChaCha8 seeded with `seed`, one uniform `f64` per entry in
/// row-major order; an edge is present when the draw is below `p`. The same
/// `(params, seed)` gives the same graph on every platform.
pub fn sample_bipartite(params: &ModelParams, seed: u64) -> Result<BipartiteGraph> {
    sample_bipartite_forcing(params, seed, &[])
}

/// Like [`sample_bipartite`], then sets every `(right, left)` pair in
/// `forced`. Since edges are independent this samples the ensemble
/// conditioned on the forced edges being present.
pub fn sample_bipartite_forcing(
    params: &ModelParams,
    seed: u64,
    forced: &[(usize, usize)],
) -> Result<BipartiteGraph> {
    params.validate_shape()?;
    let (n, m) = (params.n, params.m());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = BitMatrix::zeros(m, n)?;
    for j in 0..m {
        for i in 0..n {
            if rng.gen::<f64>() < params.p {
                adj.set(j, i, true);
            }
        }
    }
    for &(j, i) in forced {
        if j >= m || i >= n {
            return Err(Error::Precondition(format!(
                "forced edge (b_{}, a_{}) outside a {m} x {n} graph",
                j + 1,
                i + 1
            )));
        }
        adj.set(j, i, true);
    }
    BipartiteGraph::new(adj)
}

/// The parity-check code whose checks are the right nodes: a word is a
/// codeword iff it has even overlap with every `R_j`.
pub fn code_from_graph(g: &BipartiteGraph) -> LinearCode {
    LinearCode::new(g.biadjacency.clone())
}

/// `min #(R_x \ R_y) / #R_x` over ordered pairs `x != y` with `R_x`
/// nonempty; 1 when no pair qualifies.
pub fn diversity_index(g: &BipartiteGraph) -> Result<f64> {
    let m = g.n_right();
    if m < 2 {
        return Err(Error::DegenerateInput(format!(
            "diversity index needs at least two right nodes, graph has {m}"
        )));
    }
    let adj = &g.biadjacency;
    let sizes: Vec<usize> = (0..m).map(|j| adj.row_weight(j)).collect();
    let mut best = 1.0f64;
    for (x, &size) in sizes.iter().enumerate() {
        if size == 0 {
            continue;
        }
        let rx = adj.row_blocks(x);
        let max_overlap = (0..m)
            .filter(|&y| y != x)
            .map(|y| {
                rx.iter()
                    .zip(adj.row_blocks(y))
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum::<usize>()
            })
            .max()
            .unwrap_or(0);
        best = best.min((size - max_overlap) as f64 / size as f64);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::verify::naive_diversity_index;
    use crate::gf2core::BitWord;

    fn graph(n: usize, rows: &[&[usize]]) -> BipartiteGraph {
        let mut g = BipartiteGraph::empty(n, rows.len()).unwrap();
        for (j, r) in rows.iter().enumerate() {
            for &i in *r {
                g.add_edge(j, i);
            }
        }
        g
    }

    #[test]
    fn degenerate_probabilities() {
        let base = ModelParams {
            n: 10,
            epsilon: 0.5,
            ..Default::default()
        };
        let g = sample_bipartite(
            &ModelParams {
                p: 0.0,
                ..base.clone()
            },
            3,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = sample_bipartite(&ModelParams { p: 1.0, ..base }, 3).unwrap();
        assert_eq!(g.edge_count(), 50);
    }

    #[test]
    fn right_node_count() {
        let params = ModelParams {
            n: 6,
            epsilon: 0.5,
            p: 0.3,
            ..Default::default()
        };
        let g = sample_bipartite(&params, 99).unwrap();
        assert_eq!((g.n_left(), g.n_right()), (6, 3));
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let params = ModelParams::default();
        let a = sample_bipartite(&params, 5).unwrap();
        assert_eq!(a, sample_bipartite(&params, 5).unwrap());
        assert_ne!(a, sample_bipartite(&params, 6).unwrap());
    }

    #[test]
    fn forced_edges_are_present() {
        let params = ModelParams {
            n: 8,
            epsilon: 0.5,
            p: 0.0,
            ..Default::default()
        };
        let g = sample_bipartite_forcing(&params, 1, &[(0, 1), (3, 7)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(3, 7));
        assert!(sample_bipartite_forcing(&params, 1, &[(4, 0)]).is_err());
    }

    #[test]
    fn code_from_graph_examples() {
        let empty = BipartiteGraph::empty(3, 2).unwrap();
        assert_eq!(code_from_graph(&empty).codewords().unwrap().len(), 8);

        let all = graph(4, &[&[0, 1, 2, 3]]);
        for w in code_from_graph(&all).codewords().unwrap() {
            assert_eq!(w.weight() % 2, 0);
        }
        assert_eq!(code_from_graph(&all).dimension(), 3);

        let g = graph(3, &[&[0, 1], &[1, 2]]);
        let mut words: Vec<String> = code_from_graph(&g)
            .codewords()
            .unwrap()
            .iter()
            .map(BitWord::to_string)
            .collect();
        words.sort();
        assert_eq!(words, ["000", "111"]);
    }

    #[test]
    fn diversity_examples() {
        assert_eq!(
            diversity_index(&graph(4, &[&[0, 1], &[2, 3]])).unwrap(),
            1.0
        );
        assert_eq!(diversity_index(&graph(4, &[&[0], &[0, 1]])).unwrap(), 0.0);
        // R_1 = {a1, a2, a3}, R_2 = {a3, a4}
        assert_eq!(
            diversity_index(&graph(4, &[&[0, 1, 2], &[2, 3]])).unwrap(),
            0.5
        );
        // all-empty neighbourhoods: every pair is vacuous
        assert_eq!(
            diversity_index(&BipartiteGraph::empty(4, 3).unwrap()).unwrap(),
            1.0
        );
        assert!(matches!(
            diversity_index(&BipartiteGraph::empty(4, 1).unwrap()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn diversity_matches_naive_on_random_graphs() {
        for seed in 0..100 {
            let params = ModelParams {
                n: 10 + (seed as usize % 70),
                epsilon: 0.4,
                p: 0.1 + 0.003 * seed as f64,
                ..Default::default()
            };
            let g = sample_bipartite(&params, seed).unwrap();
            assert_eq!(
                diversity_index(&g).unwrap(),
                naive_diversity_index(&g).unwrap()
            );
        }
    }

    #[test]
    fn rate_is_at_least_one_minus_m_over_n() {
        for seed in 0..50 {
            let params = ModelParams {
                n: 30,
                epsilon: 0.6,
                p: 0.2,
                ..Default::default()
            };
            let g = sample_bipartite(&params, seed).unwrap();
            let (rate, _) = code_from_graph(&g).rate_and_redundancy();
            assert!(rate >= 1.0 - params.m() as f64 / params.n as f64 - 1e-12);
        }
    }

    #[test]
    fn text_round_trip() {
        let g = sample_bipartite(&ModelParams::default(), 17).unwrap();
        assert_eq!(BipartiteGraph::parse_text(&g.to_text()).unwrap(), g);
        assert!(BipartiteGraph::parse_text("0 3\n").is_err());
    }
}
