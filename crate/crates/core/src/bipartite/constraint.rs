use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::graph::BipartiteGraph;
use crate::error::{Error, Result};

/// An event on the random bipartite graph that an accepted code's graph must
/// belong to.
///
/// Serialized forms: `{"kind":"always"}`, `{"kind":"hn"}`,
/// `{"kind":"and","of":[...]}` and `{"kind":"predicate","id":"..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConstraintSpec {
    Always,
    /// For every `2 <= i <= floor(sqrt(n))`, both `b_{i-1}` and `b_{i+1}`
    /// are adjacent to `a_i`.
    Hn,
    And {
        of: Vec<ConstraintSpec>,
    },
    /// A named built-in predicate, see [`builtin_predicate`].
    Predicate {
        id: String,
    },
}

pub type Predicate = fn(&BipartiteGraph) -> bool;

/// Names accepted by `{"kind":"predicate"}`.
pub const BUILTIN_PREDICATES: &[&str] = &["no-isolated-left", "no-empty-check"];

pub fn builtin_predicate(id: &str) -> Option<Predicate> {
    match id {
        // every codeword node is covered by at least one check
        "no-isolated-left" => Some(|g| (0..g.n_left()).all(|i| !g.biadjacency().column_is_zero(i))),
        // every check touches at least one codeword node
        "no-empty-check" => Some(|g| (0..g.n_right()).all(|j| g.biadjacency().row_weight(j) > 0)),
        _ => None,
    }
}

/// `floor(sqrt(n))`, exact for every `usize`.
pub(crate) fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// The `(right, left)` edges (zero-based) that the `hn` event requires:
/// `a_i` joined to `b_{i-1}` and `b_{i+1}` for `2 <= i <= floor(sqrt(n))`.
pub fn hn_required_edges(n_left: usize) -> Vec<(usize, usize)> {
    (2..=isqrt(n_left))
        .flat_map(|i| [(i - 2, i - 1), (i, i - 1)])
        .collect()
}

impl ConstraintSpec {
    /// Parses the JSON form, or one of the bare words `always` / `hn`.
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "always" => Ok(ConstraintSpec::Always),
            "hn" => Ok(ConstraintSpec::Hn),
            other => {
                let spec: ConstraintSpec = serde_json::from_str(other)?;
                spec.validate()?;
                Ok(spec)
            }
        }
    }

    /// Rejects unknown predicate identifiers.
    pub fn validate(&self) -> Result<()> {
        match self {
            ConstraintSpec::Always | ConstraintSpec::Hn => Ok(()),
            ConstraintSpec::And { of } => of.iter().try_for_each(ConstraintSpec::validate),
            ConstraintSpec::Predicate { id } => builtin_predicate(id)
                .map(|_| ())
                .ok_or_else(|| Error::UnknownPredicate(id.clone())),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("constraint specs always serialize")
    }

    /// Checks that the event is defined on graphs of the given shape.
    pub fn check_applicable(&self, n_left: usize, n_right: usize) -> Result<()> {
        match self {
            ConstraintSpec::Hn => {
                let need = isqrt(n_left) + 1;
                if n_right < need {
                    return Err(Error::Precondition(format!(
                        "hn needs at least {need} right nodes for {n_left} left nodes, got {n_right}"
                    )));
                }
                Ok(())
            }
            ConstraintSpec::And { of } => of
                .iter()
                .try_for_each(|c| c.check_applicable(n_left, n_right)),
            ConstraintSpec::Always | ConstraintSpec::Predicate { .. } => self.validate(),
        }
    }

    /// Edges every graph in the event must contain, deduplicated and sorted.
    /// Events that are not a pure edge requirement contribute nothing here and
    /// are still checked on the full graph.
    pub fn forced_edges(&self, n_left: usize) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        self.collect_forced(n_left, &mut set);
        set.into_iter().collect()
    }

    fn collect_forced(&self, n_left: usize, out: &mut BTreeSet<(usize, usize)>) {
        match self {
            ConstraintSpec::Hn => out.extend(hn_required_edges(n_left)),
            ConstraintSpec::And { of } => of.iter().for_each(|c| c.collect_forced(n_left, out)),
            ConstraintSpec::Always | ConstraintSpec::Predicate { .. } => {}
        }
    }
}

/// Whether `g` belongs to the event described by `c`.
pub fn check_constraint(g: &BipartiteGraph, c: &ConstraintSpec) -> Result<bool> {
    c.check_applicable(g.n_left(), g.n_right())?;
    Ok(eval(g, c))
}

fn eval(g: &BipartiteGraph, c: &ConstraintSpec) -> bool {
    match c {
        ConstraintSpec::Always => true,
        ConstraintSpec::Hn => hn_required_edges(g.n_left())
            .into_iter()
            .all(|(j, i)| g.has_edge(j, i)),
        ConstraintSpec::And { of } => of.iter().all(|s| eval(g, s)),
        ConstraintSpec::Predicate { id } => builtin_predicate(id).is_some_and(|f| f(g)),
    }
}

/// Exact probability of the `hn` event under edge probability `p`:
/// `p^(2 (floor(sqrt n) - 1))`, the required edges being distinct.
///
/// Panics unless `n >= 4` and `0 <= p <= 1`.
pub fn hn_exact_probability(n: usize, p: f64) -> f64 {
    assert!(n >= 4, "hn probability needs n >= 4, got {n}");
    assert!((0.0..=1.0).contains(&p), "p = {p} is not a probability");
    p.powi(2 * (isqrt(n) as i32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2core::BitMatrix;

    #[test]
    fn isqrt_exact() {
        for n in 0..10_000usize {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(24), 4);
        assert_eq!(isqrt(16), 4);
    }

    #[test]
    fn hn_examples() {
        let full = BipartiteGraph::new(BitMatrix::ones(5, 16).unwrap()).unwrap();
        assert!(check_constraint(&full, &ConstraintSpec::Hn).unwrap());

        let empty = BipartiteGraph::empty(4, 3).unwrap();
        assert!(!check_constraint(&empty, &ConstraintSpec::Hn).unwrap());

        // n_left = 16: edges exactly {(a_i, b_{i-1}), (a_i, b_{i+1}) : i = 2, 3, 4}
        let mut g = BipartiteGraph::empty(16, 5).unwrap();
        for i in 2..=4usize {
            g.add_edge(i - 2, i - 1);
            g.add_edge(i, i - 1);
        }
        assert_eq!(g.edge_count(), 6);
        assert!(check_constraint(&g, &ConstraintSpec::Hn).unwrap());
        let mut h = g.clone();
        let mut missing = BipartiteGraph::empty(16, 5).unwrap();
        for (j, i) in hn_required_edges(16).into_iter().skip(1) {
            missing.add_edge(j, i);
        }
        assert!(!check_constraint(&missing, &ConstraintSpec::Hn).unwrap());
        h.add_edge(0, 0);
        assert!(check_constraint(&h, &ConstraintSpec::Hn).unwrap());
    }

    #[test]
    fn hn_needs_enough_right_nodes() {
        let g = BipartiteGraph::empty(16, 4).unwrap();
        assert!(matches!(
            check_constraint(&g, &ConstraintSpec::Hn),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn combinators_and_predicates() {
        let g = BipartiteGraph::new(BitMatrix::ones(5, 16).unwrap()).unwrap();
        let spec = ConstraintSpec::And {
            of: vec![
                ConstraintSpec::Hn,
                ConstraintSpec::Predicate {
                    id: "no-empty-check".into(),
                },
            ],
        };
        assert!(check_constraint(&g, &spec).unwrap());
        let empty = BipartiteGraph::empty(16, 5).unwrap();
        assert!(!check_constraint(
            &empty,
            &ConstraintSpec::Predicate {
                id: "no-isolated-left".into()
            }
        )
        .unwrap());
        assert!(check_constraint(&empty, &ConstraintSpec::Always).unwrap());
        assert!(check_constraint(&empty, &ConstraintSpec::And { of: vec![] }).unwrap());
        assert!(matches!(
            check_constraint(&g, &ConstraintSpec::Predicate { id: "nope".into() }),
            Err(Error::UnknownPredicate(_))
        ));
    }

    #[test]
    fn json_forms() {
        assert_eq!(ConstraintSpec::Hn.to_json(), r#"{"kind":"hn"}"#);
        let spec =
            ConstraintSpec::parse(r#"{"kind": "and", "of": [{"kind": "hn"}, {"kind": "always"}]}"#)
                .unwrap();
        assert_eq!(
            spec,
            ConstraintSpec::And {
                of: vec![ConstraintSpec::Hn, ConstraintSpec::Always]
            }
        );
        assert_eq!(ConstraintSpec::parse(&spec.to_json()).unwrap(), spec);
        assert_eq!(ConstraintSpec::parse("hn").unwrap(), ConstraintSpec::Hn);
        assert!(ConstraintSpec::parse(r#"{"kind":"predicate","id":"zzz"}"#).is_err());
        assert!(ConstraintSpec::parse(r#"{"kind":"bogus"}"#).is_err());
    }

    #[test]
    fn forced_edges_dedupe() {
        let spec = ConstraintSpec::And {
            of: vec![ConstraintSpec::Hn, ConstraintSpec::Hn],
        };
        let mut expected = hn_required_edges(16);
        expected.sort_unstable();
        assert_eq!(spec.forced_edges(16), expected);
        assert_eq!(hn_required_edges(16).len(), 6);
        assert!(ConstraintSpec::Always.forced_edges(16).is_empty());
    }

    #[test]
    fn hn_probability_examples() {
        assert_eq!(hn_exact_probability(16, 0.5), 1.0 / 64.0);
        assert_eq!(hn_exact_probability(100, 1.0), 1.0);
        assert_eq!(hn_exact_probability(9, 0.0), 0.0);
        // the exact value dominates p^(2 sqrt n)
        for n in 4..200 {
            let p = 0.3;
            assert!(hn_exact_probability(n, p) >= p.powf(2.0 * (n as f64).sqrt()));
        }
    }
}
