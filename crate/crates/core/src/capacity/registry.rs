use super::bounds::ThetaSource;
use super::graph::SimpleGraph;
use super::mis::alpha_exact;

/// Known full-capacity values: `sqrt(5)` for the 5-cycle, 1 for complete
/// graphs, and `alpha` for bipartite graphs and their complements (both
/// perfect, so capacity equals independence number). `None` otherwise.
pub fn capacity_registry_lookup(g: &SimpleGraph) -> Option<(f64, ThetaSource)> {
    if is_five_cycle(g) {
        return Some((5f64.sqrt(), ThetaSource::LovaszFiveCycle));
    }
    if g.is_complete() {
        return Some((1.0, ThetaSource::CompleteGraph));
    }
    let source = if g.is_bipartite() {
        ThetaSource::PerfectBipartite
    } else if g.complement().is_bipartite() {
        ThetaSource::PerfectCoBipartite
    } else {
        return None;
    };
    alpha_exact(g).ok().map(|a| (a as f64, source))
}

/// Connected and 2-regular on five vertices, which pins down C5 up to
/// relabelling.
fn is_five_cycle(g: &SimpleGraph) -> bool {
    g.n() == 5 && (0..5).all(|v| g.degree(v) == 2) && g.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_under_any_labelling() {
        let relabelled = SimpleGraph::new(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        for g in [SimpleGraph::cycle(5).unwrap(), relabelled] {
            assert_eq!(
                capacity_registry_lookup(&g),
                Some((5f64.sqrt(), ThetaSource::LovaszFiveCycle))
            );
        }
    }

    #[test]
    fn examples() {
        assert_eq!(
            capacity_registry_lookup(&SimpleGraph::complete(7).unwrap()),
            Some((1.0, ThetaSource::CompleteGraph))
        );
        assert_eq!(
            capacity_registry_lookup(&SimpleGraph::cycle(7).unwrap()),
            None
        );
        assert_eq!(
            capacity_registry_lookup(&SimpleGraph::path(4).unwrap()),
            Some((2.0, ThetaSource::PerfectBipartite))
        );
        assert_eq!(
            capacity_registry_lookup(&SimpleGraph::cycle(6).unwrap().complement()),
            Some((2.0, ThetaSource::PerfectCoBipartite))
        );
        // Two disjoint triangles: the complement is K_{3,3}.
        let two_triangles =
            SimpleGraph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            capacity_registry_lookup(&two_triangles),
            Some((2.0, ThetaSource::PerfectCoBipartite))
        );
    }
}
