use super::graph::UndirectedGraph;

/// Exact minimum vertex cover size if it is at most `k_max`, else `None`.
///
/// Bounded search tree: pick an uncovered edge and branch on which endpoint
/// enters the cover. Budgets are tried in increasing order so the first
/// success is the minimum.
pub fn vertex_cover_number(graph: &UndirectedGraph, k_max: usize) -> Option<usize> {
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut in_cover = vec![false; graph.num_vertices()];
    (0..=k_max).find(|&k| branch(&edges, &mut in_cover, k))
}

fn branch(edges: &[(usize, usize)], in_cover: &mut [bool], budget: usize) -> bool {
    let Some(&(u, v)) = edges.iter().find(|(u, v)| !in_cover[*u] && !in_cover[*v]) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for w in [u, v] {
        in_cover[w] = true;
        let found = branch(edges, in_cover, budget - 1);
        in_cover[w] = false;
        if found {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(rho: usize) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(rho * rho);
        for r in 0..rho {
            for c in 0..rho {
                if c + 1 < rho {
                    g.add_edge(r * rho + c, r * rho + c + 1);
                }
                if r + 1 < rho {
                    g.add_edge(r * rho + c, (r + 1) * rho + c);
                }
            }
        }
        g
    }

    /// Smallest subset size covering every edge, by subset enumeration.
    fn exhaustive(g: &UndirectedGraph) -> usize {
        let n = g.num_vertices();
        let edges: Vec<_> = g.edges().collect();
        (0u32..1 << n)
            .filter(|mask| edges.iter().all(|&(u, v)| mask & (1 << u) != 0 || mask & (1 << v) != 0))
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    #[test]
    fn star_triangle_grid() {
        let star = UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        assert_eq!(vertex_cover_number(&star, 5), Some(1));
        let tri = UndirectedGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(vertex_cover_number(&tri, 5), Some(2));
        let g3 = grid(3);
        assert_eq!(exhaustive(&g3), 4);
        assert_eq!(vertex_cover_number(&g3, 10), Some(4));
    }

    #[test]
    fn reports_exceeding_bound() {
        let tri = UndirectedGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(vertex_cover_number(&tri, 1), None);
        assert_eq!(vertex_cover_number(&UndirectedGraph::new(4), 0), Some(0));
    }

    proptest! {
        #[test]
        fn agrees_with_subset_enumeration(
            n in 1usize..=12,
            raw in proptest::collection::vec((0usize..12, 0usize..12), 0..30),
        ) {
            let g = UndirectedGraph::from_edges(n, raw.into_iter().map(|(u, v)| (u % n, v % n)));
            prop_assert_eq!(vertex_cover_number(&g, n), Some(exhaustive(&g)));
        }
    }
}
