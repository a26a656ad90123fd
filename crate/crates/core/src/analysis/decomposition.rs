use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::graph::UndirectedGraph;

/// Tree decomposition: bags of vertices connected by tree edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Each bag sorted ascending.
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one (0 for a decomposition of no vertices).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub(crate) fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    Empty,
    NotATree,
    VertexOutOfRange(usize),
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    ConnectivityViolated(usize),
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => f.write_str("no bags"),
            Self::NotATree => f.write_str("bag graph is not a tree"),
            Self::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Self::VertexUncovered(v) => write!(f, "vertex {v} uncovered"),
            Self::EdgeUncovered(u, v) => write!(f, "edge {{{u}, {v}}} uncovered"),
            Self::ConnectivityViolated(v) => write!(f, "connectivity violated for vertex {v}"),
        }
    }
}

/// Checks the tree shape and the three decomposition conditions.
pub fn verify_decomposition(graph: &UndirectedGraph, td: &TreeDecomposition) -> Result<(), DecompositionViolation> {
    let nb = td.bags.len();
    if nb == 0 {
        return Err(DecompositionViolation::Empty);
    }
    if td.edges.len() != nb - 1 || td.edges.iter().any(|&(a, b)| a >= nb || b >= nb || a == b) {
        return Err(DecompositionViolation::NotATree);
    }
    let adj = td.tree_adjacency();
    if reachable(&adj, 0, |_| true).iter().filter(|&&r| r).count() != nb {
        return Err(DecompositionViolation::NotATree);
    }

    let n = graph.num_vertices();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(DecompositionViolation::VertexOutOfRange(v));
            }
            holders[v].push(b);
        }
    }
    for (v, hs) in holders.iter().enumerate() {
        if hs.is_empty() {
            return Err(DecompositionViolation::VertexUncovered(v));
        }
    }
    for (u, v) in graph.edges() {
        let hv: BTreeSet<usize> = holders[v].iter().copied().collect();
        if !holders[u].iter().any(|b| hv.contains(b)) {
            return Err(DecompositionViolation::EdgeUncovered(u, v));
        }
    }
    let mut member = vec![false; nb];
    for (v, hs) in holders.iter().enumerate() {
        for &b in hs {
            member[b] = true;
        }
        let seen = reachable(&adj, hs[0], |b| member[b]);
        let ok = hs.iter().all(|&b| seen[b]);
        for &b in hs {
            member[b] = false;
        }
        if !ok {
            return Err(DecompositionViolation::ConnectivityViolated(v));
        }
    }
    Ok(())
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(b) = queue.pop_front() {
        for &c in &adj[b] {
            if !seen[c] && allowed(c) {
                seen[c] = true;
                queue.push_back(c);
            }
        }
    }
    seen
}

/// Min-fill elimination ordering; ties go to lower degree, then lower id.
pub fn heuristic_tree_decomposition(graph: &UndirectedGraph) -> TreeDecomposition {
    min_fill(graph, usize::MAX).expect("unbounded elimination always completes")
}

/// Like [`heuristic_tree_decomposition`] but gives up with `None` as soon
/// as a bag would exceed `max_width + 1` vertices.
pub fn bounded_tree_decomposition(graph: &UndirectedGraph, max_width: usize) -> Option<TreeDecomposition> {
    min_fill(graph, max_width)
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let ns: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn min_fill(graph: &UndirectedGraph, max_width: usize) -> Option<TreeDecomposition> {
    let n = graph.num_vertices();
    if n == 0 {
        return Some(TreeDecomposition {
            bags: vec![Vec::new()],
            edges: Vec::new(),
        });
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| graph.neighbors(v).clone()).collect();
    let mut key: Vec<(usize, usize, usize)> = (0..n).map(|v| (fill_in(&adj, v), adj[v].len(), v)).collect();
    let mut queue: BTreeSet<(usize, usize, usize)> = key.iter().copied().collect();

    let mut position = vec![usize::MAX; n];
    let mut bags = Vec::with_capacity(n);
    while let Some(entry) = queue.pop_first() {
        let v = entry.2;
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        if ns.len() > max_width {
            return None;
        }
        position[v] = bags.len();
        let mut bag = ns.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push((v, bag));

        for (i, &a) in ns.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &ns[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();

        let mut affected: BTreeSet<usize> = ns.iter().copied().collect();
        for &a in &ns {
            affected.extend(adj[a].iter().copied());
        }
        for u in affected {
            let fresh = (fill_in(&adj, u), adj[u].len(), u);
            if fresh != key[u] {
                queue.remove(&key[u]);
                key[u] = fresh;
                queue.insert(fresh);
            }
        }
    }

    // Each bag hangs off the bag of its earliest-eliminated later
    // neighbour; bags with none are chained to the next bag.
    let mut edges = Vec::with_capacity(n - 1);
    for (p, (v, bag)) in bags.iter().enumerate() {
        if p + 1 == bags.len() {
            break;
        }
        let parent = bag
            .iter()
            .filter(|&&u| u != *v)
            .map(|&u| position[u])
            .min()
            .unwrap_or(p + 1);
        edges.push((p, parent));
    }
    Some(TreeDecomposition {
        bags: bags.into_iter().map(|(_, b)| b).collect(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    #[test]
    fn widths_of_small_graphs() {
        assert_eq!(heuristic_tree_decomposition(&path(5)).width(), 1);
        let tri = UndirectedGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(heuristic_tree_decomposition(&tri).width(), 2);
        assert_eq!(heuristic_tree_decomposition(&UndirectedGraph::new(4)).width(), 0);
    }

    #[test]
    fn bounded_version_aborts() {
        let k4 = UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(bounded_tree_decomposition(&k4, 2).is_none());
        assert_eq!(bounded_tree_decomposition(&k4, 3).unwrap().width(), 3);
    }

    #[test]
    fn verify_accepts_path_decomposition() {
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(verify_decomposition(&path(4), &td), Ok(()));
    }

    #[test]
    fn verify_rejects_uncovered_edge() {
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2, 3]],
            edges: vec![(0, 1)],
        };
        assert_eq!(
            verify_decomposition(&path(4), &td),
            Err(DecompositionViolation::EdgeUncovered(1, 2))
        );
    }

    #[test]
    fn verify_rejects_disconnected_occurrences() {
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            edges: vec![(0, 1), (1, 2)],
        };
        let g = UndirectedGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(
            verify_decomposition(&g, &td),
            Err(DecompositionViolation::ConnectivityViolated(0))
        );
    }

    #[test]
    fn verify_rejects_non_tree() {
        let td = TreeDecomposition {
            bags: vec![vec![0], vec![1], vec![2]],
            edges: vec![(0, 1)],
        };
        assert_eq!(
            verify_decomposition(&UndirectedGraph::new(3), &td),
            Err(DecompositionViolation::NotATree)
        );
    }

    proptest! {
        #[test]
        fn heuristic_output_is_always_valid(
            n in 1usize..=25,
            raw in proptest::collection::vec((0usize..25, 0usize..25), 0..60),
        ) {
            let g = UndirectedGraph::from_edges(n, raw.into_iter().map(|(u, v)| (u % n, v % n)));
            let td = heuristic_tree_decomposition(&g);
            prop_assert_eq!(verify_decomposition(&g, &td), Ok(()));
        }
    }
}
