use std::collections::BTreeSet;

use crate::model::{IssueId, Profile};

/// Simple undirected graph over vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `{u, v}`; loops and repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by the sorted vertex list `vertices`, renumbered
    /// by position.
    pub fn induced(&self, vertices: &[usize]) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for &w in &self.adj[u] {
                if let Ok(j) = vertices.binary_search(&w) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

/// Directed dependency graph of one voter: `k -> j` iff issue `k` is in
/// the premise scope of the voter's ballot for `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoterDependencyGraph {
    pub num_issues: usize,
    pub edges: BTreeSet<(IssueId, IssueId)>,
}

impl VoterDependencyGraph {
    pub fn in_degree(&self, issue: IssueId) -> usize {
        self.edges.iter().filter(|(_, j)| *j == issue).count()
    }

    pub fn max_in_degree(&self) -> usize {
        let mut deg = vec![0usize; self.num_issues];
        for (_, j) in &self.edges {
            deg[j.index()] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn underlying(&self) -> UndirectedGraph {
        UndirectedGraph::from_edges(self.num_issues, self.edges.iter().map(|(k, j)| (k.index(), j.index())))
    }
}

pub fn build_voter_graph(profile: &Profile, voter: usize) -> VoterDependencyGraph {
    let edges = profile.voters[voter]
        .ballot
        .entries()
        .flat_map(|(j, ib)| ib.scope().iter().map(move |&k| (k, j)))
        .collect();
    VoterDependencyGraph {
        num_issues: profile.num_issues(),
        edges,
    }
}

/// Undirected union of all voters' dependency graphs.
pub fn build_global_graph(profile: &Profile) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(profile.num_issues());
    for voter in &profile.voters {
        for (j, ib) in voter.ballot.entries() {
            for k in ib.scope() {
                g.add_edge(k.index(), j.index());
            }
        }
    }
    g
}

/// Largest premise scope over all voters and issues.
pub fn max_in_degree(profile: &Profile) -> usize {
    profile
        .voters
        .iter()
        .flat_map(|v| v.ballot.entries().map(|(_, ib)| ib.scope().len()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{approve_all, p1};
    use crate::model::{Ballot, Issue, IssueBallot, Voter};

    #[test]
    fn voter_graph_of_p1() {
        let p = p1();
        let g = build_voter_graph(&p, 0);
        assert_eq!(
            g.edges.iter().copied().collect::<Vec<_>>(),
            vec![(IssueId(0), IssueId(1))]
        );
        assert!(build_voter_graph(&p, 1).edges.is_empty());
        assert!(build_voter_graph(&approve_all(3, 1), 0).edges.is_empty());
    }

    #[test]
    fn global_graph_drops_direction_and_multiplicity() {
        let p = p1();
        let g = build_global_graph(&p);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);

        let fwd = Ballot::new().with(
            IssueId(1),
            IssueBallot::conditional([IssueId(0)]).with_statement(vec![0], [0]),
        );
        let back = Ballot::new().with(
            IssueId(0),
            IssueBallot::conditional([IssueId(1)]).with_statement(vec![0], [0]),
        );
        let q = Profile::new(
            vec![Issue::binary("A"), Issue::binary("B")],
            vec![Voter::new("x", fwd), Voter::new("y", back)],
        )
        .unwrap();
        assert_eq!(build_global_graph(&q).num_edges(), 1);
    }

    #[test]
    fn in_degree_values() {
        assert_eq!(max_in_degree(&p1()), 1);
        assert_eq!(max_in_degree(&approve_all(4, 2)), 0);
    }

    #[test]
    fn components_and_induced() {
        let g = UndirectedGraph::from_edges(5, [(0, 2), (3, 4)]);
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3, 4]]);
        let h = g.induced(&[0, 2, 3]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
