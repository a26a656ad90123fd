use std::collections::BTreeSet;

use super::decomposition::{verify_decomposition, TreeDecomposition};
use super::graph::UndirectedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted ascending.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice tree decomposition stored in post-order: every child index
/// is smaller than its parent's, and the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// The same decomposition as plain bags and tree edges.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.nodes.iter().map(|n| n.bag.clone()).collect(),
            edges: self
                .nodes
                .iter()
                .enumerate()
                .flat_map(|(p, n)| n.children.iter().map(move |&c| (c, p)))
                .collect(),
        }
    }

    /// Structural niceness plus validity as a decomposition of `graph`.
    pub fn verify(&self, graph: &UndirectedGraph) -> Result<(), String> {
        if self.nodes.is_empty() {
            return Err("no nodes".into());
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return Err("root bag is not empty".into());
        }
        let mut parent_count = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("node {i}: bag not strictly sorted"));
            }
            for &c in &node.children {
                if c >= i {
                    return Err(format!("node {i}: child {c} not before parent"));
                }
                parent_count[c] += 1;
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    node.children.len() == 1 && node.bag.contains(&v) && without(&node.bag, v) == *child_bag(0)
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && child_bag(0).contains(&v) && without(child_bag(0), v) == node.bag
                }
                NiceKind::Join => node.children.len() == 2 && *child_bag(0) == node.bag && *child_bag(1) == node.bag,
            };
            if !ok {
                return Err(format!("node {i}: malformed {:?}", node.kind));
            }
        }
        let root = self.root();
        if parent_count
            .iter()
            .enumerate()
            .any(|(i, &c)| if i == root { c != 0 } else { c != 1 })
        {
            return Err("nodes do not form a single rooted tree".into());
        }
        verify_decomposition(graph, &self.to_tree_decomposition()).map_err(|e| e.to_string())
    }
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&u| u != v).collect()
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn introduce(&mut self, child: usize, v: usize) -> usize {
        let mut bag = self.nodes[child].bag.clone();
        let at = bag.binary_search(&v).unwrap_err();
        bag.insert(at, v);
        self.push(NiceKind::Introduce(v), bag, vec![child])
    }

    fn forget(&mut self, child: usize, v: usize) -> usize {
        let bag = without(&self.nodes[child].bag, v);
        self.push(NiceKind::Forget(v), bag, vec![child])
    }

    /// Forget what `target` lacks, then introduce what it adds.
    fn morph(&mut self, mut node: usize, target: &[usize]) -> usize {
        let current: BTreeSet<usize> = self.nodes[node].bag.iter().copied().collect();
        let wanted: BTreeSet<usize> = target.iter().copied().collect();
        for &v in current.difference(&wanted) {
            node = self.forget(node, v);
        }
        for &v in wanted.difference(&current) {
            node = self.introduce(node, v);
        }
        node
    }
}

/// Converts `td` into nice form rooted at bag 0, with the same width.
pub fn make_nice(td: &TreeDecomposition) -> NiceTreeDecomposition {
    let mut builder = Builder { nodes: Vec::new() };
    if td.bags.is_empty() {
        builder.push(NiceKind::Leaf, Vec::new(), Vec::new());
        return NiceTreeDecomposition { nodes: builder.nodes };
    }
    let adj = td.tree_adjacency();
    let bags: Vec<Vec<usize>> = td
        .bags
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();

    // Iterative post-order from bag 0.
    let mut parent = vec![usize::MAX; bags.len()];
    let mut order = Vec::with_capacity(bags.len());
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(b) = stack.pop() {
        order.push(b);
        for &c in &adj[b] {
            if parent[c] == usize::MAX {
                parent[c] = b;
                stack.push(c);
            }
        }
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); bags.len()];
    for &b in order.iter().skip(1) {
        children[parent[b]].push(b);
    }

    let mut top = vec![usize::MAX; bags.len()];
    for &b in order.iter().rev() {
        let mut branches: Vec<usize> = children[b].iter().map(|&c| builder.morph(top[c], &bags[b])).collect();
        if branches.is_empty() {
            let leaf = builder.push(NiceKind::Leaf, Vec::new(), Vec::new());
            branches.push(builder.morph(leaf, &bags[b]));
        }
        let mut acc = branches[0];
        for &other in &branches[1..] {
            acc = builder.push(NiceKind::Join, bags[b].clone(), vec![acc, other]);
        }
        top[b] = acc;
    }
    builder.morph(top[0], &[]);
    NiceTreeDecomposition { nodes: builder.nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::decomposition::heuristic_tree_decomposition;
    use proptest::prelude::*;

    #[test]
    fn single_bag_becomes_introduce_then_forget_chain() {
        let td = TreeDecomposition {
            bags: vec![vec![0, 1]],
            edges: vec![],
        };
        let nice = make_nice(&td);
        let kinds: Vec<_> = nice.nodes.iter().map(|n| n.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NiceKind::Leaf,
                NiceKind::Introduce(0),
                NiceKind::Introduce(1),
                NiceKind::Forget(0),
                NiceKind::Forget(1)
            ]
        );
        assert_eq!(nice.width(), 1);
        let g = UndirectedGraph::from_edges(2, [(0, 1)]);
        assert_eq!(nice.verify(&g), Ok(()));
    }

    #[test]
    fn renicing_a_nice_decomposition_keeps_width() {
        let g = UndirectedGraph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4), (2, 4)]);
        let nice = make_nice(&heuristic_tree_decomposition(&g));
        let again = make_nice(&nice.to_tree_decomposition());
        assert_eq!(again.verify(&g), Ok(()));
        assert_eq!(again.width(), nice.width());
    }

    #[test]
    fn branching_tree_uses_joins() {
        let td = TreeDecomposition {
            bags: vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]],
            edges: vec![(0, 1), (0, 2), (0, 3)],
        };
        let g = UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let nice = make_nice(&td);
        assert_eq!(nice.verify(&g), Ok(()));
        assert_eq!(nice.nodes.iter().filter(|n| n.kind == NiceKind::Join).count(), 2);
    }

    #[test]
    fn verify_catches_broken_structure() {
        let g = UndirectedGraph::from_edges(2, [(0, 1)]);
        let mut nice = make_nice(&heuristic_tree_decomposition(&g));
        nice.nodes[1].kind = NiceKind::Forget(0);
        assert!(nice.verify(&g).is_err());
    }

    proptest! {
        #[test]
        fn width_never_changes(
            n in 1usize..=20,
            raw in proptest::collection::vec((0usize..20, 0usize..20), 0..50),
        ) {
            let g = UndirectedGraph::from_edges(n, raw.into_iter().map(|(u, v)| (u % n, v % n)));
            let td = heuristic_tree_decomposition(&g);
            let nice = make_nice(&td);
            prop_assert_eq!(nice.width(), td.width());
            prop_assert_eq!(nice.verify(&g), Ok(()));
        }
    }
}
