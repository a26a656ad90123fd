//! Exact solver for profiles with in-degree at most 1: dynamic programming
//! over a nice tree decomposition of the global dependency graph.
//!
//! `table[t][φ]` is the least cost, over extensions of the bag assignment
//! `φ` to everything forgotten below `t`, of all unary terms of subtree
//! vertices plus all edge terms whose endpoints both appear in subtree
//! bags. An edge term is charged when its second endpoint is introduced;
//! joins subtract the bag-local cost that both children charged.

mod cost_model;

pub use cost_model::{compile_cost_model, CostModel};

use crate::analysis::{build_global_graph, heuristic_tree_decomposition, make_nice, NiceKind, NiceTreeDecomposition};
use crate::error::{CmsError, Result};
use crate::model::{Outcome, Profile};
use crate::solution::{Method, Solution};

const MAX_TABLE: usize = 1 << 26;

/// Mixed-radix indexing of assignments to one bag; the last bag vertex is
/// least significant.
struct BagIndex<'a> {
    bag: &'a [usize],
    strides: Vec<usize>,
    size: usize,
}

impl<'a> BagIndex<'a> {
    fn new(bag: &'a [usize], domains: &[usize]) -> Result<Self> {
        let mut strides = vec![0; bag.len()];
        let mut size = 1usize;
        for (i, &v) in bag.iter().enumerate().rev() {
            strides[i] = size;
            size = size
                .checked_mul(domains[v])
                .filter(|&s| s <= MAX_TABLE)
                .ok_or_else(|| CmsError::InvalidDecomposition("bag assignment table too large".into()))?;
        }
        Ok(Self { bag, strides, size })
    }

    fn decode(&self, mut idx: usize, domains: &[usize], out: &mut [usize]) {
        for (&v, slot) in self.bag.iter().zip(out.iter_mut()).rev() {
            *slot = idx % domains[v];
            idx /= domains[v];
        }
    }

    /// Index of the assignment `values[i]` for `bag[i]`, in `other`'s
    /// layout; `other.bag` must be a subset of this bag.
    fn project(&self, values: &[usize], other: &BagIndex<'_>, extra: Option<(usize, usize)>) -> usize {
        let mut idx = 0;
        let mut i = 0;
        for (pos, &v) in other.bag.iter().enumerate() {
            let val = match extra {
                Some((ev, eval)) if ev == v => eval,
                _ => {
                    while self.bag[i] != v {
                        i += 1;
                    }
                    values[i]
                }
            };
            idx += val * other.strides[pos];
        }
        idx
    }
}

/// Optimal outcome given a valid nice decomposition of the global graph.
/// Ties are broken toward the lowest alternative at each forget node.
pub fn solve_treewidth(profile: &Profile, nice: &NiceTreeDecomposition) -> Result<Solution> {
    let model = compile_cost_model(profile)?;
    nice.verify(&build_global_graph(profile))
        .map_err(CmsError::InvalidDecomposition)?;

    let domains = &model.domains;
    let adj = model.adjacency();
    let n = nice.nodes.len();
    let mut tables: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut choices: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut values = vec![0usize; nice.width() + 2];

    for (t, node) in nice.nodes.iter().enumerate() {
        let here = BagIndex::new(&node.bag, domains)?;
        let mut table = vec![0u64; here.size];
        match node.kind {
            NiceKind::Leaf => {}
            NiceKind::Introduce(v) => {
                let child = &nice.nodes[node.children[0]];
                let below = BagIndex::new(&child.bag, domains)?;
                let child_table = &tables[node.children[0]];
                let v_pos = node.bag.binary_search(&v).expect("introduced vertex in bag");
                for (idx, cell) in table.iter_mut().enumerate() {
                    here.decode(idx, domains, &mut values);
                    let a_v = values[v_pos];
                    let mut cost = child_table[here.project(&values, &below, None)] + model.unary[v][a_v];
                    for (pos, &u) in node.bag.iter().enumerate() {
                        if u != v && adj[v].contains(&u) {
                            cost += model.pair_cost(u, values[pos], v, a_v);
                        }
                    }
                    *cell = cost;
                }
            }
            NiceKind::Forget(v) => {
                let child = &nice.nodes[node.children[0]];
                let below = BagIndex::new(&child.bag, domains)?;
                let child_table = &tables[node.children[0]];
                let mut argmin = vec![0u32; here.size];
                for (idx, cell) in table.iter_mut().enumerate() {
                    here.decode(idx, domains, &mut values);
                    let mut best = (u64::MAX, 0u32);
                    for a in 0..domains[v] {
                        let c = child_table[here.project(&values, &below, Some((v, a)))];
                        if c < best.0 {
                            best = (c, a as u32);
                        }
                    }
                    *cell = best.0;
                    argmin[idx] = best.1;
                }
                choices[t] = argmin;
            }
            NiceKind::Join => {
                let (l, r) = (&tables[node.children[0]], &tables[node.children[1]]);
                for (idx, cell) in table.iter_mut().enumerate() {
                    here.decode(idx, domains, &mut values);
                    let mut local = 0u64;
                    for (i, &u) in node.bag.iter().enumerate() {
                        local += model.unary[u][values[i]];
                        for (k, &w) in node.bag.iter().enumerate().skip(i + 1) {
                            if adj[u].contains(&w) {
                                local += model.pair_cost(u, values[i], w, values[k]);
                            }
                        }
                    }
                    *cell = l[idx] + r[idx] - local;
                }
            }
        }
        tables.push(table);
    }

    let root = nice.root();
    let optimum = tables[root][0];

    // Top-down traceback; each vertex is fixed at its forget node.
    let mut assignment = vec![usize::MAX; profile.num_issues()];
    let mut stack = vec![root];
    let mut bag_values = Vec::new();
    while let Some(t) = stack.pop() {
        let node = &nice.nodes[t];
        if let NiceKind::Forget(v) = node.kind {
            let here = BagIndex::new(&node.bag, domains)?;
            bag_values.clear();
            bag_values.extend(node.bag.iter().map(|&u| assignment[u]));
            let idx = here.project(&bag_values, &here, None);
            assignment[v] = choices[t][idx] as usize;
        }
        stack.extend(node.children.iter().copied());
    }
    if let Some(j) = assignment.iter().position(|&a| a == usize::MAX) {
        return Err(CmsError::InvalidDecomposition(format!("issue {j} is never forgotten")));
    }
    Solution::verified(profile, Outcome::new(assignment), optimum, Method::Treewidth)
}

/// [`solve_treewidth`] over a min-fill decomposition of the global graph.
pub fn solve_treewidth_heuristic(profile: &Profile) -> Result<Solution> {
    compile_cost_model(profile)?;
    let td = heuristic_tree_decomposition(&build_global_graph(profile));
    solve_treewidth(profile, &make_nice(&td))
}
