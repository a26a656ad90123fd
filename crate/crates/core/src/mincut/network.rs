use std::collections::VecDeque;

use super::constraints::TwoMonotoneConstraint;

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// s-t network. Node 0 is the source, node 1 the sink, nodes
/// `2..2 + num_vars` the variables; gadget nodes follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    pub num_nodes: usize,
    pub num_vars: usize,
    pub arcs: Vec<Arc>,
    /// Capacity used for arcs that no finite cut may sever.
    pub infinity: u64,
}

impl FlowNetwork {
    #[inline]
    pub fn var_node(&self, var: usize) -> usize {
        2 + var
    }

    pub fn with_nodes(num_nodes: usize) -> Self {
        Self {
            num_nodes,
            num_vars: num_nodes.saturating_sub(2),
            arcs: Vec::new(),
            infinity: u64::MAX,
        }
    }

    fn add_node(&mut self) -> usize {
        self.num_nodes += 1;
        self.num_nodes - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) {
        self.arcs.push(Arc { from, to, capacity });
    }
}

/// Cut gadget: a variable on the source side means value 1. Every
/// constraint costs its weight exactly when both of its terms are false,
/// with gadget nodes placed optimally.
pub fn build_network(num_vars: usize, constraints: &[TwoMonotoneConstraint]) -> FlowNetwork {
    let total: u64 = constraints.iter().map(|c| c.weight).sum();
    let mut net = FlowNetwork {
        num_nodes: 2 + num_vars,
        num_vars,
        arcs: Vec::new(),
        infinity: total + 1,
    };
    let inf = net.infinity;
    for c in constraints {
        let w = c.weight;
        match (&c.positive, &c.negative) {
            (Some(p), None) if p.len() == 1 => {
                let v = net.var_node(p[0]);
                net.add_arc(SOURCE, v, w);
            }
            (None, Some(n)) if n.len() == 1 => {
                let v = net.var_node(n[0]);
                net.add_arc(v, SINK, w);
            }
            (Some(p), None) => {
                let b = net.add_node();
                net.add_arc(SOURCE, b, w);
                for &i in p {
                    let v = net.var_node(i);
                    net.add_arc(b, v, inf);
                }
            }
            (None, Some(n)) => {
                let a = net.add_node();
                for &j in n {
                    let v = net.var_node(j);
                    net.add_arc(v, a, inf);
                }
                net.add_arc(a, SINK, w);
            }
            (Some(p), Some(n)) => {
                let a = net.add_node();
                let b = net.add_node();
                net.add_arc(a, b, w);
                for &j in n {
                    let v = net.var_node(j);
                    net.add_arc(v, a, inf);
                }
                for &i in p {
                    let v = net.var_node(i);
                    net.add_arc(b, v, inf);
                }
            }
            (None, None) => unreachable!("constraint without terms"),
        }
    }
    net
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(net: &FlowNetwork) -> Self {
        let mut r = Residual {
            head: Vec::with_capacity(net.arcs.len() * 2),
            cap: Vec::with_capacity(net.arcs.len() * 2),
            adj: vec![Vec::new(); net.num_nodes],
        };
        for a in &net.arcs {
            // Edge e and its reverse e ^ 1.
            r.adj[a.from].push(r.head.len());
            r.head.push(a.to);
            r.cap.push(a.capacity);
            r.adj[a.to].push(r.head.len());
            r.head.push(a.from);
            r.cap.push(0);
        }
        r
    }

    fn levels(&self, s: usize) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && level[v] == u32::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    /// Blocking flow on the level graph, with an explicit path stack.
    fn blocking_flow(&mut self, s: usize, t: usize, level: &[u32]) -> u64 {
        let mut next = vec![0usize; self.adj.len()];
        let mut path: Vec<usize> = Vec::new();
        let mut pushed = 0u64;
        let mut u = s;
        loop {
            if u == t {
                let f = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                for &e in &path {
                    self.cap[e] -= f;
                    self.cap[e ^ 1] += f;
                }
                pushed += f;
                let cut = path.iter().position(|&e| self.cap[e] == 0).unwrap_or(0);
                path.truncate(cut);
                u = path.last().map_or(s, |&e| self.head[e]);
                continue;
            }
            let mut advanced = false;
            while next[u] < self.adj[u].len() {
                let e = self.adj[u][next[u]];
                let v = self.head[e];
                if self.cap[e] > 0 && level[v] == level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                match path.pop() {
                    None => return pushed,
                    Some(e) => {
                        u = self.head[e ^ 1];
                        next[u] += 1;
                    }
                }
            }
        }
    }
}

/// Maximum flow value and the set of nodes reachable from the source in
/// the final residual graph (the source side of a minimum cut).
pub fn max_flow_min_cut(net: &FlowNetwork) -> (u64, Vec<bool>) {
    let mut r = Residual::new(net);
    let mut flow = 0u64;
    if net.num_nodes > SINK {
        loop {
            let level = r.levels(SOURCE);
            if level[SINK] == u32::MAX {
                break;
            }
            flow += r.blocking_flow(SOURCE, SINK, &level);
        }
    }
    let level = r.levels(SOURCE);
    (flow, level.into_iter().map(|l| l != u32::MAX).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bottleneck() {
        let mut net = FlowNetwork::with_nodes(3);
        net.add_arc(SOURCE, 2, 2);
        net.add_arc(2, SINK, 1);
        let (f, side) = max_flow_min_cut(&net);
        assert_eq!(f, 1);
        assert_eq!(side, vec![true, false, true]);
    }

    #[test]
    fn disconnected_source_and_sink() {
        let mut net = FlowNetwork::with_nodes(4);
        net.add_arc(SOURCE, 2, 5);
        net.add_arc(3, SINK, 5);
        assert_eq!(max_flow_min_cut(&net).0, 0);
    }

    #[test]
    fn classic_dinic_instance() {
        // Source 0, sink 1, inner nodes 2..=5.
        let mut net = FlowNetwork::with_nodes(6);
        for (u, v, c) in [
            (0, 2, 10),
            (0, 3, 10),
            (2, 4, 4),
            (2, 5, 8),
            (3, 5, 9),
            (4, 1, 10),
            (5, 4, 6),
            (5, 1, 10),
        ] {
            net.add_arc(u, v, c);
        }
        assert_eq!(max_flow_min_cut(&net).0, 19);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 200_000;
        let mut net = FlowNetwork::with_nodes(n);
        net.add_arc(SOURCE, 2, 3);
        for v in 2..n - 1 {
            net.add_arc(v, v + 1, 5);
        }
        net.add_arc(n - 1, SINK, 4);
        assert_eq!(max_flow_min_cut(&net).0, 3);
    }

    #[test]
    fn positive_unit_literal() {
        let net = build_network(1, &[TwoMonotoneConstraint::new(Some(vec![0]), None, 1)]);
        assert_eq!(
            net.arcs,
            vec![Arc {
                from: SOURCE,
                to: 2,
                capacity: 1
            }]
        );
        let (f, side) = max_flow_min_cut(&net);
        assert_eq!(f, 0);
        assert!(side[net.var_node(0)]);
    }

    #[test]
    fn contradictory_unit_literals() {
        let net = build_network(
            1,
            &[
                TwoMonotoneConstraint::new(Some(vec![0]), None, 1),
                TwoMonotoneConstraint::new(None, Some(vec![0]), 1),
            ],
        );
        assert_eq!(max_flow_min_cut(&net).0, 1);
    }
}
