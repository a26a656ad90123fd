//! Source problems for the reductions, with seeded random instances.

use std::collections::BTreeSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CmsError, Result};

/// CNF formula over variables `1..=num_vars`; literals are signed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CmsError::InvalidGeneratorInput(format!("clause {} is empty", i + 1)));
            }
            if let Some(&lit) = clause.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(CmsError::InvalidGeneratorInput(format!(
                    "literal {lit} out of range 1..={num_vars}"
                )));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Truth value of a literal under `bits`, where bit `v - 1` holds variable `v`.
    #[inline]
    pub fn literal_holds(lit: i64, bits: u64) -> bool {
        let set = bits >> (lit.unsigned_abs() - 1) & 1 == 1;
        set == (lit > 0)
    }
}

/// Undirected graph whose vertices are split into `k` colour classes of
/// exactly `c` vertices. Vertex `x * c + i` is the `i`-th vertex of colour `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    pub k: usize,
    pub c: usize,
    /// Normalized `(lo, hi)`; endpoints always have different colours.
    pub edges: BTreeSet<(usize, usize)>,
}

impl ColoredGraph {
    pub fn new(k: usize, c: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if k == 0 || c == 0 {
            return Err(CmsError::InvalidGeneratorInput(
                "need k >= 1 colours of c >= 1 vertices".into(),
            ));
        }
        let n = k * c;
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(CmsError::InvalidGeneratorInput(format!("edge {u}-{v} outside 0..{n}")));
            }
            if u / c == v / c {
                return Err(CmsError::InvalidGeneratorInput(format!(
                    "edge {u}-{v} joins one colour class"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self { k, c, edges: set })
    }

    #[inline]
    pub fn color(&self, v: usize) -> usize {
        v / self.c
    }

    /// Same graph with `c' >= c` vertices per class; the new vertices are
    /// isolated.
    pub fn padded(&self, c: usize) -> Self {
        if c <= self.c {
            return self.clone();
        }
        let remap = |v: usize| (v / self.c) * c + v % self.c;
        Self {
            k: self.k,
            c,
            edges: self.edges.iter().map(|&(u, v)| (remap(u), remap(v))).collect(),
        }
    }
}

/// Binary CSP over variables `0..num_vars` with values `0..alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspConstraint {
    pub u: usize,
    pub v: usize,
    /// Allowed `(value of u, value of v)` pairs.
    pub allowed: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    pub num_vars: usize,
    pub alphabet: usize,
    pub constraints: Vec<CspConstraint>,
}

impl CspInstance {
    pub fn new(num_vars: usize, alphabet: usize, constraints: Vec<CspConstraint>) -> Result<Self> {
        let bad = |msg: String| Err(CmsError::InvalidGeneratorInput(msg));
        if alphabet < 2 {
            return bad(format!("alphabet of size {alphabet}; need at least 2"));
        }
        let mut used = vec![false; num_vars];
        for (i, c) in constraints.iter().enumerate() {
            if c.u >= num_vars || c.v >= num_vars {
                return bad(format!("constraint {i} names a variable outside 0..{num_vars}"));
            }
            if c.u == c.v {
                return bad(format!("constraint {i} uses variable {} twice", c.u));
            }
            if c.allowed.iter().any(|&(a, b)| a >= alphabet || b >= alphabet) {
                return bad(format!("constraint {i} allows a value outside 0..{alphabet}"));
            }
            used[c.u] = true;
            used[c.v] = true;
        }
        if let Some(x) = used.iter().position(|&u| !u) {
            return bad(format!("variable {x} occurs in no constraint"));
        }
        Ok(Self {
            num_vars,
            alphabet,
            constraints,
        })
    }
}

/// Uniform random `k`-CNF: each clause draws `k` distinct variables and
/// independent signs.
pub fn random_cnf(num_vars: usize, num_clauses: usize, k: usize, seed: u64) -> Result<CnfFormula> {
    if k == 0 || k > num_vars {
        return Err(CmsError::InvalidGeneratorInput(format!(
            "clause width {k} with {num_vars} variables"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<i64> = (1..=num_vars as i64).collect();
    let clauses = (0..num_clauses)
        .map(|_| {
            vars.choose_multiple(&mut rng, k)
                .map(|&v| if rng.random_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses)
}

/// Each cross-colour pair becomes an edge with probability `edge_prob`.
pub fn random_colored_graph(k: usize, c: usize, edge_prob: f64, seed: u64) -> Result<ColoredGraph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(CmsError::InvalidGeneratorInput(format!("edge probability {edge_prob}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = k * c;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u / c.max(1) != v / c.max(1) && rng.random_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    ColoredGraph::new(k, c, edges)
}

/// Random CSP in which every variable occurs: variables are first paired
/// off in shuffled order, then the remaining constraints pick random pairs.
/// Each value pair is allowed with probability `allow_prob`.
pub fn random_csp(
    num_vars: usize,
    alphabet: usize,
    num_constraints: usize,
    allow_prob: f64,
    seed: u64,
) -> Result<CspInstance> {
    if num_vars < 2 || num_constraints * 2 < num_vars {
        return Err(CmsError::InvalidGeneratorInput(format!(
            "{num_constraints} constraints cannot cover {num_vars} variables"
        )));
    }
    if !(0.0..=1.0).contains(&allow_prob) {
        return Err(CmsError::InvalidGeneratorInput(format!(
            "allow probability {allow_prob}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..num_vars).collect();
    order.shuffle(&mut rng);
    let mut pairs = Vec::with_capacity(num_constraints);
    for chunk in order.chunks(2) {
        let u = chunk[0];
        let v = match chunk.get(1) {
            Some(&v) => v,
            None => loop {
                let w = rng.random_range(0..num_vars);
                if w != u {
                    break w;
                }
            },
        };
        pairs.push((u, v));
    }
    while pairs.len() < num_constraints {
        let u = rng.random_range(0..num_vars);
        let v = rng.random_range(0..num_vars - 1);
        pairs.push((u, if v >= u { v + 1 } else { v }));
    }
    let constraints = pairs
        .into_iter()
        .map(|(u, v)| CspConstraint {
            u,
            v,
            allowed: (0..alphabet)
                .flat_map(|a| (0..alphabet).map(move |b| (a, b)))
                .filter(|_| rng.random_bool(allow_prob))
                .collect(),
        })
        .collect();
    CspInstance::new(num_vars, alphabet, constraints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnf_rejects_bad_literals() {
        assert!(CnfFormula::new(2, vec![vec![1, -3]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![0]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![1, -2]]).is_ok());
    }

    #[test]
    fn literal_truth() {
        assert!(CnfFormula::literal_holds(2, 0b10));
        assert!(!CnfFormula::literal_holds(-2, 0b10));
        assert!(CnfFormula::literal_holds(-1, 0b10));
    }

    #[test]
    fn colored_graph_checks_classes() {
        assert!(ColoredGraph::new(2, 2, [(0, 1)]).is_err());
        let g = ColoredGraph::new(2, 2, [(3, 0)]).unwrap();
        assert_eq!(g.edges, BTreeSet::from([(0, 3)]));
        assert_eq!(g.padded(3).edges, BTreeSet::from([(0, 4)]));
    }

    #[test]
    fn random_csp_covers_every_variable() {
        for seed in 0..100 {
            let csp = random_csp(4, 3, 2 + seed as usize % 2, 0.5, seed).unwrap();
            assert!(csp.constraints.iter().all(|c| c.u != c.v));
        }
        assert!(random_csp(5, 2, 2, 0.5, 0).is_err());
    }

    #[test]
    fn random_sources_are_deterministic() {
        assert_eq!(random_cnf(8, 20, 3, 5).unwrap(), random_cnf(8, 20, 3, 5).unwrap());
        assert_eq!(
            random_colored_graph(3, 3, 0.5, 9).unwrap(),
            random_colored_graph(3, 3, 0.5, 9).unwrap()
        );
    }
}
