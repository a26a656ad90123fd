//! Oracles and fixtures shared by the integration tests. Everything here is
//! written against the public API only and is deliberately naive.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cms_core::analysis::TreeDecomposition;
use cms_core::generators::{CnfFormula, ColoredGraph, CspInstance};
use cms_core::mincut::TwoMonotoneConstraint;
use cms_core::{Ballot, Issue, IssueBallot, IssueId, Outcome, Profile, Voter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dissatisfaction straight from the ballot semantics, ignoring every
/// solver-side data structure.
pub fn naive_cost(profile: &Profile, values: &[usize]) -> u64 {
    let mut cost = 0;
    for voter in &profile.voters {
        for (target, ib) in voter.ballot.entries() {
            let premise: Vec<usize> = ib.scope().iter().map(|k| values[k.index()]).collect();
            let ok = ib
                .statements()
                .any(|(p, approved)| p == premise.as_slice() && approved.contains(&values[target.index()]));
            if !ok {
                cost += 1;
            }
        }
    }
    cost
}

/// Exhaustive optimum by odometer enumeration.
pub fn naive_optimum(profile: &Profile) -> u64 {
    let sizes = profile.domain_sizes();
    let mut values = vec![0; sizes.len()];
    let mut best = u64::MAX;
    loop {
        best = best.min(naive_cost(profile, &values));
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < sizes[i] {
                break;
            }
            values[i] = 0;
        }
    }
}

pub fn outcome_cost(profile: &Profile, outcome: &Outcome) -> u64 {
    naive_cost(profile, outcome.as_slice())
}

pub fn cnf_satisfiable(f: &CnfFormula) -> bool {
    (0u64..1 << f.num_vars).any(|bits| {
        f.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = bits >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    })
}

pub fn has_multicolored_clique(g: &ColoredGraph) -> bool {
    let mut pick = vec![0usize; g.k];
    loop {
        let vertices: Vec<usize> = pick.iter().enumerate().map(|(x, &i)| x * g.c + i).collect();
        let clique = vertices.iter().enumerate().all(|(a, &u)| {
            vertices[a + 1..]
                .iter()
                .all(|&v| g.edges.contains(&(u.min(v), u.max(v))))
        });
        if clique {
            return true;
        }
        let mut x = 0;
        loop {
            if x == g.k {
                return false;
            }
            pick[x] += 1;
            if pick[x] < g.c {
                break;
            }
            pick[x] = 0;
            x += 1;
        }
    }
}

pub fn csp_satisfiable(csp: &CspInstance) -> bool {
    let total = csp.alphabet.pow(csp.num_vars as u32);
    (0..total).any(|code| {
        let value = |v: usize| code / csp.alphabet.pow(v as u32) % csp.alphabet;
        csp.constraints
            .iter()
            .all(|c| c.allowed.contains(&(value(c.u), value(c.v))))
    })
}

pub fn exhaustive_violation_min(vars: usize, constraints: &[TwoMonotoneConstraint]) -> u64 {
    (0u32..1 << vars)
        .map(|mask| {
            let x = |i: usize| mask >> i & 1 == 1;
            constraints
                .iter()
                .filter(|c| {
                    let pos = c.positive.as_ref().is_some_and(|p| p.iter().all(|&i| x(i)));
                    let neg = c.negative.as_ref().is_some_and(|n| n.iter().all(|&i| !x(i)));
                    !(pos || neg)
                })
                .map(|c| c.weight)
                .sum()
        })
        .min()
        .unwrap_or(0)
}

pub fn random_constraints(rng: &mut impl Rng, vars: usize, count: usize) -> Vec<TwoMonotoneConstraint> {
    let term = |rng: &mut dyn rand::RngCore| -> Option<Vec<usize>> {
        if rng.random_bool(0.3) {
            return None;
        }
        let len = rng.random_range(1..=vars.min(4));
        let set: BTreeSet<usize> = (0..len).map(|_| rng.random_range(0..vars)).collect();
        Some(set.into_iter().collect())
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (p, n) = (term(rng), term(rng));
        if p.is_some() || n.is_some() {
            out.push(TwoMonotoneConstraint::new(p, n, rng.random_range(1..=5)));
        }
    }
    out
}

/// Contracts each tree edge with probability 1/2. Contracting edges of a
/// tree decomposition keeps it valid and only widens it.
pub fn coarsen(td: &TreeDecomposition, rng: &mut impl Rng) -> TreeDecomposition {
    let n = td.bags.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut kept = Vec::new();
    for &(a, b) in &td.edges {
        if rng.random_bool(0.5) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        } else {
            kept.push((a, b));
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut bags: Vec<BTreeSet<usize>> = Vec::new();
    for b in 0..n {
        let r = find(&mut parent, b);
        if index[r] == usize::MAX {
            index[r] = bags.len();
            bags.push(BTreeSet::new());
        }
        bags[index[r]].extend(td.bags[b].iter().copied());
    }
    let edges = kept
        .into_iter()
        .map(|(a, b)| (index[find(&mut parent, a)], index[find(&mut parent, b)]))
        .collect();
    TreeDecomposition {
        bags: bags.into_iter().map(|b| b.into_iter().collect()).collect(),
        edges,
    }
}

/// Issues `0..m` of domain `d` on a path: every voter conditions issue `j`
/// on issue `j - 1` with random statements, and ballots issue 0
/// unconditionally.
pub fn path_profile(m: usize, d: usize, voters: usize, seed: u64) -> Profile {
    let mut rng = rng(seed);
    let issues = (0..m)
        .map(|j| Issue::new(format!("p{j}"), (0..d).map(|a| format!("a{a}"))))
        .collect();
    let subset = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        let mut s: Vec<usize> = (0..d).filter(|_| rng.random_bool(0.4)).collect();
        if s.is_empty() {
            s.push(rng.random_range(0..d));
        }
        s
    };
    let voters = (0..voters)
        .map(|i| {
            let mut ballot = Ballot::new().with(IssueId(0), IssueBallot::unconditional(subset(&mut rng)));
            for j in 1..m {
                let mut ib = IssueBallot::conditional([IssueId(j - 1)]);
                for a in 0..d {
                    if rng.random_bool(0.8) {
                        ib.add_statement(vec![a], subset(&mut rng));
                    }
                }
                ballot.set(IssueId(j), ib);
            }
            Voter::new(format!("w{i}"), ballot)
        })
        .collect();
    Profile::new(issues, voters).expect("path profile is well formed")
}

pub fn statement_count(profile: &Profile) -> usize {
    profile
        .voters
        .iter()
        .flat_map(|v| v.ballot.entries())
        .map(|(_, ib)| ib.statement_count())
        .sum()
}
