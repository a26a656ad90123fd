use std::collections::BTreeSet;

use super::random::tuples;
use super::sources::{CnfFormula, ColoredGraph, CspInstance};
use crate::error::{CmsError, Result};
use crate::model::{Ballot, Issue, IssueBallot, IssueId, Profile, Voter};

/// Largest block of variables packed into one issue.
const MAX_BLOCK_VARS: usize = 20;

fn numbered(name: String, d: usize) -> Issue {
    Issue::new(name, (0..d).map(|a| a.to_string()))
}

/// One issue per block of variables (variable `v` goes to block
/// `(v - 1) % m`, alternative bit `p` is the block's `p`-th variable) and
/// one voter per clause. The clause voter conditions the lowest block it
/// touches on the other blocks it touches. Optimum 0 iff `cnf` is
/// satisfiable.
pub fn gen_from_sat(cnf: &CnfFormula, m: usize) -> Result<Profile> {
    let bad = |msg: String| Err(CmsError::InvalidGeneratorInput(msg));
    if m == 0 || m > cnf.num_vars {
        return bad(format!("{m} blocks for {} variables", cnf.num_vars));
    }
    if cnf.clauses.is_empty() {
        return bad("formula has no clauses, so the profile would have no voters".into());
    }
    let block_len = |j: usize| (cnf.num_vars - j).div_ceil(m);
    if block_len(0) > MAX_BLOCK_VARS {
        return bad(format!("blocks of {} variables exceed {MAX_BLOCK_VARS}", block_len(0)));
    }
    let domains: Vec<usize> = (0..m).map(|j| 1 << block_len(j)).collect();
    let issues = domains
        .iter()
        .enumerate()
        .map(|(j, &d)| numbered(format!("B{j}"), d))
        .collect();

    let block = |lit: i64| (lit.unsigned_abs() as usize - 1) % m;
    let bit = |lit: i64| (lit.unsigned_abs() as usize - 1) / m;
    let holds = |lit: i64, block_value: usize| (block_value >> bit(lit) & 1 == 1) == (lit > 0);

    let mut voters = Vec::with_capacity(cnf.clauses.len());
    for (i, clause) in cnf.clauses.iter().enumerate() {
        let touched: BTreeSet<usize> = clause.iter().map(|&l| block(l)).collect();
        let mut rest = touched.into_iter();
        let j = rest.next().expect("clauses are non-empty");
        let others: Vec<usize> = rest.collect();
        let own: Vec<i64> = clause.iter().copied().filter(|&l| block(l) == j).collect();
        let fixes: Vec<usize> = (0..domains[j]).filter(|&a| own.iter().any(|&l| holds(l, a))).collect();

        let ib = if others.is_empty() {
            IssueBallot::unconditional(fixes)
        } else {
            let mut ib = IssueBallot::conditional(others.iter().map(|&k| IssueId(k)));
            let radices: Vec<usize> = others.iter().map(|&k| domains[k]).collect();
            for premise in tuples(&radices) {
                let satisfied = clause.iter().any(|&l| {
                    others
                        .iter()
                        .position(|&k| k == block(l))
                        .is_some_and(|pos| holds(l, premise[pos]))
                });
                if satisfied {
                    ib.add_statement(premise, 0..domains[j]);
                } else {
                    ib.add_statement(premise, fixes.iter().copied());
                }
            }
            ib
        };
        voters.push(Voter::new(format!("c{}", i + 1), Ballot::new().with(IssueId(j), ib)));
    }
    Profile::new(issues, voters)
}

/// Issue 0 is the special issue `S` with alternatives `P`, `N`; issue
/// `x + 1` picks a vertex of colour `x` by its index within the class.
/// Classes are padded to at least two vertices. The special voter wants
/// `P`; the voter of colours `x < y` approves `P` exactly on the premises
/// that form a cross edge. Optimum 0 iff a multicoloured clique exists.
pub fn gen_from_multicolored_clique(g: &ColoredGraph) -> Result<Profile> {
    let g = g.padded(2);
    let mut issues = vec![Issue::new("S", ["P", "N"])];
    issues.extend((0..g.k).map(|x| numbered(format!("C{x}"), g.c)));

    let mut voters = vec![Voter::new(
        "special",
        Ballot::new().with(IssueId(0), IssueBallot::unconditional([0])),
    )];
    for x in 0..g.k {
        for y in x + 1..g.k {
            let mut ib = IssueBallot::conditional([IssueId(x + 1), IssueId(y + 1)]);
            for &(u, v) in &g.edges {
                if g.color(u) == x && g.color(v) == y {
                    ib.add_statement(vec![u % g.c, v % g.c], [0]);
                }
            }
            voters.push(Voter::new(format!("pair{x}_{y}"), Ballot::new().with(IssueId(0), ib)));
        }
    }
    Profile::new(issues, voters)
}

/// Variable issues `x0..` over the alphabet, then one issue per constraint
/// over value pairs (`a * |Σ| + b`). Each allowed pair gets a voter that
/// pins both variables when the constraint issue takes that pair. One more
/// voter per constraint approves only the allowed pairs, so the constraint
/// issue cannot escape to a forbidden pair; with nothing allowed that voter
/// is dissatisfied whatever happens. Optimum 0 iff `csp` is satisfiable.
pub fn gen_from_2csp(csp: &CspInstance) -> Result<Profile> {
    let s = csp.alphabet;
    let n = csp.num_vars;
    let mut issues: Vec<Issue> = (0..n).map(|v| numbered(format!("x{v}"), s)).collect();
    for (i, _) in csp.constraints.iter().enumerate() {
        let pairs = (0..s).flat_map(|a| (0..s).map(move |b| format!("{a}_{b}")));
        issues.push(Issue::new(format!("c{i}"), pairs));
    }

    let mut voters = Vec::new();
    for (i, c) in csp.constraints.iter().enumerate() {
        let ci = IssueId(n + i);
        let pin = |chosen: usize, value: usize| {
            let mut ib = IssueBallot::conditional([ci]);
            for t in 0..s * s {
                if t == chosen {
                    ib.add_statement(vec![t], [value]);
                } else {
                    ib.add_statement(vec![t], 0..s);
                }
            }
            ib
        };
        for &(a, b) in &c.allowed {
            let ballot = Ballot::new()
                .with(IssueId(c.u), pin(a * s + b, a))
                .with(IssueId(c.v), pin(a * s + b, b));
            voters.push(Voter::new(format!("k{i}_{a}_{b}"), ballot));
        }
        let guard = if c.allowed.is_empty() {
            IssueBallot::conditional([IssueId(c.u)])
        } else {
            IssueBallot::unconditional(c.allowed.iter().map(|&(a, b)| a * s + b))
        };
        voters.push(Voter::new(format!("allowed{i}"), Ballot::new().with(ci, guard)));
    }
    Profile::new(issues, voters)
}

fn agreement(premise: usize) -> IssueBallot {
    IssueBallot::conditional([IssueId(premise)])
        .with_statement(vec![0], [0])
        .with_statement(vec![1], [1])
}

/// `rho * rho` binary issues; issue `r * rho + c` sits at row `r`, column
/// `c`. Voter `rows` chains each row left to right and voter `cols` each
/// column top to bottom, every link asking the later issue to copy the
/// earlier one.
pub fn gen_grid(rho: usize) -> Result<Profile> {
    if rho < 2 {
        return Err(CmsError::InvalidGeneratorInput(format!("grid side {rho} < 2")));
    }
    let at = |r: usize, c: usize| r * rho + c;
    let issues = (0..rho)
        .flat_map(|r| (0..rho).map(move |c| Issue::binary(format!("g{r}_{c}"))))
        .collect();
    let mut rows = Ballot::new();
    let mut cols = Ballot::new();
    for r in 0..rho {
        for c in 1..rho {
            rows.set(IssueId(at(r, c)), agreement(at(r, c - 1)));
            cols.set(IssueId(at(c, r)), agreement(at(c - 1, r)));
        }
    }
    Profile::new(issues, vec![Voter::new("rows", rows), Voter::new("cols", cols)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{build_global_graph, build_voter_graph, is_group_dichotomous, max_in_degree};
    use crate::brute::solve_brute;
    use crate::generators::sources::{random_cnf, random_colored_graph, random_csp, CspConstraint};

    fn optimum(p: &Profile) -> u64 {
        solve_brute(p, 1 << 22).unwrap().cost
    }

    fn sat_by_enumeration(f: &CnfFormula) -> bool {
        (0u64..1 << f.num_vars).any(|bits| {
            f.clauses
                .iter()
                .all(|c| c.iter().any(|&l| CnfFormula::literal_holds(l, bits)))
        })
    }

    fn clique_by_enumeration(g: &ColoredGraph) -> bool {
        let total = g.c.pow(g.k as u32);
        (0..total).any(|mut code| {
            let pick: Vec<usize> = (0..g.k)
                .map(|x| {
                    let v = x * g.c + code % g.c;
                    code /= g.c;
                    v
                })
                .collect();
            pick.iter()
                .enumerate()
                .all(|(i, &u)| pick[i + 1..].iter().all(|&v| g.edges.contains(&(u.min(v), u.max(v)))))
        })
    }

    fn csp_by_enumeration(csp: &CspInstance) -> bool {
        let total = csp.alphabet.pow(csp.num_vars as u32);
        (0..total).any(|mut code| {
            let vals: Vec<usize> = (0..csp.num_vars)
                .map(|_| {
                    let a = code % csp.alphabet;
                    code /= csp.alphabet;
                    a
                })
                .collect();
            csp.constraints
                .iter()
                .all(|c| c.allowed.contains(&(vals[c.u], vals[c.v])))
        })
    }

    #[test]
    fn sat_block_domains() {
        let f = CnfFormula::new(6, vec![vec![1, -4], vec![2, 6]]).unwrap();
        let p = gen_from_sat(&f, 3).unwrap();
        assert_eq!(p.domain_sizes(), vec![4, 4, 4]);
        assert_eq!(p.num_voters(), 2);
    }

    #[test]
    fn sat_small_cases() {
        let unsat = CnfFormula::new(2, vec![vec![1], vec![-1]]).unwrap();
        assert!(optimum(&gen_from_sat(&unsat, 2).unwrap()) >= 1);
        let sat = CnfFormula::new(2, vec![vec![1, 2]]).unwrap();
        assert_eq!(optimum(&gen_from_sat(&sat, 2).unwrap()), 0);
        assert!(gen_from_sat(&sat, 3).is_err());
    }

    #[test]
    fn sat_equivalence_on_random_formulas() {
        for seed in 0..40 {
            let nu = 3 + seed as usize % 5;
            let f = random_cnf(nu, 2 + seed as usize % 9, 3.min(nu), seed).unwrap();
            let p = gen_from_sat(&f, 1 + seed as usize % nu).unwrap();
            assert_eq!(sat_by_enumeration(&f), optimum(&p) == 0, "seed {seed}");
        }
    }

    #[test]
    fn clique_small_cases() {
        // Colours of 2: {0,1}, {2,3}, {4,5}. Triangle 0-2-4.
        let g = ColoredGraph::new(3, 2, [(0, 2), (2, 4), (0, 4), (1, 3)]).unwrap();
        let p = gen_from_multicolored_clique(&g).unwrap();
        assert_eq!((p.num_issues(), p.num_voters()), (4, 4));
        assert_eq!(optimum(&p), 0);
        assert_eq!(max_in_degree(&p), 2);
        for v in 1..p.num_voters() {
            let vg = build_voter_graph(&p, v);
            assert_eq!(vg.in_degree(IssueId(0)), 2);
            assert_eq!(vg.edges.len(), 2);
        }

        let missing = ColoredGraph::new(3, 2, [(0, 2), (2, 4)]).unwrap();
        assert!(optimum(&gen_from_multicolored_clique(&missing).unwrap()) >= 1);
    }

    #[test]
    fn clique_pads_singleton_classes() {
        let g = ColoredGraph::new(2, 1, [(0, 1)]).unwrap();
        let p = gen_from_multicolored_clique(&g).unwrap();
        assert_eq!(p.domain_sizes(), vec![2, 2, 2]);
        assert_eq!(optimum(&p), 0);
    }

    #[test]
    fn clique_equivalence_on_random_graphs() {
        for seed in 0..30 {
            let g = random_colored_graph(3, 1 + seed as usize % 3, 0.5, seed).unwrap();
            let p = gen_from_multicolored_clique(&g).unwrap();
            assert_eq!(clique_by_enumeration(&g), optimum(&p) == 0, "seed {seed}");
        }
    }

    #[test]
    fn csp_counts_and_shape() {
        let c = CspConstraint {
            u: 0,
            v: 1,
            allowed: BTreeSet::from([(0, 1)]),
        };
        let csp = CspInstance::new(2, 2, vec![c]).unwrap();
        let p = gen_from_2csp(&csp).unwrap();
        assert_eq!(p.domain_sizes(), vec![2, 2, 4]);
        let consistency = p.voters.iter().filter(|v| v.name.starts_with('k')).count();
        assert_eq!(consistency, 1);
        assert_eq!(max_in_degree(&p), 1);
        let g = build_voter_graph(&p, 0);
        assert_eq!(g.edges.len(), 2);
        assert!(g.edges.iter().all(|&(from, _)| from == IssueId(2)));
        assert_eq!(optimum(&p), 0);
    }

    #[test]
    fn csp_empty_constraint_is_unsatisfiable() {
        let c = CspConstraint {
            u: 0,
            v: 1,
            allowed: BTreeSet::new(),
        };
        let p = gen_from_2csp(&CspInstance::new(2, 2, vec![c]).unwrap()).unwrap();
        assert_eq!(max_in_degree(&p), 1);
        assert!(optimum(&p) >= 1);
    }

    #[test]
    fn csp_equivalence_on_random_instances() {
        for seed in 0..30 {
            let csp = random_csp(
                2 + seed as usize % 3,
                2 + seed as usize % 2,
                2 + seed as usize % 2,
                0.4,
                seed,
            )
            .unwrap();
            let p = gen_from_2csp(&csp).unwrap();
            assert_eq!(max_in_degree(&p), 1);
            assert_eq!(csp_by_enumeration(&csp), optimum(&p) == 0, "seed {seed}");
        }
    }

    #[test]
    fn grid_shape() {
        let p = gen_grid(3).unwrap();
        assert_eq!(p.num_issues(), 9);
        let g = build_global_graph(&p);
        assert_eq!(g.num_edges(), 12);
        assert!(g.has_edge(0, 1) && g.has_edge(0, 3) && !g.has_edge(0, 4));
        assert!(is_group_dichotomous(&p).is_ok());
        assert_eq!(optimum(&gen_grid(2).unwrap()), 0);
        assert!(gen_grid(1).is_err());
    }
}
