//! Instance builders shared by the criterion benchmarks.

use cms_core::generators::{gen_grid, gen_random, RandomParams};
use cms_core::{Ballot, Issue, IssueBallot, IssueId, Profile, Voter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Binary group-dichotomous profile with about `statements_per_voter`
/// explicit ballots per voter, the min-cut solver's home ground.
pub fn dichotomous(issues: usize, voters: usize, statements_per_voter: f64, seed: u64) -> Profile {
    gen_random(&RandomParams {
        issues,
        voters,
        max_domain: 2,
        max_in_degree: 2,
        density: (statements_per_voter / issues as f64).min(1.0),
        group_dichotomous: true,
        seed,
    })
    .expect("valid parameters")
}

/// Multi-valued profile with in-degree at most one.
pub fn single_premise(issues: usize, voters: usize, domain: usize, seed: u64) -> Profile {
    gen_random(&RandomParams {
        issues,
        voters,
        max_domain: domain,
        max_in_degree: 1,
        density: 0.5,
        group_dichotomous: false,
        seed,
    })
    .expect("valid parameters")
}

/// Issues on a path, each conditioned on its predecessor by every voter:
/// width 1 however large `issues` grows.
pub fn path(issues: usize, voters: usize, domain: usize, seed: u64) -> Profile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subset = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        let mut s: Vec<usize> = (0..domain).filter(|_| rng.random_bool(0.4)).collect();
        if s.is_empty() {
            s.push(rng.random_range(0..domain));
        }
        s
    };
    let voters = (0..voters)
        .map(|i| {
            let mut ballot = Ballot::new().with(IssueId(0), IssueBallot::unconditional(subset(&mut rng)));
            for j in 1..issues {
                let mut ib = IssueBallot::conditional([IssueId(j - 1)]);
                for a in 0..domain {
                    ib.add_statement(vec![a], subset(&mut rng));
                }
                ballot.set(IssueId(j), ib);
            }
            Voter::new(format!("w{i}"), ballot)
        })
        .collect();
    let issues = (0..issues)
        .map(|j| Issue::new(format!("p{j}"), (0..domain).map(|a| a.to_string())))
        .collect();
    Profile::new(issues, voters).expect("path profile is well formed")
}

/// `rho` x `rho` grid: one component of width `rho`.
pub fn grid(rho: usize) -> Profile {
    gen_grid(rho).expect("rho is positive")
}
