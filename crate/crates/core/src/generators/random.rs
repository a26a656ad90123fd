use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{CmsError, Result};
use crate::model::{AlternativeId, Ballot, Issue, IssueBallot, IssueId, Profile, Voter};

/// Statement tables larger than this are avoided by shrinking the scope.
const MAX_PREMISES: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct RandomParams {
    pub issues: usize,
    pub voters: usize,
    /// Domains are drawn uniformly from `2..=max_domain`.
    pub max_domain: usize,
    pub max_in_degree: usize,
    /// Expected fraction of issues on which a voter casts an explicit ballot.
    pub density: f64,
    /// Binary issues and statements restricted to the all-0 / all-1 shapes.
    pub group_dichotomous: bool,
    pub seed: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            issues: 6,
            voters: 4,
            max_domain: 2,
            max_in_degree: 1,
            density: 0.5,
            group_dichotomous: false,
            seed: 0,
        }
    }
}

/// Seeded random profile. Each voter ballots a Binomial(m, density) number
/// of issues; each ballot draws an in-degree in `0..=max_in_degree`, and each
/// premise tuple gets a statement with probability 3/4.
pub fn gen_random(params: &RandomParams) -> Result<Profile> {
    let bad = |msg: String| Err(CmsError::InvalidGeneratorInput(msg));
    let m = params.issues;
    if m == 0 || params.voters == 0 {
        return bad("need at least one issue and one voter".into());
    }
    if params.max_domain < 2 {
        return bad(format!("max domain {} < 2", params.max_domain));
    }
    if params.group_dichotomous && params.max_domain != 2 {
        return bad("group-dichotomous profiles are binary; set max domain to 2".into());
    }
    let Ok(binomial) = Binomial::new(m as u64, params.density) else {
        return bad(format!("density {} outside [0, 1]", params.density));
    };

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let domains: Vec<usize> = (0..m).map(|_| rng.random_range(2..=params.max_domain)).collect();
    let issues = domains
        .iter()
        .enumerate()
        .map(|(j, &d)| Issue::new(format!("I{j}"), (0..d).map(|a| a.to_string())))
        .collect();
    let max_delta = params.max_in_degree.min(m - 1);

    let mut voters = Vec::with_capacity(params.voters);
    for i in 0..params.voters {
        let count = binomial.sample(&mut rng) as usize;
        let mut targets = index::sample(&mut rng, m, count).into_vec();
        targets.sort_unstable();
        let mut ballot = Ballot::new();
        for j in targets {
            let delta = rng.random_range(0..=max_delta);
            let mut scope: Vec<usize> = index::sample(&mut rng, m - 1, delta)
                .into_iter()
                .map(|k| if k >= j { k + 1 } else { k })
                .collect();
            scope.sort_unstable();
            while scope.iter().map(|&k| domains[k]).product::<usize>() > MAX_PREMISES {
                scope.pop();
            }
            let ib = if scope.is_empty() {
                IssueBallot::unconditional(random_subset(&mut rng, domains[j]))
            } else if params.group_dichotomous {
                let mut ib = IssueBallot::conditional(scope.iter().map(|&k| IssueId(k)));
                for polarity in [0, 1] {
                    if rng.random_bool(0.75) {
                        let approved = if rng.random_bool(0.5) {
                            vec![polarity]
                        } else {
                            vec![0, 1]
                        };
                        ib.add_statement(vec![polarity; scope.len()], approved);
                    }
                }
                ib
            } else {
                let mut ib = IssueBallot::conditional(scope.iter().map(|&k| IssueId(k)));
                let radices: Vec<usize> = scope.iter().map(|&k| domains[k]).collect();
                for premise in tuples(&radices) {
                    if rng.random_bool(0.75) {
                        ib.add_statement(premise, random_subset(&mut rng, domains[j]));
                    }
                }
                ib
            };
            ballot.set(IssueId(j), ib);
        }
        voters.push(Voter::new(format!("v{i}"), ballot));
    }
    Profile::new(issues, voters)
}

/// Non-empty subset of `0..d`, each element kept with probability 1/2.
fn random_subset(rng: &mut impl Rng, d: usize) -> Vec<AlternativeId> {
    let mut s: Vec<usize> = (0..d).filter(|_| rng.random_bool(0.5)).collect();
    if s.is_empty() {
        s.push(rng.random_range(0..d));
    }
    s
}

/// All tuples over `radices` in lexicographic order.
pub(crate) fn tuples(radices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = radices.iter().product();
    (0..total).map(move |mut code| {
        let mut t = vec![0; radices.len()];
        for (slot, &r) in t.iter_mut().zip(radices).rev() {
            *slot = code % r;
            code /= r;
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_group_dichotomous, max_in_degree};

    #[test]
    fn deterministic_per_seed() {
        let p = RandomParams {
            issues: 4,
            voters: 3,
            max_domain: 2,
            max_in_degree: 1,
            seed: 7,
            ..Default::default()
        };
        assert_eq!(gen_random(&p).unwrap(), gen_random(&p).unwrap());
    }

    #[test]
    fn zero_in_degree_is_unconditional() {
        for seed in 0..20 {
            let p = gen_random(&RandomParams {
                max_in_degree: 0,
                density: 1.0,
                max_domain: 4,
                seed,
                ..Default::default()
            })
            .unwrap();
            assert!(p
                .voters
                .iter()
                .all(|v| v.ballot.entries().all(|(_, ib)| ib.is_unconditional())));
        }
    }

    #[test]
    fn respects_in_degree_and_dichotomy() {
        for seed in 0..50 {
            let p = gen_random(&RandomParams {
                issues: 7,
                max_in_degree: 3,
                density: 0.8,
                group_dichotomous: true,
                seed,
                ..Default::default()
            })
            .unwrap();
            assert!(max_in_degree(&p) <= 3);
            assert!(is_group_dichotomous(&p).is_ok(), "seed {seed}");
        }
    }

    #[test]
    fn infeasible_parameters() {
        let base = RandomParams::default();
        assert!(gen_random(&RandomParams {
            issues: 0,
            ..base.clone()
        })
        .is_err());
        assert!(gen_random(&RandomParams {
            max_domain: 1,
            ..base.clone()
        })
        .is_err());
        assert!(gen_random(&RandomParams {
            density: 1.5,
            ..base.clone()
        })
        .is_err());
        assert!(gen_random(&RandomParams {
            group_dichotomous: true,
            max_domain: 3,
            ..base
        })
        .is_err());
    }

    #[test]
    fn tuples_are_lexicographic() {
        let t: Vec<_> = tuples(&[2, 3]).collect();
        assert_eq!(t.len(), 6);
        assert_eq!(t[0], vec![0, 0]);
        assert_eq!(t[1], vec![0, 1]);
        assert_eq!(t[5], vec![1, 2]);
    }
}
