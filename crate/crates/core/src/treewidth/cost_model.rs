use std::collections::BTreeMap;

use crate::analysis::max_in_degree;
use crate::error::{CmsError, Result};
use crate::model::Profile;

/// Total dissatisfaction of a profile with in-degree at most 1, split into
/// per-issue and per-edge tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostModel {
    pub domains: Vec<usize>,
    /// `unary[j][a]`: voters dissatisfied with issue `j` when it takes `a`,
    /// from unconditional ballots.
    pub unary: Vec<Vec<u64>>,
    /// Keyed by `(lo, hi)` with `lo < hi`; entry `a_lo * domains[hi] + a_hi`
    /// sums the conditional dissatisfaction over both directions.
    pub binary: BTreeMap<(usize, usize), Vec<u64>>,
}

impl CostModel {
    #[inline]
    pub fn pair_cost(&self, u: usize, a_u: usize, v: usize, a_v: usize) -> u64 {
        let (key, lo_val, hi_val) = if u < v { ((u, v), a_u, a_v) } else { ((v, u), a_v, a_u) };
        self.binary
            .get(&key)
            .map_or(0, |t| t[lo_val * self.domains[key.1] + hi_val])
    }

    /// Model-side evaluation of a full assignment.
    pub fn evaluate(&self, values: &[usize]) -> u64 {
        let unary: u64 = self.unary.iter().zip(values).map(|(t, &a)| t[a]).sum();
        let binary: u64 = self
            .binary
            .iter()
            .map(|(&(lo, hi), t)| t[values[lo] * self.domains[hi] + values[hi]])
            .sum();
        unary + binary
    }

    /// Neighbour lists of the edges carrying a binary table.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.domains.len()];
        for &(lo, hi) in self.binary.keys() {
            adj[lo].push(hi);
            adj[hi].push(lo);
        }
        adj
    }
}

pub fn compile_cost_model(profile: &Profile) -> Result<CostModel> {
    profile.check()?;
    let delta = max_in_degree(profile);
    if delta > 1 {
        return Err(CmsError::DeltaTooLarge(delta));
    }
    let domains = profile.domain_sizes();
    let mut unary: Vec<Vec<u64>> = domains.iter().map(|&d| vec![0; d]).collect();
    let mut binary: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();

    for voter in &profile.voters {
        for (target, ib) in voter.ballot.entries() {
            let j = target.index();
            match ib.scope() {
                [] => {
                    let approved = ib.unconditional_approvals();
                    for (a, cost) in unary[j].iter_mut().enumerate() {
                        if !approved.is_some_and(|s| s.contains(&a)) {
                            *cost += 1;
                        }
                    }
                }
                [k] => {
                    let k = k.index();
                    let (lo, hi) = (k.min(j), k.max(j));
                    let table = binary
                        .entry((lo, hi))
                        .or_insert_with(|| vec![0; domains[lo] * domains[hi]]);
                    for ak in 0..domains[k] {
                        let approved = ib.approved_for(&[ak]);
                        for aj in 0..domains[j] {
                            if !approved.is_some_and(|s| s.contains(&aj)) {
                                let (a_lo, a_hi) = if k < j { (ak, aj) } else { (aj, ak) };
                                table[a_lo * domains[hi] + a_hi] += 1;
                            }
                        }
                    }
                }
                _ => unreachable!("in-degree checked above"),
            }
        }
    }
    Ok(CostModel { domains, unary, binary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{approve_all, p1};
    use crate::model::{Ballot, Issue, IssueBallot, IssueId, Voter};

    #[test]
    fn p1_tables() {
        let m = compile_cost_model(&p1()).unwrap();
        // A: v1 unhappy at 0, v2 unhappy at 1. B: v2 unhappy at 1.
        assert_eq!(m.unary, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(m.binary.get(&(0, 1)), Some(&vec![0, 1, 1, 0]));
    }

    #[test]
    fn unconditional_profile_has_no_binary_tables() {
        assert!(compile_cost_model(&approve_all(3, 2)).unwrap().binary.is_empty());
    }

    #[test]
    fn opposite_directions_share_one_table() {
        // x: B depends on A, wants B = A. y: A depends on B, wants A=1 when B=0.
        let x = Ballot::new().with(
            IssueId(1),
            IssueBallot::conditional([IssueId(0)])
                .with_statement(vec![0], [0])
                .with_statement(vec![1], [1]),
        );
        let y = Ballot::new().with(
            IssueId(0),
            IssueBallot::conditional([IssueId(1)]).with_statement(vec![0], [1]),
        );
        let p = Profile::new(
            vec![Issue::binary("A"), Issue::binary("B")],
            vec![Voter::new("x", x), Voter::new("y", y)],
        )
        .unwrap();
        let m = compile_cost_model(&p).unwrap();
        // x contributes [0,1,1,0]; y is satisfied only at (A=1,B=0): [1,1,0,1].
        assert_eq!(m.binary.len(), 1);
        assert_eq!(m.binary[&(0, 1)], vec![1, 2, 1, 1]);
    }

    #[test]
    fn rejects_two_premises() {
        let b = Ballot::new().with(
            IssueId(2),
            IssueBallot::conditional([IssueId(0), IssueId(1)]).with_statement(vec![0, 0], [0]),
        );
        let p = Profile::new(
            vec![Issue::binary("A"), Issue::binary("B"), Issue::binary("C")],
            vec![Voter::new("v", b)],
        )
        .unwrap();
        assert!(matches!(compile_cost_model(&p), Err(CmsError::DeltaTooLarge(2))));
    }
}
