use std::collections::BTreeMap;

use crate::analysis::is_group_dichotomous;
use crate::error::{CmsError, Result};
use crate::model::{IssueBallot, IssueId, Profile};

/// Weighted disjunction of an all-positive conjunction and an
/// all-negative conjunction over binary variables. A missing term is
/// `None`; at least one term is present.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoMonotoneConstraint {
    /// Variables that must all be 1 for the positive term to hold.
    pub positive: Option<Vec<usize>>,
    /// Variables that must all be 0 for the negative term to hold.
    pub negative: Option<Vec<usize>>,
    pub weight: u64,
}

impl TwoMonotoneConstraint {
    pub fn new(positive: Option<Vec<usize>>, negative: Option<Vec<usize>>, weight: u64) -> Self {
        assert!(
            positive.is_some() || negative.is_some(),
            "a 2-monotone constraint needs at least one term"
        );
        let norm = |t: Option<Vec<usize>>| {
            t.map(|mut v| {
                v.sort_unstable();
                v.dedup();
                v
            })
        };
        Self {
            positive: norm(positive),
            negative: norm(negative),
            weight,
        }
    }

    pub fn is_satisfied(&self, x: &[bool]) -> bool {
        self.positive.as_ref().is_some_and(|p| p.iter().all(|&i| x[i]))
            || self.negative.as_ref().is_some_and(|n| n.iter().all(|&i| !x[i]))
    }
}

/// Output of [`compile_constraints`]: for every assignment `x`,
/// `base_cost + weight of violated constraints` equals the total
/// dissatisfaction of the matching outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub num_vars: usize,
    pub constraints: Vec<TwoMonotoneConstraint>,
    pub base_cost: u64,
}

type Terms = (Option<Vec<usize>>, Option<Vec<usize>>);

impl ConstraintSystem {
    pub fn violation_weight(&self, x: &[bool]) -> u64 {
        self.constraints
            .iter()
            .filter(|c| !c.is_satisfied(x))
            .map(|c| c.weight)
            .sum()
    }

    /// Sums weights of constraints with identical terms.
    pub fn merge_duplicates(&mut self) {
        let mut merged: BTreeMap<Terms, u64> = BTreeMap::new();
        for c in self.constraints.drain(..) {
            *merged.entry((c.positive, c.negative)).or_insert(0) += c.weight;
        }
        self.constraints = merged
            .into_iter()
            .map(|((positive, negative), weight)| TwoMonotoneConstraint {
                positive,
                negative,
                weight,
            })
            .collect();
    }
}

/// Lowers a group-dichotomous binary profile to weighted 2-monotone
/// constraints, one per dissatisfiable (voter, issue) pair.
pub fn compile_constraints(profile: &Profile) -> Result<ConstraintSystem> {
    profile.check()?;
    if let Some(j) = profile.issue_ids().find(|&j| profile.domain_size(j) != 2) {
        return Err(CmsError::NotBinary(j));
    }
    is_group_dichotomous(profile).map_err(CmsError::NotGroupDichotomous)?;

    let mut system = ConstraintSystem {
        num_vars: profile.num_issues(),
        constraints: Vec::new(),
        base_cost: 0,
    };
    for voter in &profile.voters {
        for (target, ib) in voter.ballot.entries() {
            match lower(target, ib) {
                Lowered::Nothing => {}
                Lowered::AlwaysViolated => system.base_cost += 1,
                Lowered::Constraint(c) => system.constraints.push(c),
            }
        }
    }
    system.merge_duplicates();
    Ok(system)
}

enum Lowered {
    Nothing,
    AlwaysViolated,
    Constraint(TwoMonotoneConstraint),
}

fn lower(target: IssueId, ib: &IssueBallot) -> Lowered {
    let j = target.index();
    if let Some(approved) = ib.unconditional_approvals() {
        return match (approved.contains(&0), approved.contains(&1)) {
            (true, true) => Lowered::Nothing,
            (true, false) => Lowered::Constraint(TwoMonotoneConstraint::new(None, Some(vec![j]), 1)),
            (false, true) => Lowered::Constraint(TwoMonotoneConstraint::new(Some(vec![j]), None, 1)),
            (false, false) => Lowered::AlwaysViolated,
        };
    }
    let width = ib.scope().len();
    let scope: Vec<usize> = ib.scope().iter().map(|k| k.index()).collect();
    let term = |polarity: usize| {
        ib.approved_for(&vec![polarity; width]).map(|approved| {
            let mut vars = scope.clone();
            // `{0,1}` leaves the target free; a single alternative pins it
            // to the premise polarity.
            if approved.len() == 1 {
                vars.push(j);
            }
            vars
        })
    };
    let negative = term(0);
    let positive = term(1);
    if negative.is_none() && positive.is_none() {
        return Lowered::AlwaysViolated;
    }
    Lowered::Constraint(TwoMonotoneConstraint::new(positive, negative, 1))
}
