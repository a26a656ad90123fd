//! Exhaustive solver; the reference every other solver is checked against.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{CmsError, Result};
use crate::model::{Outcome, Profile};
use crate::solution::{Method, Solution};

const DENSE_LIMIT: u64 = 1 << 16;
const SEQUENTIAL_LIMIT: u64 = 1 << 14;

enum Lookup {
    /// Indexed by `premise_code * target_domain + alternative`.
    Dense(Vec<bool>),
    Sparse(HashMap<u64, Vec<bool>>),
}

/// One (voter, issue) ballot lowered to integer premise codes.
struct Entry {
    target: usize,
    scope: Vec<usize>,
    strides: Vec<u64>,
    target_domain: usize,
    lookup: Lookup,
}

impl Entry {
    fn compile(profile: &Profile, target: usize, ib: &crate::model::IssueBallot) -> Self {
        let scope: Vec<usize> = ib.scope().iter().map(|k| k.index()).collect();
        let mut strides = vec![0u64; scope.len()];
        let mut combos = 1u64;
        for (i, &k) in scope.iter().enumerate().rev() {
            strides[i] = combos;
            combos = combos.saturating_mul(profile.issues[k].domain_size() as u64);
        }
        let target_domain = profile.issues[target].domain_size();
        let code = |premise: &[usize]| premise.iter().zip(&strides).map(|(&a, &s)| a as u64 * s).sum::<u64>();
        let lookup = if combos.saturating_mul(target_domain as u64) <= DENSE_LIMIT {
            let mut table = vec![false; combos as usize * target_domain];
            for (premise, approved) in ib.statements() {
                let base = code(premise) as usize * target_domain;
                for &a in approved {
                    table[base + a] = true;
                }
            }
            Lookup::Dense(table)
        } else {
            let mut map = HashMap::new();
            for (premise, approved) in ib.statements() {
                let mut row = vec![false; target_domain];
                for &a in approved {
                    row[a] = true;
                }
                map.insert(code(premise), row);
            }
            Lookup::Sparse(map)
        };
        Self {
            target,
            scope,
            strides,
            target_domain,
            lookup,
        }
    }

    #[inline]
    fn satisfied(&self, values: &[usize]) -> bool {
        let code: u64 = self
            .scope
            .iter()
            .zip(&self.strides)
            .map(|(&k, &s)| values[k] as u64 * s)
            .sum();
        let alt = values[self.target];
        match &self.lookup {
            Lookup::Dense(t) => t[code as usize * self.target_domain + alt],
            Lookup::Sparse(m) => m.get(&code).is_some_and(|row| row[alt]),
        }
    }
}

/// Optimal outcome by enumerating every outcome in lexicographic order;
/// ties go to the lexicographically smallest assignment.
pub fn solve_brute(profile: &Profile, budget: u64) -> Result<Solution> {
    profile.check()?;
    let space = profile.outcome_space();
    if space > budget as u128 {
        return Err(CmsError::BudgetExceeded { space, budget });
    }
    let total = space as u64;
    let radices = profile.domain_sizes();
    let entries: Vec<Entry> = profile
        .voters
        .iter()
        .flat_map(|v| v.ballot.entries())
        .map(|(j, ib)| Entry::compile(profile, j.index(), ib))
        .collect();

    let (cost, index) = if total <= SEQUENTIAL_LIMIT {
        scan(&entries, &radices, 0, total)
    } else {
        let chunks = (rayon::current_num_threads() as u64 * 8).min(total);
        let step = total.div_ceil(chunks);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * step;
                scan(&entries, &radices, start, step.min(total.saturating_sub(start)))
            })
            .min()
            .expect("at least one chunk")
    };

    let outcome = Outcome::new(decode(index, &radices));
    Solution::verified(profile, outcome, cost, Method::Brute)
}

/// Mixed-radix digits of `index`, last issue least significant.
fn decode(mut index: u64, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (d, &r) in digits.iter_mut().zip(radices).rev() {
        *d = (index % r as u64) as usize;
        index /= r as u64;
    }
    digits
}

/// Best `(cost, index)` over outcomes `start..start + count`; the first
/// minimum wins.
fn scan(entries: &[Entry], radices: &[usize], start: u64, count: u64) -> (u64, u64) {
    let mut best = (u64::MAX, u64::MAX);
    if count == 0 {
        return best;
    }
    let mut values = decode(start, radices);
    for offset in 0..count {
        let mut cost = 0u64;
        for e in entries {
            if !e.satisfied(&values) {
                cost += 1;
                if cost >= best.0 {
                    break;
                }
            }
        }
        if cost < best.0 {
            best = (cost, start + offset);
        }
        for (d, &r) in values.iter_mut().zip(radices).rev() {
            *d += 1;
            if *d < r {
                break;
            }
            *d = 0;
        }
    }
    best
}
