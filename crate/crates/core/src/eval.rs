//! Dissatisfaction semantics.
//!
//! Voter `i` is satisfied with issue `j` under outcome `r` iff their ballot
//! for `j` holds a statement whose premise equals `r` projected onto the
//! premise scope and whose approval set contains `r[j]`. A premise tuple
//! with no statement leaves the voter dissatisfied.

use crate::error::{CmsError, Result};
use crate::model::{IssueId, Outcome, Profile};

pub fn is_satisfied(profile: &Profile, voter: usize, issue: IssueId, outcome: &Outcome) -> Result<bool> {
    check_voter(profile, voter)?;
    if issue.index() >= profile.num_issues() {
        return Err(CmsError::IssueOutOfRange {
            index: issue.index(),
            count: profile.num_issues(),
        });
    }
    outcome.check_against(profile)?;
    Ok(satisfied_unchecked(profile, voter, issue, outcome))
}

#[inline]
fn satisfied_unchecked(profile: &Profile, voter: usize, issue: IssueId, outcome: &Outcome) -> bool {
    match profile.voters[voter].ballot.get(issue) {
        None => true,
        Some(ib) => ib.is_satisfied_by(issue, outcome.as_slice()),
    }
}

/// Number of issues on which `voter` disagrees with `outcome`.
pub fn voter_dissatisfaction(profile: &Profile, voter: usize, outcome: &Outcome) -> Result<usize> {
    check_voter(profile, voter)?;
    outcome.check_against(profile)?;
    Ok(voter_unchecked(profile, voter, outcome))
}

fn voter_unchecked(profile: &Profile, voter: usize, outcome: &Outcome) -> usize {
    profile.voters[voter]
        .ballot
        .entries()
        .filter(|(issue, ib)| !ib.is_satisfied_by(*issue, outcome.as_slice()))
        .count()
}

/// Sum of every voter's dissatisfaction.
pub fn total_dissatisfaction(profile: &Profile, outcome: &Outcome) -> Result<usize> {
    outcome.check_against(profile)?;
    Ok((0..profile.num_voters())
        .map(|v| voter_unchecked(profile, v, outcome))
        .sum())
}

/// Per-voter dissatisfaction vector.
pub fn dissatisfaction_by_voter(profile: &Profile, outcome: &Outcome) -> Result<Vec<usize>> {
    outcome.check_against(profile)?;
    Ok((0..profile.num_voters())
        .map(|v| voter_unchecked(profile, v, outcome))
        .collect())
}

fn check_voter(profile: &Profile, voter: usize) -> Result<()> {
    if voter >= profile.num_voters() {
        return Err(CmsError::VoterOutOfRange {
            index: voter,
            count: profile.num_voters(),
        });
    }
    Ok(())
}
