use std::fmt;

use crate::error::{CmsError, Result};
use crate::eval::dissatisfaction_by_voter;
use crate::model::{Outcome, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    MinCut,
    Treewidth,
    Majority,
    /// Components solved separately and merged.
    Componentwise,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::MinCut => "mincut",
            Method::Treewidth => "treewidth",
            Method::Majority => "majority",
            Method::Componentwise => "componentwise",
        })
    }
}

/// An optimal outcome with its total and per-voter dissatisfaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub outcome: Outcome,
    pub cost: u64,
    pub method: Method,
    pub per_voter: Vec<usize>,
}

impl Solution {
    /// Recomputes the outcome's dissatisfaction and fails with
    /// [`CmsError::InternalMismatch`] if it differs from `claimed`.
    pub(crate) fn verified(profile: &Profile, outcome: Outcome, claimed: u64, method: Method) -> Result<Self> {
        let per_voter = dissatisfaction_by_voter(profile, &outcome)?;
        let actual = per_voter.iter().sum::<usize>() as u64;
        if actual != claimed {
            return Err(CmsError::InternalMismatch {
                solver: match method {
                    Method::Brute => "brute-force solver",
                    Method::MinCut => "min-cut solver",
                    Method::Treewidth => "tree decomposition solver",
                    Method::Majority => "majority rule",
                    Method::Componentwise => "component merge",
                },
                claimed,
                actual,
            });
        }
        Ok(Self {
            outcome,
            cost: claimed,
            method,
            per_voter,
        })
    }
}
