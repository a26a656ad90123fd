//! Exact winner determination for Conditional Minisum approval voting.
//!
//! Voters cast conditional approval ballots over interdependent issues; the
//! rule picks an outcome minimizing the number of (voter, issue) pairs where
//! the voter's applicable statement does not approve the chosen alternative.
//!
//! Three exact solvers are provided: exhaustive search ([`solve_brute`]), an
//! s-t minimum cut for binary group-dichotomous profiles ([`solve_mincut`]),
//! and dynamic programming over a tree decomposition when every ballot
//! depends on at most one other issue ([`solve_treewidth`]). [`solve`]
//! analyses a profile, splits it into independent components and routes
//! each to an applicable solver.

pub mod analysis;
pub mod brute;
pub mod dispatch;
pub mod error;
pub mod eval;
pub mod generators;
pub mod mincut;
pub mod model;
pub mod solution;
pub mod textio;
pub mod treewidth;

#[cfg(test)]
mod fixtures;

pub use analysis::{classify, AnalysisReport, ClassifyConfig, Route};
pub use brute::solve_brute;
pub use dispatch::{solve, solve_majority, MethodChoice, SolveConfig, SolveReport};
pub use error::{CmsError, Result};
pub use eval::{dissatisfaction_by_voter, is_satisfied, total_dissatisfaction, voter_dissatisfaction};
pub use mincut::solve_mincut;
pub use model::{
    validate_profile, AlternativeId, Ballot, Issue, IssueBallot, IssueId, Outcome, Profile, Statement, Violation,
    ViolationKind, Voter,
};
pub use solution::{Method, Solution};
pub use treewidth::{solve_treewidth, solve_treewidth_heuristic};
