use thiserror::Error;

use crate::analysis::{AnalysisReport, DichotomyViolation};
use crate::model::{IssueId, Violation};
use crate::textio::ParseError;

pub type Result<T, E = CmsError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CmsError {
    #[error("invalid profile: {}", format_violations(.0))]
    InvalidProfile(Vec<Violation>),

    #[error("invalid outcome: {0}")]
    InvalidOutcome(String),

    #[error("voter index {index} out of range (profile has {count} voters)")]
    VoterOutOfRange { index: usize, count: usize },

    #[error("issue index {index} out of range (profile has {count} issues)")]
    IssueOutOfRange { index: usize, count: usize },

    #[error("outcome space of {space} exceeds the brute-force budget of {budget}")]
    BudgetExceeded { space: u128, budget: u64 },

    #[error("profile is not group-dichotomous: {0}")]
    NotGroupDichotomous(DichotomyViolation),

    #[error("issue {0} is not binary")]
    NotBinary(IssueId),

    #[error("maximum in-degree {0} exceeds 1")]
    DeltaTooLarge(usize),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("{solver} reported cost {claimed} but the outcome evaluates to {actual}")]
    InternalMismatch {
        solver: &'static str,
        claimed: u64,
        actual: u64,
    },

    #[error("solvers disagree on component {component}: {details}")]
    CrossValidationMismatch { component: usize, details: String },

    #[error("method {method} is not applicable: {reason}")]
    MethodNotApplicable {
        method: &'static str,
        reason: String,
        report: Box<AnalysisReport>,
    },

    #[error("no exact solver applies to component {component}")]
    Intractable {
        component: usize,
        report: Box<AnalysisReport>,
    },

    #[error("invalid generator input: {0}")]
    InvalidGeneratorInput(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
