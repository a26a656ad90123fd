use std::fmt;

use crate::model::{AlternativeId, IssueId, Profile};

/// First statement (in voter, issue, premise order) that breaks
/// group-dichotomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyViolation {
    pub voter: usize,
    pub issue: IssueId,
    pub premise: Vec<(IssueId, AlternativeId)>,
    pub reason: DichotomyReason,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DichotomyReason {
    /// The target or a premise issue is not binary.
    NonBinaryIssue(IssueId),
    /// Premise is neither all-0 nor all-1.
    MixedPremise,
    /// Approval set is `{1}` under the all-0 premise or `{0}` under the
    /// all-1 premise.
    MisalignedApproval,
}

impl fmt::Display for DichotomyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premise = self
            .premise
            .iter()
            .map(|(k, a)| format!("{k}={a}"))
            .collect::<Vec<_>>()
            .join(",");
        let why = match self.reason {
            DichotomyReason::NonBinaryIssue(i) => format!("issue {i} is not binary"),
            DichotomyReason::MixedPremise => "premise is neither all-0 nor all-1".to_string(),
            DichotomyReason::MisalignedApproval => "approval set contradicts premise polarity".to_string(),
        };
        write!(
            f,
            "voter {} issue {} premise [{}]: {}",
            self.voter, self.issue, premise, why
        )
    }
}

/// Checks every conditional statement against the three admissible
/// shapes: `{0..0 : 0}`, `{1..1 : 1}`, and `{0..0 or 1..1 : {0,1}}`.
/// Unconditional ballots are unrestricted. Labels are taken as declared.
pub fn is_group_dichotomous(profile: &Profile) -> Result<(), DichotomyViolation> {
    check_dichotomy(profile, |_| true)
}

/// Same as [`is_group_dichotomous`], limited to ballots whose target
/// satisfies `include`.
pub(crate) fn check_dichotomy(profile: &Profile, include: impl Fn(IssueId) -> bool) -> Result<(), DichotomyViolation> {
    for (v, voter) in profile.voters.iter().enumerate() {
        for (target, ib) in voter.ballot.entries() {
            if ib.is_unconditional() || !include(target) {
                continue;
            }
            let fail = |premise: &[AlternativeId], reason| DichotomyViolation {
                voter: v,
                issue: target,
                premise: ib.scope().iter().copied().zip(premise.iter().copied()).collect(),
                reason,
            };
            let non_binary = std::iter::once(target)
                .chain(ib.scope().iter().copied())
                .find(|&i| profile.domain_size(i) != 2);
            if let Some(bad) = non_binary {
                if let Some((premise, _)) = ib.statements().next() {
                    return Err(fail(premise, DichotomyReason::NonBinaryIssue(bad)));
                }
                continue;
            }
            for (premise, approved) in ib.statements() {
                let polarity = if premise.iter().all(|&a| a == 0) {
                    0
                } else if premise.iter().all(|&a| a == 1) {
                    1
                } else {
                    return Err(fail(premise, DichotomyReason::MixedPremise));
                };
                let aligned = approved.len() == 2 || approved.contains(&polarity);
                if !aligned {
                    return Err(fail(premise, DichotomyReason::MisalignedApproval));
                }
            }
        }
    }
    Ok(())
}
