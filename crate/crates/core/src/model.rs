//! Election data model: issues with finite domains, voters casting
//! conditional approval ballots, and outcomes.
//!
//! A ballot is stored sparsely. Issues without an explicit [`IssueBallot`]
//! are approve-all, which is also what an issue omitted from a profile
//! document means. [`Profile::canonicalize`] removes explicit approve-all
//! entries so that equal ballots compare equal.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{CmsError, Result};

/// Index of an issue in [`Profile::issues`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IssueId(pub usize);

impl IssueId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for IssueId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Index into one issue's domain, in declaration order. Only meaningful
/// together with the issue it belongs to; for binary issues 0 and 1 are
/// the `0` and `1` alternatives.
pub type AlternativeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub name: String,
    pub alternatives: Vec<String>,
}

impl Issue {
    pub fn new<S: Into<String>>(name: S, alternatives: impl IntoIterator<Item = S>) -> Self {
        Self {
            name: name.into(),
            alternatives: alternatives.into_iter().map(Into::into).collect(),
        }
    }

    /// Binary issue with alternatives named `0` and `1`.
    pub fn binary<S: Into<String>>(name: S) -> Self {
        Self {
            name: name.into(),
            alternatives: vec!["0".into(), "1".into()],
        }
    }

    #[inline]
    pub fn domain_size(&self) -> usize {
        self.alternatives.len()
    }

    pub fn alternative_index(&self, name: &str) -> Option<AlternativeId> {
        self.alternatives.iter().position(|a| a == name)
    }
}

/// One conditional approval statement `{premise : approved}` viewed with
/// explicit issue ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub premise: Vec<(IssueId, AlternativeId)>,
    pub approved: BTreeSet<AlternativeId>,
}

/// A voter's ballot restricted to one target issue.
///
/// `scope` holds the in-neighbours of the target in the voter's dependency
/// graph, sorted. Statements are keyed by the premise tuple, which lists
/// one alternative per scope issue in scope order. An unconditional ballot
/// has an empty scope and exactly one statement keyed by the empty tuple.
/// A conditional ballot may have no statements at all, in which case the
/// voter is dissatisfied with the target under every outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IssueBallot {
    scope: Vec<IssueId>,
    statements: BTreeMap<Vec<AlternativeId>, BTreeSet<AlternativeId>>,
}

impl IssueBallot {
    pub fn unconditional(approved: impl IntoIterator<Item = AlternativeId>) -> Self {
        let mut statements = BTreeMap::new();
        statements.insert(Vec::new(), approved.into_iter().collect());
        Self {
            scope: Vec::new(),
            statements,
        }
    }

    /// Conditional ballot over `scope` with no statements yet. The scope is
    /// sorted and deduplicated.
    pub fn conditional(scope: impl IntoIterator<Item = IssueId>) -> Self {
        let mut scope: Vec<IssueId> = scope.into_iter().collect();
        scope.sort_unstable();
        scope.dedup();
        Self {
            scope,
            statements: BTreeMap::new(),
        }
    }

    /// Adds `{premise : approved}`. A statement with an identical premise is
    /// merged by union; the return value reports whether that happened.
    pub fn add_statement(
        &mut self,
        premise: Vec<AlternativeId>,
        approved: impl IntoIterator<Item = AlternativeId>,
    ) -> bool {
        let mut merged = true;
        let entry = self.statements.entry(premise).or_insert_with(|| {
            merged = false;
            BTreeSet::new()
        });
        entry.extend(approved);
        merged
    }

    pub fn with_statement(
        mut self,
        premise: Vec<AlternativeId>,
        approved: impl IntoIterator<Item = AlternativeId>,
    ) -> Self {
        self.add_statement(premise, approved);
        self
    }

    pub fn scope(&self) -> &[IssueId] {
        &self.scope
    }

    pub fn is_unconditional(&self) -> bool {
        self.scope.is_empty()
    }

    pub fn statement_count(&self) -> usize {
        self.statements.len()
    }

    /// Premise tuples (in scope order) with their approval sets.
    pub fn statements(&self) -> impl Iterator<Item = (&[AlternativeId], &BTreeSet<AlternativeId>)> + '_ {
        self.statements.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Statements with the scope issue attached to each premise value.
    pub fn statements_with_issues(&self) -> impl Iterator<Item = Statement> + '_ {
        self.statements.iter().map(|(premise, approved)| Statement {
            premise: self.scope.iter().copied().zip(premise.iter().copied()).collect(),
            approved: approved.clone(),
        })
    }

    pub fn approved_for(&self, premise: &[AlternativeId]) -> Option<&BTreeSet<AlternativeId>> {
        self.statements.get(premise)
    }

    /// Approval set of an unconditional ballot.
    pub fn unconditional_approvals(&self) -> Option<&BTreeSet<AlternativeId>> {
        if self.scope.is_empty() {
            self.statements.get(&[][..])
        } else {
            None
        }
    }

    /// Satisfaction with the target issue under a full assignment `values`.
    pub fn is_satisfied_by(&self, target: IssueId, values: &[AlternativeId]) -> bool {
        let chosen = values[target.index()];
        if self.scope.is_empty() {
            return self
                .statements
                .get(&[][..])
                .is_some_and(|approved| approved.contains(&chosen));
        }
        let mut key = [0usize; 8];
        let premise: Vec<AlternativeId>;
        let premise_ref: &[AlternativeId] = if self.scope.len() <= key.len() {
            for (slot, issue) in key.iter_mut().zip(&self.scope) {
                *slot = values[issue.index()];
            }
            &key[..self.scope.len()]
        } else {
            premise = self.scope.iter().map(|k| values[k.index()]).collect();
            &premise
        };
        self.statements
            .get(premise_ref)
            .is_some_and(|approved| approved.contains(&chosen))
    }

    /// True for an unconditional ballot approving every alternative of a
    /// domain of the given size.
    pub fn is_approve_all(&self, domain_size: usize) -> bool {
        self.unconditional_approvals()
            .is_some_and(|a| a.len() == domain_size && a.iter().all(|&x| x < domain_size))
    }

    fn remap(&self, issue_map: &[Option<usize>]) -> Self {
        let renamed: Vec<IssueId> = self
            .scope
            .iter()
            .map(|k| IssueId(issue_map[k.index()].expect("scope issue outside restriction")))
            .collect();
        // Keep scope sorted; premise tuples follow the same permutation.
        let mut order: Vec<usize> = (0..renamed.len()).collect();
        order.sort_by_key(|&p| renamed[p]);
        Self {
            scope: order.iter().map(|&p| renamed[p]).collect(),
            statements: self
                .statements
                .iter()
                .map(|(premise, approved)| (order.iter().map(|&p| premise[p]).collect(), approved.clone()))
                .collect(),
        }
    }
}

/// A voter's ballot over all issues. Issues without an entry are
/// approve-all.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ballot {
    entries: BTreeMap<IssueId, IssueBallot>,
}

impl Ballot {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, issue: IssueId, ballot: IssueBallot) {
        self.entries.insert(issue, ballot);
    }

    pub fn with(mut self, issue: IssueId, ballot: IssueBallot) -> Self {
        self.set(issue, ballot);
        self
    }

    /// The explicit ballot for `issue`, or `None` when the voter approves
    /// every alternative unconditionally.
    pub fn get(&self, issue: IssueId) -> Option<&IssueBallot> {
        self.entries.get(&issue)
    }

    pub fn get_mut(&mut self, issue: IssueId) -> Option<&mut IssueBallot> {
        self.entries.get_mut(&issue)
    }

    pub fn entries(&self) -> impl Iterator<Item = (IssueId, &IssueBallot)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Voter {
    pub name: String,
    pub ballot: Ballot,
}

impl Voter {
    pub fn new(name: impl Into<String>, ballot: Ballot) -> Self {
        Self {
            name: name.into(),
            ballot,
        }
    }
}

/// A conditional approval election.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub issues: Vec<Issue>,
    pub voters: Vec<Voter>,
}

impl Profile {
    /// Builds a profile, canonicalizes it and rejects it if any invariant
    /// is violated.
    pub fn new(issues: Vec<Issue>, voters: Vec<Voter>) -> Result<Self> {
        let mut profile = Self { issues, voters };
        profile.canonicalize();
        profile.check()?;
        Ok(profile)
    }

    #[inline]
    pub fn num_issues(&self) -> usize {
        self.issues.len()
    }

    #[inline]
    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    #[inline]
    pub fn domain_size(&self, issue: IssueId) -> usize {
        self.issues[issue.index()].domain_size()
    }

    pub fn domain_sizes(&self) -> Vec<usize> {
        self.issues.iter().map(Issue::domain_size).collect()
    }

    pub fn max_domain_size(&self) -> usize {
        self.issues.iter().map(Issue::domain_size).max().unwrap_or(0)
    }

    pub fn issue_ids(&self) -> impl Iterator<Item = IssueId> {
        (0..self.issues.len()).map(IssueId)
    }

    pub fn issue_index(&self, name: &str) -> Option<IssueId> {
        self.issues.iter().position(|i| i.name == name).map(IssueId)
    }

    pub fn is_all_binary(&self) -> bool {
        self.issues.iter().all(|i| i.domain_size() == 2)
    }

    /// Number of outcomes, saturating at `u128::MAX`.
    pub fn outcome_space(&self) -> u128 {
        outcome_space(self.issues.iter().map(Issue::domain_size))
    }

    /// Drops explicit unconditional approve-all entries, which are the
    /// implicit default.
    pub fn canonicalize(&mut self) {
        let sizes = self.domain_sizes();
        for voter in &mut self.voters {
            voter
                .ballot
                .entries
                .retain(|issue, ib| sizes.get(issue.index()).is_none_or(|&size| !ib.is_approve_all(size)));
        }
    }

    /// Every invariant violation, with voter/issue coordinates.
    pub fn validate(&self) -> Vec<Violation> {
        validate_profile(self)
    }

    pub fn check(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(CmsError::InvalidProfile(violations))
        }
    }

    /// Sub-election over `issues`, which must be closed under every
    /// voter's dependencies (for example a connected component of the
    /// global dependency graph). Issues are renumbered in the given order.
    pub fn restrict(&self, issues: &[IssueId]) -> Profile {
        let mut map = vec![None; self.num_issues()];
        for (new, old) in issues.iter().enumerate() {
            map[old.index()] = Some(new);
        }
        let voters = self
            .voters
            .iter()
            .map(|v| {
                let mut ballot = Ballot::new();
                for (issue, ib) in v.ballot.entries() {
                    if let Some(new) = map[issue.index()] {
                        ballot.set(IssueId(new), ib.remap(&map));
                    }
                }
                Voter::new(v.name.clone(), ballot)
            })
            .collect();
        Profile {
            issues: issues.iter().map(|i| self.issues[i.index()].clone()).collect(),
            voters,
        }
    }

    /// [`restrict`](Self::restrict) to several disjoint closed issue sets
    /// in one pass. A part keeps only the voters with an explicit ballot on
    /// one of its issues, since the rest are satisfied there whatever
    /// happens; a part nobody ballots keeps the first voter.
    pub fn split(&self, parts: &[Vec<IssueId>]) -> Vec<Profile> {
        let mut part_of = vec![usize::MAX; self.num_issues()];
        let mut map = vec![None; self.num_issues()];
        for (p, issues) in parts.iter().enumerate() {
            for (new, old) in issues.iter().enumerate() {
                part_of[old.index()] = p;
                map[old.index()] = Some(new);
            }
        }
        let mut voters: Vec<Vec<Voter>> = vec![Vec::new(); parts.len()];
        let mut touched = Vec::new();
        let mut ballots: Vec<Ballot> = vec![Ballot::new(); parts.len()];
        for v in &self.voters {
            for (issue, ib) in v.ballot.entries() {
                let p = part_of[issue.index()];
                if p == usize::MAX {
                    continue;
                }
                if ballots[p].is_empty() {
                    touched.push(p);
                }
                ballots[p].set(IssueId(map[issue.index()].expect("mapped")), ib.remap(&map));
            }
            for p in touched.drain(..) {
                voters[p].push(Voter::new(v.name.clone(), std::mem::take(&mut ballots[p])));
            }
        }
        parts
            .iter()
            .zip(voters)
            .map(|(issues, mut voters)| {
                if voters.is_empty() {
                    if let Some(first) = self.voters.first() {
                        voters.push(Voter::new(first.name.clone(), Ballot::new()));
                    }
                }
                Profile {
                    issues: issues.iter().map(|i| self.issues[i.index()].clone()).collect(),
                    voters,
                }
            })
            .collect()
    }
}

pub(crate) fn outcome_space(sizes: impl IntoIterator<Item = usize>) -> u128 {
    sizes.into_iter().fold(1u128, |acc, d| acc.saturating_mul(d as u128))
}

/// One alternative per issue.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Outcome(Vec<AlternativeId>);

impl Outcome {
    pub fn new(assignment: Vec<AlternativeId>) -> Self {
        Self(assignment)
    }

    pub fn zeros(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn as_slice(&self) -> &[AlternativeId] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<AlternativeId> {
        self.0
    }

    #[inline]
    pub fn get(&self, issue: IssueId) -> AlternativeId {
        self.0[issue.index()]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks length and per-issue range against `profile`.
    pub fn check_against(&self, profile: &Profile) -> Result<()> {
        if self.0.len() != profile.num_issues() {
            return Err(CmsError::InvalidOutcome(format!(
                "expected {} entries, got {}",
                profile.num_issues(),
                self.0.len()
            )));
        }
        for (j, (&alt, issue)) in self.0.iter().zip(&profile.issues).enumerate() {
            if alt >= issue.domain_size() {
                return Err(CmsError::InvalidOutcome(format!(
                    "alternative {alt} out of range for issue {} (#{j})",
                    issue.name
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    NoIssues,
    NoVoters,
    DomainTooSmall(usize),
    /// Empty, or not usable as a single token of the text format.
    InvalidName(String),
    DuplicateIssueName(String),
    DuplicateAlternativeName(String),
    DuplicateVoterName(String),
    IssueOutOfRange(usize),
    SelfPremise,
    InconsistentScope {
        expected: usize,
        found: usize,
    },
    AlternativeOutOfRange {
        issue: IssueId,
        alternative: AlternativeId,
    },
    EmptyApprovalSet,
    MissingUnconditionalStatement,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoIssues => f.write_str("no issues"),
            Self::NoVoters => f.write_str("no voters"),
            Self::DomainTooSmall(n) => write!(f, "domain too small ({n} alternatives)"),
            Self::InvalidName(n) => write!(f, "invalid name {n:?}"),
            Self::DuplicateIssueName(n) => write!(f, "duplicate issue name {n}"),
            Self::DuplicateAlternativeName(n) => write!(f, "duplicate alternative name {n}"),
            Self::DuplicateVoterName(n) => write!(f, "duplicate voter name {n}"),
            Self::IssueOutOfRange(i) => write!(f, "issue index {i} out of range"),
            Self::SelfPremise => f.write_str("self-premise"),
            Self::InconsistentScope { expected, found } => write!(
                f,
                "inconsistent scope (premise has {found} values, scope has {expected} issues)"
            ),
            Self::AlternativeOutOfRange { issue, alternative } => {
                write!(f, "alternative {alternative} out of range for issue {issue}")
            }
            Self::EmptyApprovalSet => f.write_str("empty approval set"),
            Self::MissingUnconditionalStatement => f.write_str("unconditional ballot must hold exactly one statement"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub voter: Option<usize>,
    pub issue: Option<IssueId>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        match (self.voter, self.issue) {
            (Some(v), Some(i)) => write!(f, " (voter {v}, issue {i})"),
            (Some(v), None) => write!(f, " (voter {v})"),
            (None, Some(i)) => write!(f, " (issue {i})"),
            (None, None) => Ok(()),
        }
    }
}

/// Names travel as whitespace-separated tokens, so they may not contain
/// whitespace or the format's punctuation.
pub fn is_token(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || matches!(c, '=' | ',' | '#'))
}

/// Lists every invariant violation of `profile`; an empty list means the
/// profile is well formed.
pub fn validate_profile(profile: &Profile) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |voter, issue, kind| out.push(Violation { voter, issue, kind });

    if profile.issues.is_empty() {
        push(None, None, ViolationKind::NoIssues);
    }
    if profile.voters.is_empty() {
        push(None, None, ViolationKind::NoVoters);
    }

    let mut issue_names = HashSet::new();
    for (j, issue) in profile.issues.iter().enumerate() {
        let id = Some(IssueId(j));
        if !is_token(&issue.name) {
            push(None, id, ViolationKind::InvalidName(issue.name.clone()));
        }
        if !issue_names.insert(issue.name.as_str()) {
            push(None, id, ViolationKind::DuplicateIssueName(issue.name.clone()));
        }
        if issue.domain_size() < 2 {
            push(None, id, ViolationKind::DomainTooSmall(issue.domain_size()));
        }
        let mut alt_names = HashSet::new();
        for alt in &issue.alternatives {
            if !is_token(alt) {
                push(None, id, ViolationKind::InvalidName(alt.clone()));
            }
            if !alt_names.insert(alt.as_str()) {
                push(None, id, ViolationKind::DuplicateAlternativeName(alt.clone()));
            }
        }
    }

    let m = profile.num_issues();
    let mut voter_names = HashSet::new();
    for (v, voter) in profile.voters.iter().enumerate() {
        if !is_token(&voter.name) {
            push(Some(v), None, ViolationKind::InvalidName(voter.name.clone()));
        }
        if !voter_names.insert(voter.name.as_str()) {
            push(Some(v), None, ViolationKind::DuplicateVoterName(voter.name.clone()));
        }
        for (target, ib) in voter.ballot.entries() {
            if target.index() >= m {
                push(Some(v), Some(target), ViolationKind::IssueOutOfRange(target.index()));
                continue;
            }
            let coords = (Some(v), Some(target));
            let mut scope_ok = true;
            for &k in ib.scope() {
                if k == target {
                    push(coords.0, coords.1, ViolationKind::SelfPremise);
                    scope_ok = false;
                } else if k.index() >= m {
                    push(coords.0, coords.1, ViolationKind::IssueOutOfRange(k.index()));
                    scope_ok = false;
                }
            }
            if ib.is_unconditional() && ib.statement_count() != 1 {
                push(coords.0, coords.1, ViolationKind::MissingUnconditionalStatement);
            }
            let target_size = profile.issues[target.index()].domain_size();
            for (premise, approved) in ib.statements() {
                if premise.len() != ib.scope().len() {
                    push(
                        coords.0,
                        coords.1,
                        ViolationKind::InconsistentScope {
                            expected: ib.scope().len(),
                            found: premise.len(),
                        },
                    );
                } else if scope_ok {
                    for (&k, &alt) in ib.scope().iter().zip(premise) {
                        if alt >= profile.issues[k.index()].domain_size() {
                            push(
                                coords.0,
                                coords.1,
                                ViolationKind::AlternativeOutOfRange {
                                    issue: k,
                                    alternative: alt,
                                },
                            );
                        }
                    }
                }
                if approved.is_empty() {
                    push(coords.0, coords.1, ViolationKind::EmptyApprovalSet);
                }
                if let Some(&bad) = approved.iter().find(|&&a| a >= target_size) {
                    push(
                        coords.0,
                        coords.1,
                        ViolationKind::AlternativeOutOfRange {
                            issue: target,
                            alternative: bad,
                        },
                    );
                }
            }
        }
    }
    out
}
