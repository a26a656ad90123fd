//! Shared unit-test fixtures.

use crate::model::{Ballot, Issue, IssueBallot, IssueId, Profile, Voter};

/// Binary issues A, B. v1 approves A=1 and conditions B on A
/// (`{A=1 : 1}`, `{A=0 : 0}`); v2 approves A=0 and B=0.
pub(crate) fn p1() -> Profile {
    let a = IssueId(0);
    let b = IssueId(1);
    let v1 = Ballot::new().with(a, IssueBallot::unconditional([1])).with(
        b,
        IssueBallot::conditional([a])
            .with_statement(vec![1], [1])
            .with_statement(vec![0], [0]),
    );
    let v2 = Ballot::new()
        .with(a, IssueBallot::unconditional([0]))
        .with(b, IssueBallot::unconditional([0]));
    Profile::new(
        vec![Issue::binary("A"), Issue::binary("B")],
        vec![Voter::new("v1", v1), Voter::new("v2", v2)],
    )
    .unwrap()
}

pub(crate) fn approve_all(m: usize, n: usize) -> Profile {
    Profile::new(
        (0..m).map(|j| Issue::binary(format!("I{j}"))).collect(),
        (0..n).map(|i| Voter::new(format!("v{i}"), Ballot::new())).collect(),
    )
    .unwrap()
}
