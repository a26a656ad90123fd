//! The profile document:
//!
//! ```text
//! cmsprofile 1
//! issues 2
//! issue A 0 1
//! issue B 0 1
//! voters 1
//! voter v1
//!   approve A 1
//!   cond B if A=1 then 1
//!   cond B if A=0 then 0
//! end
//! ```
//!
//! `scope <target> <issue>+` declares a conditional ballot without
//! statements, which no `cond` line can express. Issues a voter never
//! mentions are approve-all.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::{header, keyword_line, number, Lines, ParseError, ParseWarning};
use crate::model::{is_token, AlternativeId, Ballot, Issue, IssueBallot, IssueId, Profile, Voter};

pub fn parse_profile(text: &str) -> Result<Profile, ParseError> {
    parse_profile_with_warnings(text).map(|(p, _)| p)
}

pub fn parse_profile_with_warnings(text: &str) -> Result<(Profile, Vec<ParseWarning>), ParseError> {
    let mut lines = Lines::new(text);
    header(&mut lines, "cmsprofile")?;

    let (line, tokens) = lines.expect("`issues <count>`")?;
    let m: usize = number(line, keyword_line(line, &tokens, "issues", 1)?[0], "issue count")?;
    let mut issues = Vec::with_capacity(m);
    let mut issue_ids = HashMap::new();
    for j in 0..m {
        let (line, tokens) = lines.expect("`issue <name> <alternative>+`")?;
        if tokens[0] != "issue" {
            return Err(ParseError::new(
                line,
                format!("expected `issue`, found `{}`", tokens[0]),
            ));
        }
        let name = *tokens
            .get(1)
            .ok_or_else(|| ParseError::new(line, "issue without a name"))?;
        check_name(line, name)?;
        if issue_ids.insert(name, IssueId(j)).is_some() {
            return Err(ParseError::new(line, format!("duplicate issue name {name}")));
        }
        let alts = &tokens[2..];
        if alts.len() < 2 {
            return Err(ParseError::new(
                line,
                format!("issue {name} needs at least two alternatives"),
            ));
        }
        for (a, alt) in alts.iter().enumerate() {
            check_name(line, alt)?;
            if alts[..a].contains(alt) {
                return Err(ParseError::new(
                    line,
                    format!("duplicate alternative {alt} of issue {name}"),
                ));
            }
        }
        issues.push(Issue::new(name, alts.iter().copied()));
    }

    let (line, tokens) = lines.expect("`voters <count>`")?;
    let n: usize = number(line, keyword_line(line, &tokens, "voters", 1)?[0], "voter count")?;
    let ctx = Context {
        issues: &issues,
        issue_ids: &issue_ids,
    };
    let mut warnings = Vec::new();
    let mut voters = Vec::with_capacity(n);
    let mut voter_names = HashMap::new();
    for _ in 0..n {
        let (line, tokens) = lines.expect("`voter <name>`")?;
        let name = keyword_line(line, &tokens, "voter", 1)?[0];
        check_name(line, name)?;
        if voter_names.insert(name, line).is_some() {
            return Err(ParseError::new(line, format!("duplicate voter name {name}")));
        }
        let ballot = parse_ballot(&mut lines, &ctx, &mut warnings)?;
        voters.push(Voter::new(name, ballot));
    }
    if let Some((line, tokens)) = lines.next() {
        return Err(ParseError::new(
            line,
            format!("unexpected `{}` after the last voter", tokens[0]),
        ));
    }
    let profile = Profile::new(issues, voters).map_err(|e| ParseError::new(lines.last_line(), e.to_string()))?;
    Ok((profile, warnings))
}

fn check_name(line: usize, name: &str) -> Result<(), ParseError> {
    if is_token(name) {
        Ok(())
    } else {
        Err(ParseError::new(line, format!("invalid name {name:?}")))
    }
}

struct Context<'a> {
    issues: &'a [Issue],
    issue_ids: &'a HashMap<&'a str, IssueId>,
}

impl Context<'_> {
    fn issue(&self, line: usize, name: &str) -> Result<IssueId, ParseError> {
        self.issue_ids
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::new(line, format!("unknown issue {name}")))
    }

    fn alternative(&self, line: usize, issue: IssueId, name: &str) -> Result<AlternativeId, ParseError> {
        let declared = &self.issues[issue.index()];
        declared
            .alternative_index(name)
            .ok_or_else(|| ParseError::new(line, format!("unknown alternative {name} of issue {}", declared.name)))
    }

    fn alternatives(&self, line: usize, issue: IssueId, names: &[&str]) -> Result<Vec<AlternativeId>, ParseError> {
        if names.is_empty() {
            return Err(ParseError::new(line, "empty approval set"));
        }
        names.iter().map(|a| self.alternative(line, issue, a)).collect()
    }
}

#[derive(PartialEq, Eq)]
enum Form {
    Approve,
    Conditional,
}

fn parse_ballot(
    lines: &mut Lines<'_>,
    ctx: &Context<'_>,
    warnings: &mut Vec<ParseWarning>,
) -> Result<Ballot, ParseError> {
    let mut entries: BTreeMap<IssueId, (Form, IssueBallot)> = BTreeMap::new();
    loop {
        let (line, tokens) = lines.expect("ballot line or `end`")?;
        match tokens[0] {
            "end" => {
                keyword_line(line, &tokens, "end", 0)?;
                break;
            }
            "approve" => {
                let target = ctx.issue(line, tokens.get(1).copied().unwrap_or(""))?;
                let approved = ctx.alternatives(line, target, &tokens[2..])?;
                match entries.get_mut(&target) {
                    Some((Form::Conditional, _)) => return Err(mixed(line, ctx, target)),
                    Some((Form::Approve, ib)) => {
                        ib.add_statement(Vec::new(), approved);
                        warnings.push(ParseWarning {
                            line,
                            message: format!("repeated `approve` for {} merged", ctx.issues[target.index()].name),
                        });
                    }
                    None => {
                        entries.insert(target, (Form::Approve, IssueBallot::unconditional(approved)));
                    }
                }
            }
            "cond" => {
                let (target, premise, approved) = parse_cond(line, &tokens, ctx)?;
                let scope: Vec<IssueId> = premise.iter().map(|&(k, _)| k).collect();
                let values: Vec<AlternativeId> = premise.iter().map(|&(_, a)| a).collect();
                let ib = conditional_entry(&mut entries, line, ctx, target, scope)?;
                if ib.add_statement(values, approved) {
                    warnings.push(ParseWarning {
                        line,
                        message: format!(
                            "duplicate premise for {} merged by union",
                            ctx.issues[target.index()].name
                        ),
                    });
                }
            }
            "scope" => {
                let target = ctx.issue(line, tokens.get(1).copied().unwrap_or(""))?;
                if tokens.len() < 3 {
                    return Err(ParseError::new(line, "`scope` needs at least one premise issue"));
                }
                let mut scope = Vec::with_capacity(tokens.len() - 2);
                for name in &tokens[2..] {
                    let k = ctx.issue(line, name)?;
                    premise_issue(line, target, k, &scope)?;
                    scope.push(k);
                }
                scope.sort_unstable();
                conditional_entry(&mut entries, line, ctx, target, scope)?;
            }
            other => return Err(ParseError::new(line, format!("unknown ballot line `{other}`"))),
        }
    }
    let mut ballot = Ballot::new();
    for (target, (_, ib)) in entries {
        ballot.set(target, ib);
    }
    Ok(ballot)
}

fn mixed(line: usize, ctx: &Context<'_>, target: IssueId) -> ParseError {
    ParseError::new(
        line,
        format!(
            "`approve` and `cond` both used for issue {}",
            ctx.issues[target.index()].name
        ),
    )
}

fn premise_issue(line: usize, target: IssueId, k: IssueId, seen: &[IssueId]) -> Result<(), ParseError> {
    if k == target {
        return Err(ParseError::new(line, "self-premise"));
    }
    if seen.contains(&k) {
        return Err(ParseError::new(line, "premise names an issue twice"));
    }
    Ok(())
}

/// Existing conditional ballot for `target`, or a fresh one over `scope`.
fn conditional_entry<'e>(
    entries: &'e mut BTreeMap<IssueId, (Form, IssueBallot)>,
    line: usize,
    ctx: &Context<'_>,
    target: IssueId,
    scope: Vec<IssueId>,
) -> Result<&'e mut IssueBallot, ParseError> {
    let (form, ib) = entries
        .entry(target)
        .or_insert_with(|| (Form::Conditional, IssueBallot::conditional(scope.iter().copied())));
    if *form == Form::Approve {
        return Err(mixed(line, ctx, target));
    }
    if ib.scope() != scope.as_slice() {
        let names = |s: &[IssueId]| {
            s.iter()
                .map(|k| ctx.issues[k.index()].name.as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        return Err(ParseError::new(
            line,
            format!(
                "inconsistent scope for issue {}: {{{}}} here, {{{}}} before",
                ctx.issues[target.index()].name,
                names(&scope),
                names(ib.scope())
            ),
        ));
    }
    Ok(ib)
}

type Cond = (IssueId, Vec<(IssueId, AlternativeId)>, Vec<AlternativeId>);

/// `cond <target> if <issue>=<alt>(,<issue>=<alt>)* then <alt>+`; the
/// premise may also be spread over several tokens.
fn parse_cond(line: usize, tokens: &[&str], ctx: &Context<'_>) -> Result<Cond, ParseError> {
    let target = ctx.issue(line, tokens.get(1).copied().unwrap_or(""))?;
    if tokens.get(2) != Some(&"if") {
        return Err(ParseError::new(line, "expected `if` after the target issue"));
    }
    let then = tokens
        .iter()
        .position(|&t| t == "then")
        .ok_or_else(|| ParseError::new(line, "missing `then`"))?;
    let text = tokens[3..then].concat();
    if text.is_empty() {
        return Err(ParseError::new(line, "empty premise"));
    }
    let mut premise: Vec<(IssueId, AlternativeId)> = Vec::new();
    for part in text.split(',') {
        let (issue, alt) = part
            .split_once('=')
            .ok_or_else(|| ParseError::new(line, format!("malformed premise {part:?}")))?;
        let k = ctx.issue(line, issue)?;
        let seen: Vec<IssueId> = premise.iter().map(|&(i, _)| i).collect();
        premise_issue(line, target, k, &seen)?;
        premise.push((k, ctx.alternative(line, k, alt)?));
    }
    premise.sort_unstable();
    let approved = ctx.alternatives(line, target, &tokens[then + 1..])?;
    Ok((target, premise, approved))
}

/// Canonical form: issues, voters, targets, premises and alternatives in
/// index order.
pub fn serialize_profile(profile: &Profile) -> String {
    let mut out = String::new();
    let name = |k: &IssueId| profile.issues[k.index()].name.as_str();
    let alts = |j: IssueId, set: &mut dyn Iterator<Item = &AlternativeId>| {
        set.map(|&a| profile.issues[j.index()].alternatives[a].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str("cmsprofile 1\n");
    let _ = writeln!(out, "issues {}", profile.num_issues());
    for issue in &profile.issues {
        let _ = writeln!(out, "issue {} {}", issue.name, issue.alternatives.join(" "));
    }
    let _ = writeln!(out, "voters {}", profile.num_voters());
    for voter in &profile.voters {
        let _ = writeln!(out, "voter {}", voter.name);
        for (target, ib) in voter.ballot.entries() {
            if let Some(approved) = ib.unconditional_approvals() {
                let _ = writeln!(
                    out,
                    "  approve {} {}",
                    name(&target),
                    alts(target, &mut approved.iter())
                );
            } else if ib.statement_count() == 0 {
                let scope: Vec<&str> = ib.scope().iter().map(name).collect();
                let _ = writeln!(out, "  scope {} {}", name(&target), scope.join(" "));
            } else {
                for (premise, approved) in ib.statements() {
                    let cond: Vec<String> = ib
                        .scope()
                        .iter()
                        .zip(premise)
                        .map(|(k, &a)| format!("{}={}", name(k), profile.issues[k.index()].alternatives[a]))
                        .collect();
                    let _ = writeln!(
                        out,
                        "  cond {} if {} then {}",
                        name(&target),
                        cond.join(","),
                        alts(target, &mut approved.iter())
                    );
                }
            }
        }
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::p1;

    const P1: &str = "cmsprofile 1
issues 2
issue A 0 1
issue B 0 1
voters 2
voter v1
  approve A 1
  cond B if A=0 then 0
  cond B if A=1 then 1
end
voter v2
  approve A 0
  approve B 0
end
";

    #[test]
    fn p1_document_round_trip() {
        assert_eq!(parse_profile(P1).unwrap(), p1());
        assert_eq!(serialize_profile(&p1()), P1);
    }

    #[test]
    fn self_premise_is_rejected() {
        let text = P1.replace("cond B if A=0 then 0", "cond B if B=1 then 0");
        let err = parse_profile(&text).unwrap_err();
        assert_eq!(err.line, 8);
        assert!(err.message.contains("self-premise"), "{err}");
    }

    #[test]
    fn omitted_issue_is_approve_all() {
        let text = "cmsprofile 1\nissues 2\nissue A 0 1\nissue B 0 1\nvoters 1\nvoter v\napprove A 1\nend\n";
        let p = parse_profile(text).unwrap();
        assert!(p.voters[0].ballot.get(IssueId(1)).is_none());
    }

    #[test]
    fn duplicate_premise_merges_with_warning() {
        let text = P1.replace("cond B if A=1 then 1", "cond B if A=0 then 1");
        let (p, warnings) = parse_profile_with_warnings(&text).unwrap();
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].line, 9);
        let ib = p.voters[0].ballot.get(IssueId(1)).unwrap();
        assert_eq!(ib.approved_for(&[0]).unwrap().len(), 2);
    }

    #[test]
    fn line_accurate_errors() {
        let cases = [
            ("cond B if A=0 then 0", "cond B if A=0 then 7", 8, "unknown alternative"),
            ("cond B if A=0 then 0", "cond B if A=0", 8, "missing `then`"),
            ("cond B if A=0 then 0", "approve B 0", 9, "both used"),
            ("cond B if A=0 then 0", "cond Z if A=0 then 0", 8, "unknown issue"),
            ("issue B 0 1", "issue B 0", 4, "at least two"),
            ("issue B 0 1", "issue A 0 1", 4, "duplicate issue"),
            ("voter v2", "voter v1", 11, "duplicate voter"),
            ("approve B 0\n", "approve B\n", 13, "empty approval"),
            ("voters 2", "voters 3", 15, "end of input"),
        ];
        for (from, to, line, needle) in cases {
            let err = parse_profile(&P1.replacen(from, to, 1)).unwrap_err();
            assert_eq!(err.line, line, "{to}: {err}");
            assert!(err.message.contains(needle), "{to}: {err}");
        }
    }

    #[test]
    fn inconsistent_scope() {
        let text = "cmsprofile 1\nissues 3\nissue A 0 1\nissue B 0 1\nissue C 0 1\nvoters 1\nvoter v\n\
                    cond C if A=0 then 0\ncond C if A=0,B=1 then 1\nend\n";
        let err = parse_profile(text).unwrap_err();
        assert_eq!(err.line, 9);
        assert!(err.message.contains("inconsistent scope"));
    }

    #[test]
    fn premise_order_and_crlf_do_not_matter() {
        let text = "cmsprofile 1\r\nissues 3\r\nissue A 0 1\r\nissue B 0 1\r\nissue C x y z\r\nvoters 1\r\nvoter v\r\n\
                    cond C if B=1, A=0 then z x # comment\r\nend\r\n";
        let p = parse_profile(text).unwrap();
        let ib = p.voters[0].ballot.get(IssueId(2)).unwrap();
        assert_eq!(ib.scope(), &[IssueId(0), IssueId(1)]);
        assert_eq!(
            ib.approved_for(&[0, 1]).unwrap().iter().copied().collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert!(serialize_profile(&p).contains("cond C if A=0,B=1 then x z\n"));
    }

    #[test]
    fn scope_line_round_trips() {
        let text = "cmsprofile 1\nissues 2\nissue A 0 1\nissue B 0 1\nvoters 1\nvoter v\n  scope B A\nend\n";
        let p = parse_profile(text).unwrap();
        assert_eq!(p.voters[0].ballot.get(IssueId(1)).unwrap().statement_count(), 0);
        assert_eq!(serialize_profile(&p), text);
    }

    #[test]
    fn trailing_content_is_rejected() {
        assert_eq!(parse_profile(&format!("{P1}voter v3\n")).unwrap_err().line, 15);
    }
}
