//! The solution document:
//!
//! ```text
//! cmssolution 1
//! cost 1
//! assign A 0
//! assign B 0
//! voter v1 dissat 1
//! voter v2 dissat 0
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{header, keyword_line, number, Lines, ParseError};
use crate::model::{Outcome, Profile};
use crate::solution::Solution;

/// Syntactic content of a solution document. Names are resolved against a
/// profile by [`SolutionDocument::outcome`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionDocument {
    pub cost: u64,
    /// `(line, issue, alternative)`.
    pub assignments: Vec<(usize, String, String)>,
    /// `(line, voter, dissatisfaction)`.
    pub voters: Vec<(usize, String, u64)>,
    last_line: usize,
}

impl SolutionDocument {
    /// The assigned outcome; every issue must be assigned exactly once.
    pub fn outcome(&self, profile: &Profile) -> Result<Outcome, ParseError> {
        let mut values = vec![None; profile.num_issues()];
        for (line, issue, alt) in &self.assignments {
            let j = profile
                .issue_index(issue)
                .ok_or_else(|| ParseError::new(*line, format!("unknown issue {issue}")))?;
            let a = profile.issues[j.index()]
                .alternative_index(alt)
                .ok_or_else(|| ParseError::new(*line, format!("unknown alternative {alt} of issue {issue}")))?;
            if values[j.index()].replace(a).is_some() {
                return Err(ParseError::new(*line, format!("issue {issue} assigned twice")));
            }
        }
        values
            .iter()
            .enumerate()
            .map(|(j, v)| {
                v.ok_or_else(|| {
                    ParseError::new(
                        self.last_line,
                        format!("issue {} is not assigned", profile.issues[j].name),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Outcome::new)
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionDocument, ParseError> {
    let mut lines = Lines::new(text);
    header(&mut lines, "cmssolution")?;
    let (line, tokens) = lines.expect("`cost <int>`")?;
    let cost = number(line, keyword_line(line, &tokens, "cost", 1)?[0], "a non-negative cost")?;
    let mut doc = SolutionDocument {
        cost,
        assignments: Vec::new(),
        voters: Vec::new(),
        last_line: line,
    };
    for (line, tokens) in lines.by_ref() {
        match tokens[0] {
            "assign" => {
                let args = keyword_line(line, &tokens, "assign", 2)?;
                doc.assignments.push((line, args[0].to_owned(), args[1].to_owned()));
            }
            "voter" => {
                let args = keyword_line(line, &tokens, "voter", 3)?;
                if args[1] != "dissat" {
                    return Err(ParseError::new(line, "expected `voter <name> dissat <int>`"));
                }
                doc.voters.push((
                    line,
                    args[0].to_owned(),
                    number(line, args[2], "a dissatisfaction count")?,
                ));
            }
            other => return Err(ParseError::new(line, format!("unknown solution line `{other}`"))),
        }
    }
    doc.last_line = lines.last_line();
    let mut seen = HashMap::new();
    for (line, name, _) in &doc.voters {
        if seen.insert(name.as_str(), *line).is_some() {
            return Err(ParseError::new(*line, format!("voter {name} listed twice")));
        }
    }
    Ok(doc)
}

pub fn serialize_solution(profile: &Profile, solution: &Solution) -> String {
    let mut out = String::from("cmssolution 1\n");
    let _ = writeln!(out, "cost {}", solution.cost);
    for (issue, &a) in profile.issues.iter().zip(solution.outcome.as_slice()) {
        let _ = writeln!(out, "assign {} {}", issue.name, issue.alternatives[a]);
    }
    for (voter, d) in profile.voters.iter().zip(&solution.per_voter) {
        let _ = writeln!(out, "voter {} dissat {d}", voter.name);
    }
    out
}
