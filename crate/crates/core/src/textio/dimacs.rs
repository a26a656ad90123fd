use std::fmt::Write as _;

use super::{number, ParseError};
use crate::generators::CnfFormula;

/// DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>` line, then
/// `0`-terminated clauses that may span lines. A `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut problem: Option<(usize, usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if problem.is_some() {
                return Err(ParseError::new(line, "second problem line"));
            }
            if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "cnf" {
                return Err(ParseError::new(line, "expected `p cnf <variables> <clauses>`"));
            }
            problem = Some((
                number(line, tokens[2], "a variable count")?,
                number(line, tokens[3], "a clause count")?,
                line,
            ));
            continue;
        }
        let Some((vars, _, _)) = problem else {
            return Err(ParseError::new(line, "clause before the `p cnf` line"));
        };
        for token in trimmed.split_whitespace() {
            let lit: i64 = number(line, token, "a literal")?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(ParseError::new(line, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(ParseError::new(line, format!("literal {lit} out of range 1..={vars}")));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, expected, p_line) = problem.ok_or_else(|| ParseError::new(last.max(1), "missing `p cnf` line"))?;
    if !current.is_empty() {
        return Err(ParseError::new(last, "last clause is not terminated by 0"));
    }
    if clauses.len() != expected {
        return Err(ParseError::new(
            p_line,
            format!("header declares {expected} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses).map_err(|e| ParseError::new(p_line, e.to_string()))
}

pub fn serialize_dimacs(cnf: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.clauses.len());
    for clause in &cnf.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}
