//! Source formats for the clique and CSP reductions.
//!
//! ```text
//! mcgraph 1
//! colors 3 2        # k classes of c vertices; vertex x*c+i is colour x
//! edge 0 2
//! ```
//!
//! ```text
//! csp 1
//! vars 2 alphabet 2
//! constraint 0 1 0,1 1,0   # allowed (value of 0, value of 1) pairs
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{header, keyword_line, number, Lines, ParseError};
use crate::generators::{ColoredGraph, CspConstraint, CspInstance};

pub fn parse_colored_graph(text: &str) -> Result<ColoredGraph, ParseError> {
    let mut lines = Lines::new(text);
    header(&mut lines, "mcgraph")?;
    let (line, tokens) = lines.expect("`colors <k> <c>`")?;
    let args = keyword_line(line, &tokens, "colors", 2)?;
    let k: usize = number(line, args[0], "a colour count")?;
    let c: usize = number(line, args[1], "a class size")?;
    let mut edges = Vec::new();
    for (line, tokens) in lines.by_ref() {
        let args = keyword_line(line, &tokens, "edge", 2)?;
        let (u, v): (usize, usize) = (number(line, args[0], "a vertex")?, number(line, args[1], "a vertex")?);
        // Validate one edge at a time so errors point at the offending line.
        ColoredGraph::new(k, c, [(u, v)]).map_err(|e| ParseError::new(line, e.to_string()))?;
        edges.push((u, v));
    }
    ColoredGraph::new(k, c, edges).map_err(|e| ParseError::new(line, e.to_string()))
}

pub fn serialize_colored_graph(g: &ColoredGraph) -> String {
    let mut out = format!("mcgraph 1\ncolors {} {}\n", g.k, g.c);
    for (u, v) in &g.edges {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}

pub fn parse_csp(text: &str) -> Result<CspInstance, ParseError> {
    let mut lines = Lines::new(text);
    header(&mut lines, "csp")?;
    let (line, tokens) = lines.expect("`vars <n> alphabet <s>`")?;
    let args = keyword_line(line, &tokens, "vars", 3)?;
    if args[1] != "alphabet" {
        return Err(ParseError::new(line, "expected `vars <n> alphabet <s>`"));
    }
    let n: usize = number(line, args[0], "a variable count")?;
    let s: usize = number(line, args[2], "an alphabet size")?;
    let mut constraints = Vec::new();
    for (line, tokens) in lines.by_ref() {
        if tokens[0] != "constraint" || tokens.len() < 3 {
            return Err(ParseError::new(line, "expected `constraint <u> <v> <a>,<b>*`"));
        }
        let mut allowed = BTreeSet::new();
        for pair in &tokens[3..] {
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| ParseError::new(line, format!("malformed pair {pair:?}")))?;
            allowed.insert((number(line, a, "a value")?, number(line, b, "a value")?));
        }
        let c = CspConstraint {
            u: number(line, tokens[1], "a variable")?,
            v: number(line, tokens[2], "a variable")?,
            allowed,
        };
        if c.u >= n || c.v >= n || c.u == c.v || c.allowed.iter().any(|&(a, b)| a >= s || b >= s) {
            return Err(ParseError::new(line, "constraint out of range or on a single variable"));
        }
        constraints.push(c);
    }
    CspInstance::new(n, s, constraints).map_err(|e| ParseError::new(lines.last_line(), e.to_string()))
}

pub fn serialize_csp(csp: &CspInstance) -> String {
    let mut out = format!("csp 1\nvars {} alphabet {}\n", csp.num_vars, csp.alphabet);
    for c in &csp.constraints {
        let _ = write!(out, "constraint {} {}", c.u, c.v);
        for (a, b) in &c.allowed {
            let _ = write!(out, " {a},{b}");
        }
        out.push('\n');
    }
    out
}
