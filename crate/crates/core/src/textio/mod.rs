//! Line-oriented text formats. Every format shares the same lexical rules:
//! `#` starts a comment, tokens are separated by whitespace, blank lines
//! are ignored and CRLF is accepted. Output always uses LF.

mod dimacs;
mod profile;
mod solution;
mod sources;

pub use dimacs::{parse_dimacs, serialize_dimacs};
pub use profile::{parse_profile, parse_profile_with_warnings, serialize_profile};
pub use solution::{parse_solution, serialize_solution, SolutionDocument};
pub use sources::{parse_colored_graph, parse_csp, serialize_colored_graph, serialize_csp};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// First problem found in a document; `line` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Accepted but suspicious input, such as a repeated premise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: warning: {}", self.line, self.message)
    }
}

/// Non-empty lines as `(line number, tokens)`.
pub(crate) struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Line number of the most recent line, for end-of-input errors.
    pub(crate) fn last_line(&self) -> usize {
        self.last
    }

    pub(crate) fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.next()
            .ok_or_else(|| ParseError::new(self.last + 1, format!("unexpected end of input, expected {what}")))
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            self.last = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((i + 1, tokens));
            }
        }
        None
    }
}

pub(crate) fn number<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected {what}, found {token:?}")))
}

/// Checks `tokens` is `keyword` followed by exactly `args` arguments.
pub(crate) fn keyword_line<'a>(
    line: usize,
    tokens: &[&'a str],
    keyword: &str,
    args: usize,
) -> Result<Vec<&'a str>, ParseError> {
    if tokens.first() != Some(&keyword) {
        return Err(ParseError::new(
            line,
            format!(
                "expected `{keyword}`, found `{}`",
                tokens.first().copied().unwrap_or("")
            ),
        ));
    }
    if tokens.len() != args + 1 {
        return Err(ParseError::new(
            line,
            format!("`{keyword}` takes {args} argument(s), found {}", tokens.len() - 1),
        ));
    }
    Ok(tokens[1..].to_vec())
}

pub(crate) fn header(lines: &mut Lines<'_>, magic: &str) -> Result<(), ParseError> {
    let (line, tokens) = lines.expect(&format!("`{magic} 1` header"))?;
    if tokens != [magic, "1"] {
        return Err(ParseError::new(line, format!("expected header `{magic} 1`")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexer_skips_comments_blanks_and_crlf() {
        let text = "# head\r\n\r\n  a b # tail\r\nc\n";
        let got: Vec<_> = Lines::new(text).collect();
        assert_eq!(got, vec![(3, vec!["a", "b"]), (4, vec!["c"])]);
    }

    #[test]
    fn keyword_arity() {
        assert!(keyword_line(1, &["issues", "3"], "issues", 1).is_ok());
        assert!(keyword_line(1, &["issues"], "issues", 1).is_err());
        assert!(keyword_line(1, &["voters", "3"], "issues", 1).is_err());
    }
}
