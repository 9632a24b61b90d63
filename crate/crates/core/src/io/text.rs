//! Line-oriented problem files.
//!
//! ```text
//! # comments run to end of line
//! max: 0.5 x1 + x2 + 2 x3
//! R1: 2.1 x1 + 3 x2 + x3 <= 5.2
//! R6: x1 >= 0
//! ```
//!
//! The first non-blank line is the objective (`max:` or `min:`); every later
//! line is `<name>: <terms> (<=|>=) <number>`. A term is `[number] x<k>` with
//! `k ≥ 1`. The dimension is the highest index used anywhere, and rows that do
//! not mention a variable get a zero coefficient for it, so `max: x1` with
//! `r1: x9 <= 1` is a 9-variable problem. Row names must be non-empty and free
//! of whitespace, `:` and `#`.

use std::fmt::{self, Write as _};

use crate::model::{default_label, Constraint, ObjectiveSense, Problem, Sense};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unknown variable `{0}` (expected x1, x2, ...)")]
    UnknownVariable(String),
    #[error("objective has no terms")]
    EmptyObjective,
    #[error("the first line must be `max:` or `min:`")]
    MissingObjective,
    #[error("a second objective line")]
    DuplicateObjective,
    #[error("expected `<name>:`")]
    MissingName,
    #[error("expected a term like `2.5 x1`")]
    ExpectedTerm,
    #[error("expected a variable after the coefficient")]
    ExpectedVariable,
    #[error("expected `<=` or `>=`")]
    ExpectedRelation,
    #[error("equality rows are not supported; write them as a `<=` and `>=` pair")]
    Equality,
    #[error("expected a number")]
    ExpectedNumber,
    #[error("unexpected `{0}`")]
    Trailing(char),
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    /// column of `chars[0]`, 1-based
    offset: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, offset: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, offset, line }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.offset + self.pos, kind }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<f64> {
        self.skip_ws();
        let start = self.pos;
        let digits = |cur: &mut Self| {
            let s = cur.pos;
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.pos += 1;
            }
            cur.pos > s
        };
        let int = digits(self);
        let frac = if self.peek() == Some('.') {
            self.pos += 1;
            digits(self)
        } else {
            false
        };
        if !int && !frac {
            self.pos = start;
            return None;
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            if !digits(self) {
                self.pos = mark;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().ok()
    }

    fn signed_number(&mut self) -> Result<f64, ParseError> {
        let sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        self.number().map(|v| sign * v).ok_or_else(|| self.error(ParseErrorKind::ExpectedNumber))
    }

    /// `x<k>` as a 0-based index.
    fn variable(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(ParseErrorKind::ExpectedVariable));
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        let index = word
            .strip_prefix('x')
            .filter(|k| !k.starts_with('0'))
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1);
        index.map(|k| k - 1).ok_or(ParseError {
            line: self.line,
            column: self.offset + start,
            kind: ParseErrorKind::UnknownVariable(word),
        })
    }

    /// `[sign] [number] ['*'] x<k>`
    fn term(&mut self, sign: f64) -> Result<(usize, f64), ParseError> {
        self.skip_ws();
        let sign = if self.eat('-') {
            -sign
        } else {
            self.eat('+');
            sign
        };
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let coef = self.number().ok_or_else(|| self.error(ParseErrorKind::ExpectedTerm))?;
                self.eat('*');
                self.skip_ws();
                if !self.peek().is_some_and(char::is_alphabetic) {
                    return Err(self.error(ParseErrorKind::ExpectedVariable));
                }
                Ok((self.variable()?, sign * coef))
            }
            Some(c) if c.is_alphabetic() => Ok((self.variable()?, sign)),
            _ => Err(self.error(ParseErrorKind::ExpectedTerm)),
        }
    }

    /// Terms up to (not including) a relation or end of line.
    fn expression(&mut self) -> Result<Vec<(usize, f64)>, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        if self.at_relation_or_end() {
            return Ok(terms);
        }
        terms.push(self.term(1.0)?);
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => 1.0,
                Some('-') => -1.0,
                _ => return Ok(terms),
            };
            self.pos += 1;
            terms.push(self.term(sign)?);
        }
    }

    fn at_relation_or_end(&self) -> bool {
        matches!(self.peek(), None | Some('<' | '>' | '='))
    }

    fn relation(&mut self) -> Result<Sense, ParseError> {
        self.skip_ws();
        let rest: String = self.chars[self.pos..].iter().take(2).collect();
        let sense = match rest.as_str() {
            "<=" | "=<" => Sense::Le,
            ">=" | "=>" => Sense::Ge,
            s if s.starts_with('=') => return Err(self.error(ParseErrorKind::Equality)),
            _ => return Err(self.error(ParseErrorKind::ExpectedRelation)),
        };
        self.pos += 2;
        Ok(sense)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(ParseErrorKind::Trailing(c))),
        }
    }
}

fn dense(terms: &[(usize, f64)], n: usize) -> Vec<f64> {
    // repeated variables add up; a single term keeps its exact value, including -0
    let mut v: Vec<Option<f64>> = vec![None; n];
    for &(k, a) in terms {
        v[k] = Some(v[k].map_or(a, |s| s + a));
    }
    v.into_iter().map(|a| a.unwrap_or(0.0)).collect()
}

struct RawRow {
    name: String,
    terms: Vec<(usize, f64)>,
    sense: Sense,
    rhs: f64,
}

/// Parses a problem file. The result is not validated beyond the grammar;
/// see [`crate::model::validate`].
pub fn parse_problem_text(text: &str) -> Result<Problem, ParseError> {
    let mut objective: Option<(ObjectiveSense, Vec<(usize, f64)>)> = None;
    let mut rows: Vec<RawRow> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let lead = body.len() - body.trim_start().len();
        let Some(colon) = body.find(':') else {
            let kind = if objective.is_none() { ParseErrorKind::MissingObjective } else { ParseErrorKind::MissingName };
            return Err(ParseError { line, column: lead + 1, kind });
        };
        let name = body[..colon].trim();
        let name_col = lead + 1;
        let rest_col = body[..=colon].chars().count() + 1;
        let mut cur = Cursor::new(&body[colon + 1..], line, rest_col);
        let head = name.to_ascii_lowercase();
        let sense = match head.as_str() {
            "max" => Some(ObjectiveSense::Maximize),
            "min" => Some(ObjectiveSense::Minimize),
            _ => None,
        };
        match (sense, objective.is_some()) {
            (Some(sense), false) => {
                let terms = cur.expression()?;
                cur.finish()?;
                if terms.is_empty() {
                    return Err(ParseError { line, column: rest_col, kind: ParseErrorKind::EmptyObjective });
                }
                objective = Some((sense, terms));
            }
            (Some(_), true) => {
                return Err(ParseError { line, column: name_col, kind: ParseErrorKind::DuplicateObjective })
            }
            (None, false) => {
                return Err(ParseError { line, column: name_col, kind: ParseErrorKind::MissingObjective })
            }
            (None, true) => {
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(ParseError { line, column: name_col, kind: ParseErrorKind::MissingName });
                }
                let terms = cur.expression()?;
                if terms.is_empty() {
                    return Err(cur.error(ParseErrorKind::ExpectedTerm));
                }
                let sense = cur.relation()?;
                let rhs = cur.signed_number()?;
                cur.finish()?;
                rows.push(RawRow { name: name.to_string(), terms, sense, rhs });
            }
        }
    }
    let Some((sense, objective)) = objective else {
        return Err(ParseError { line: text.lines().count().max(1), column: 1, kind: ParseErrorKind::MissingObjective });
    };
    let n = objective
        .iter()
        .chain(rows.iter().flat_map(|r| r.terms.iter()))
        .map(|&(k, _)| k + 1)
        .max()
        .unwrap_or(0);
    let constraints = rows
        .into_iter()
        .map(|r| Constraint { name: r.name, coeffs: dense(&r.terms, n), sense: r.sense, rhs: r.rhs })
        .collect();
    let c = dense(&objective, n);
    Ok(match sense {
        ObjectiveSense::Maximize => Problem::new(c, constraints),
        ObjectiveSense::Minimize => Problem::minimize(c, constraints),
    })
}

/// Shortest text that parses back to exactly `v` (non-negative input).
fn number(v: f64) -> String {
    if v == 0.0 || (1e-5..1e16).contains(&v) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn write_terms(out: &mut String, coeffs: &[f64]) -> fmt::Result {
    for (k, &a) in coeffs.iter().enumerate() {
        let negative = a.is_sign_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        write!(out, "{} x{}", number(a.abs()), k + 1)?;
    }
    Ok(())
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.contains(|c: char| c.is_whitespace() || c == ':' || c == '#')
        && !matches!(name.to_ascii_lowercase().as_str(), "max" | "min")
}

/// Writes `problem` in the file grammar, every coefficient included.
/// Names that the grammar cannot carry are replaced by `R<j>`.
pub fn emit_problem(problem: &Problem) -> String {
    let mut out = String::new();
    let (head, c): (&str, Vec<f64>) = match problem.sense {
        ObjectiveSense::Maximize => ("max", problem.objective.clone()),
        ObjectiveSense::Minimize => ("min", problem.objective.iter().map(|v| -v).collect()),
    };
    out.push_str(head);
    out.push_str(": ");
    write_terms(&mut out, &c).expect("writing to a String");
    out.push('\n');
    for (j, row) in problem.constraints.iter().enumerate() {
        let name = if valid_name(&row.name) { row.name.clone() } else { default_label(j) };
        out.push_str(&name);
        out.push_str(": ");
        write_terms(&mut out, &row.coeffs).expect("writing to a String");
        let rhs = if row.rhs.is_sign_negative() { format!("-{}", number(-row.rhs)) } else { number(row.rhs) };
        writeln!(out, " {} {}", row.sense.symbol(), rhs).expect("writing to a String");
    }
    out
}
