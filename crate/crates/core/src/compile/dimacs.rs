use std::fmt;
use std::io::BufRead;

use crate::nnf::{Clause, Lit};

use super::CnfFormula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimacsErrorKind {
    MissingHeader,
    MalformedHeader,
    DuplicateHeader,
    InvalidToken,
    LiteralOutOfRange,
    UnterminatedClause,
    ClauseCountMismatch,
    Io,
}

impl fmt::Display for DimacsErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimacsErrorKind::MissingHeader => "missing `p cnf` header",
            DimacsErrorKind::MalformedHeader => "malformed header",
            DimacsErrorKind::DuplicateHeader => "duplicate header",
            DimacsErrorKind::InvalidToken => "invalid token",
            DimacsErrorKind::LiteralOutOfRange => "literal out of range",
            DimacsErrorKind::UnterminatedClause => "unterminated clause",
            DimacsErrorKind::ClauseCountMismatch => "clause count does not match header",
            DimacsErrorKind::Io => "read error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("DIMACS line {line}: {kind}")]
pub struct DimacsError {
    pub line: usize,
    pub kind: DimacsErrorKind,
}

fn err(line: usize, kind: DimacsErrorKind) -> DimacsError {
    DimacsError { line, kind }
}

/// Parses DIMACS CNF. Comment lines start with `c`; clauses may span lines
/// and end with `0`; a `%` line ends the input.
pub fn parse_dimacs<R: BufRead>(input: R) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut last = 0;
    for (i, line) in input.lines().enumerate() {
        let no = i + 1;
        last = no;
        let line = line.map_err(|_| err(no, DimacsErrorKind::Io))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(err(no, DimacsErrorKind::DuplicateHeader));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            match parts.as_slice() {
                ["p", "cnf", v, c] => match (v.parse::<u32>(), c.parse::<usize>()) {
                    (Ok(v), Ok(c)) => header = Some((v, c)),
                    _ => return Err(err(no, DimacsErrorKind::MalformedHeader)),
                },
                _ => return Err(err(no, DimacsErrorKind::MalformedHeader)),
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(err(no, DimacsErrorKind::MissingHeader));
        };
        for tok in trimmed.split_whitespace() {
            let code: i64 = tok.parse().map_err(|_| err(no, DimacsErrorKind::InvalidToken))?;
            if code == 0 {
                clauses.push(Clause::new(current.drain(..)));
            } else if code.unsigned_abs() > u64::from(num_vars) {
                return Err(err(no, DimacsErrorKind::LiteralOutOfRange));
            } else {
                current.push(Lit::from_dimacs(code).expect("nonzero literal"));
            }
        }
    }
    let Some((num_vars, count)) = header else {
        return Err(err(last, DimacsErrorKind::MissingHeader));
    };
    if !current.is_empty() {
        return Err(err(last, DimacsErrorKind::UnterminatedClause));
    }
    if clauses.len() != count {
        return Err(err(last, DimacsErrorKind::ClauseCountMismatch));
    }
    Ok(CnfFormula { num_vars, clauses })
}

pub fn parse_dimacs_str(s: &str) -> Result<CnfFormula, DimacsError> {
    parse_dimacs(s.as_bytes())
}

/// DIMACS text for a formula.
pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        for l in c.lits() {
            out.push_str(&l.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_formula() {
        let f = parse_dimacs_str("c hi\np cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(f.num_vars, 2);
        assert_eq!(f.clauses, vec![Clause::from_dimacs(&[1, -2]).unwrap()]);
    }

    #[test]
    fn merges_duplicate_literals() {
        let f = parse_dimacs_str("p cnf 1 1\n1 1 0\n").unwrap();
        assert_eq!(f.clauses[0].len(), 1);
    }

    #[test]
    fn clause_may_span_lines() {
        let f = parse_dimacs_str("p cnf 3 2\n1 2\n3 0 -1 0\n").unwrap();
        assert_eq!(f.clauses.len(), 2);
        assert_eq!(f.clauses[0].len(), 3);
    }

    #[test]
    fn retains_and_flags_tautologies() {
        let f = parse_dimacs_str("p cnf 1 1\n1 -1 0\n").unwrap();
        assert_eq!(f.tautologies(), vec![0]);
    }

    #[test]
    fn error_classes() {
        let kind = |s: &str| parse_dimacs_str(s).unwrap_err().kind;
        assert_eq!(kind("p cnf 1 1\n2 0\n"), DimacsErrorKind::LiteralOutOfRange);
        assert_eq!(kind("1 0\n"), DimacsErrorKind::MissingHeader);
        assert_eq!(kind("p cnf 2 1\n1 2\n"), DimacsErrorKind::UnterminatedClause);
        assert_eq!(kind("p cnf x 1\n"), DimacsErrorKind::MalformedHeader);
        assert_eq!(kind("p cnf 2 2\n1 0\n"), DimacsErrorKind::ClauseCountMismatch);
    }

    #[test]
    fn write_then_parse() {
        let f = parse_dimacs_str("p cnf 3 2\n1 -3 0\n2 0\n").unwrap();
        assert_eq!(parse_dimacs_str(&write_dimacs(&f)).unwrap(), f);
    }
}
