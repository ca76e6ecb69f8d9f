//! Static capability matrices for queries and transformations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::language::LanguageTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryTag {
    Co,
    Va,
    Ce,
    Im,
    Eq,
    Se,
    Ct,
    Me,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformTag {
    Cd,
    Fo,
    Sfo,
    AndC,
    AndBc,
    OrC,
    OrBc,
    NotC,
}

/// One cell of a capability matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Supported,
    /// Provably not polytime.
    NotSatisfied,
    /// Not polytime unless P = NP.
    NotUnlessPEqNp,
    /// Unresolved.
    Open,
}

impl Cell {
    fn from_code(c: u8) -> Cell {
        match c {
            b'Y' => Cell::Supported,
            b'x' => Cell::NotSatisfied,
            b'o' => Cell::NotUnlessPEqNp,
            b'?' => Cell::Open,
            _ => unreachable!("bad matrix code"),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cell::Supported => "✓",
            Cell::NotSatisfied => "•",
            Cell::NotUnlessPEqNp => "○",
            Cell::Open => "?",
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self {
            Cell::Supported => "supported",
            Cell::NotSatisfied => "not satisfied",
            Cell::NotUnlessPEqNp => "not satisfied unless P=NP",
            Cell::Open => "open",
        };
        write!(f, "{} ({what})", self.symbol())
    }
}

impl QueryTag {
    pub const ALL: [QueryTag; 8] = [
        QueryTag::Co,
        QueryTag::Va,
        QueryTag::Ce,
        QueryTag::Im,
        QueryTag::Eq,
        QueryTag::Se,
        QueryTag::Ct,
        QueryTag::Me,
    ];

    pub fn name(self) -> &'static str {
        ["CO", "VA", "CE", "IM", "EQ", "SE", "CT", "ME"][self as usize]
    }
}

impl TransformTag {
    pub const ALL: [TransformTag; 8] = [
        TransformTag::Cd,
        TransformTag::Fo,
        TransformTag::Sfo,
        TransformTag::AndC,
        TransformTag::AndBc,
        TransformTag::OrC,
        TransformTag::OrBc,
        TransformTag::NotC,
    ];

    pub fn name(self) -> &'static str {
        ["CD", "FO", "SFO", "∧C", "∧BC", "∨C", "∨BC", "¬C"][self as usize]
    }
}

impl fmt::Display for QueryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for TransformTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QueryTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<QueryTag> {
        QueryTag::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::precondition(format!("unknown query `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operation {
    Query(QueryTag),
    Transform(TransformTag),
}

impl Operation {
    pub fn matrix(self) -> &'static str {
        match self {
            Operation::Query(_) => "query",
            Operation::Transform(_) => "transformation",
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::Query(q) => q.fmt(f),
            Operation::Transform(t) => t.fmt(f),
        }
    }
}

// Rows follow LanguageTag::ALL; columns follow QueryTag::ALL / TransformTag::ALL.
// Y supported, x not satisfied, o not unless P=NP, ? open.
const QUERIES: [&str; 16] = [
    "oooooooo", // NNF
    "YoYooooY", // DNNF
    "oooooooo", // d-NNF
    "oooooooo", // s-NNF
    "oooooooo", // f-NNF
    "YYYY?oYY", // d-DNNF
    "YYYY?oYY", // sd-DNNF
    "oooooooo", // BDD
    "YYYY?oYY", // FBDD
    "YYYYYoYY", // OBDD
    "YYYYYYYY", // OBDD_<
    "YoYooooY", // DNF
    "oYoYoooo", // CNF
    "YYYYYYoY", // PI
    "YYYYYYoY", // IP
    "YYYYYYYY", // MODS
];

const TRANSFORMS: [&str; 16] = [
    "YoYYYYYY", // NNF
    "YYYooYYo", // DNNF
    "YoYYYYYY", // d-NNF
    "YoYYYYYY", // s-NNF
    "YoYxxxxY", // f-NNF
    "Yoooooo?", // d-DNNF
    "Yoooooo?", // sd-DNNF
    "YoYYYYYY", // BDD
    "YxoxoxoY", // FBDD
    "YxYxoxoY", // OBDD
    "YxYxYxYY", // OBDD_<
    "YYYxYYYx", // DNF
    "YoYYYxYx", // CNF
    "YYYxxxYx", // PI
    "YxxxYxxx", // IP
    "YYYxYxxx", // MODS
];

fn row(lang: LanguageTag) -> usize {
    LanguageTag::ALL.iter().position(|&l| l == lang).expect("all tags listed")
}

pub fn query_cell(lang: LanguageTag, q: QueryTag) -> Cell {
    Cell::from_code(QUERIES[row(lang)].as_bytes()[q as usize])
}

pub fn transform_cell(lang: LanguageTag, t: TransformTag) -> Cell {
    Cell::from_code(TRANSFORMS[row(lang)].as_bytes()[t as usize])
}

/// Errors unless the matrix grants the operation.
pub fn require(lang: LanguageTag, op: Operation) -> Result<()> {
    let cell = match op {
        Operation::Query(q) => query_cell(lang, q),
        Operation::Transform(t) => transform_cell(lang, t),
    };
    match cell {
        Cell::Supported => Ok(()),
        cell => Err(Error::Capability { lang, op, cell }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LanguageTag::*;

    #[test]
    fn spot_cells() {
        assert_eq!(query_cell(Fbdd, QueryTag::Se), Cell::NotUnlessPEqNp);
        assert_eq!(query_cell(DDnnf, QueryTag::Eq), Cell::Open);
        assert_eq!(query_cell(ObddLt, QueryTag::Se), Cell::Supported);
        assert_eq!(query_cell(Cnf, QueryTag::Va), Cell::Supported);
        assert_eq!(transform_cell(Fbdd, TransformTag::Fo), Cell::NotSatisfied);
        assert_eq!(transform_cell(DDnnf, TransformTag::NotC), Cell::Open);
        assert_eq!(transform_cell(Ip, TransformTag::AndBc), Cell::Supported);
        assert_eq!(transform_cell(Pi, TransformTag::OrBc), Cell::Supported);
    }

    #[test]
    fn conditioning_is_universal() {
        for l in LanguageTag::ALL {
            assert_eq!(transform_cell(l, TransformTag::Cd), Cell::Supported);
        }
    }

    #[test]
    fn capability_error_names_the_matrix() {
        let e = require(Fbdd, Operation::Query(QueryTag::Se)).unwrap_err();
        assert!(e.to_string().contains("query capability matrix"), "{e}");
    }
}
