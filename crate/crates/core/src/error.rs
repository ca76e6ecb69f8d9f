use std::fmt;

use crate::capabilities::{Cell, Operation};
use crate::compile::DimacsError;
use crate::language::LanguageTag;
use crate::nnf::{NodeId, ParseError, Var};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{op} is not available for {lang}: {} capability matrix cell is {cell}", .op.matrix())]
    Capability {
        lang: LanguageTag,
        op: Operation,
        cell: Cell,
    },
    #[error("sentence is not in {lang}{}", Witness(*.witness))]
    NotInLanguage {
        lang: LanguageTag,
        witness: Option<NodeId>,
    },
    #[error("membership in {lang} could not be decided within the oracle cap")]
    MembershipUnknown { lang: LanguageTag },
    #[error("oracle cap exceeded: {needed} variables, cap is {cap}")]
    OracleCap { needed: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("node id {0} is out of range")]
    InvalidReference(u32),
    #[error("assignment does not mention {0}")]
    MissingVariable(Var),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Dimacs(#[from] DimacsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Error {
        Error::Precondition(msg.into())
    }
}

struct Witness(Option<NodeId>);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(id) => write!(f, " (witness node {id})"),
            None => Ok(()),
        }
    }
}
