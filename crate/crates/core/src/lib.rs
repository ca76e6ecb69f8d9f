//! Knowledge compilation over NNF DAGs.
//!
//! Sentences live in a hash-consed [`nnf::NnfStore`]. The [`properties`]
//! module classifies them into the sixteen NNF sublanguages, [`queries`] and
//! [`transforms`] run exactly the operations the capability matrices grant
//! each language, and [`compile`] turns CNF into the tractable targets. The
//! [`oracle`] recomputes everything from truth tables for testing.

pub mod bdd;
pub mod capabilities;
pub mod clausal;
pub mod compile;
pub mod error;
pub mod families;
pub mod language;
pub mod nnf;
pub mod oracle;
pub mod order;
pub mod properties;
pub mod queries;
pub mod random;
pub mod transforms;

pub use capabilities::{Cell, Operation, QueryTag, TransformTag};
pub use error::{Error, Result};
pub use language::LanguageTag;
pub use nnf::{Assignment, Clause, Lit, NnfStore, Node, NodeId, Term, Var, VarSet};
pub use oracle::{ModelSet, Oracle};
pub use order::VarOrder;
