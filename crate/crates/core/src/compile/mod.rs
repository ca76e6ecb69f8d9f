//! Compilation of CNF input into the tractable target languages.

mod ddnnf;
mod dimacs;

pub use dimacs::{parse_dimacs, parse_dimacs_str, write_dimacs, DimacsError, DimacsErrorKind};

use crate::bdd::{BoolOp, Obdd};
use crate::clausal;
use crate::error::{Error, Result};
use crate::nnf::{Clause, NnfStore, NodeId, Term};
use crate::oracle::Oracle;
use crate::order::VarOrder;
use crate::transforms;

/// Largest variable count accepted by the prime compilers.
pub const PRIME_VAR_CAP: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> CnfFormula {
        CnfFormula { num_vars, clauses }
    }

    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::new(num_vars, clauses.iter().map(|c| Clause::from_dimacs(c).expect("nonzero literals")).collect())
    }

    /// Indices of clauses containing a complementary pair.
    pub fn tautologies(&self) -> Vec<usize> {
        (0..self.clauses.len()).filter(|&i| self.clauses[i].is_tautology()).collect()
    }

    /// The formula as a CNF sentence; tautological clauses are dropped.
    pub fn to_nnf(&self, store: &mut NnfStore) -> NodeId {
        store.ensure_vars(self.num_vars);
        let mut cs: Vec<Clause> = self.clauses.iter().filter(|c| !c.is_tautology()).cloned().collect();
        cs.sort();
        cs.dedup();
        clausal::cnf_node(store, &cs)
    }
}

pub fn compile_ddnnf(store: &mut NnfStore, f: &CnfFormula) -> NodeId {
    store.ensure_vars(f.num_vars);
    ddnnf::Compiler::new(store).run(f.clauses.clone())
}

pub fn compile_sddnnf(store: &mut NnfStore, f: &CnfFormula) -> NodeId {
    let r = compile_ddnnf(store, f);
    transforms::smooth(store, r)
}

/// Folds the clause diagrams with apply-and, in input order.
pub fn compile_obdd(store: &mut NnfStore, f: &CnfFormula, order: &VarOrder) -> Result<NodeId> {
    store.ensure_vars(f.num_vars);
    if order.len() > f.num_vars as usize {
        store.ensure_vars(order.len() as u32);
    }
    let order = order.extended(store.num_vars());
    let mut b = Obdd::new(&order);
    let mut acc = store.true_node();
    for c in &f.clauses {
        let d = b.clause(store, c);
        acc = b.apply(store, BoolOp::And, acc, d)?;
    }
    Ok(acc)
}

/// One full term per model over `x1..xn`.
pub fn compile_mods(store: &mut NnfStore, f: &CnfFormula, oracle: &Oracle) -> Result<NodeId> {
    let cnf = f.to_nnf(store);
    let over = crate::nnf::VarSet::first(f.num_vars);
    let models = oracle.models(store, cnf, &over)?;
    let terms: Vec<Term> = models.models().iter().map(|a| a.to_term()).collect();
    Ok(clausal::mods_node(store, &terms))
}

fn prime_cap(f: &CnfFormula) -> Result<()> {
    let n = f.num_vars as usize;
    if n > PRIME_VAR_CAP {
        return Err(Error::OracleCap { needed: n, cap: PRIME_VAR_CAP });
    }
    Ok(())
}

/// Prime implicates by resolution closure.
pub fn compile_pi(store: &mut NnfStore, f: &CnfFormula) -> Result<NodeId> {
    prime_cap(f)?;
    store.ensure_vars(f.num_vars);
    let cs = clausal::prime_implicates(&f.clauses);
    Ok(clausal::cnf_node(store, &cs))
}

/// Prime implicants, as the negated prime implicates of `¬f`. `¬f` is the
/// disjunction of the negated clauses and its prime implicates are folded
/// with the disjunction rule.
pub fn compile_ip(store: &mut NnfStore, f: &CnfFormula) -> Result<NodeId> {
    prime_cap(f)?;
    store.ensure_vars(f.num_vars);
    let mut acc = vec![Clause::default()];
    for c in f.clauses.iter().filter(|c| !c.is_tautology()) {
        let units: Vec<Clause> = c.lits().iter().map(|&l| Clause::new([!l])).collect();
        acc = clausal::pi_or(&acc, &units);
    }
    let terms: Vec<Term> = acc.iter().map(Clause::negation).collect();
    Ok(clausal::dnf_node(store, &clausal::minimize_terms(terms)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::LanguageTag;
    use crate::properties::{self, Tri};

    fn oracle() -> Oracle {
        Oracle::default()
    }

    #[test]
    fn trivial_inputs() {
        let mut s = NnfStore::new(0);
        let t = compile_ddnnf(&mut s, &CnfFormula::new(2, vec![]));
        assert!(s.is_true(t));
        let f = CnfFormula::new(1, vec![Clause::default()]);
        let r = compile_ddnnf(&mut s, &f);
        assert!(s.is_false(r));
    }

    #[test]
    fn ddnnf_is_equivalent_and_structural() {
        let f = CnfFormula::from_dimacs_clauses(4, &[&[1, 2], &[-1, 3], &[2, -3, 4], &[-4, -2]]);
        let mut s = NnfStore::new(4);
        let r = compile_ddnnf(&mut s, &f);
        let cnf = f.to_nnf(&mut s);
        assert!(oracle().equivalent(&s, r, cnf).unwrap());
        assert!(properties::decomposable(&s, r).value.is_yes());
        assert!(properties::deterministic_structurally(&s, r));
    }

    #[test]
    fn obdd_of_clause_pair() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, 2]]);
        let mut s = NnfStore::new(2);
        let r = compile_obdd(&mut s, &f, &VarOrder::identity(2)).unwrap();
        let x2 = s.lit_code(2);
        assert!(oracle().equivalent(&s, r, x2).unwrap());
        assert_eq!(crate::bdd::decision_count(&s, r), Some(1));
    }

    #[test]
    fn mods_of_single_literal() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1]]);
        let mut s = NnfStore::new(2);
        let r = compile_mods(&mut s, &f, &oracle()).unwrap();
        assert_eq!(s.node(r).children().len(), 2);
        assert_eq!(properties::member(&s, r, LanguageTag::Mods, None).value, Tri::Yes);
        let unsat = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]);
        let r = compile_mods(&mut s, &unsat, &oracle()).unwrap();
        assert!(s.is_false(r));
    }

    #[test]
    fn pi_collapses_resolvable_pair() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, 2]]);
        let mut s = NnfStore::new(2);
        let r = compile_pi(&mut s, &f).unwrap();
        assert_eq!(r, s.lit_code(2));
    }

    #[test]
    fn ip_matches_oracle() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2], &[-1, 3], &[2, 3]]);
        let mut s = NnfStore::new(3);
        let r = compile_ip(&mut s, &f).unwrap();
        let cnf = f.to_nnf(&mut s);
        let mut want = oracle().prime_implicants(&s, cnf).unwrap();
        want.sort();
        assert_eq!(clausal::terms_of(&s, r).unwrap(), want);
    }
}
