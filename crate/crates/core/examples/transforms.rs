//! Conditioning, forgetting, conjunction and negation across languages.
//!
//! ```text
//! cargo run --example transforms
//! ```

use kcmap::clausal::{cnf_node, dnf_node};
use kcmap::nnf::write_nnf_string;
use kcmap::{transforms, Clause, LanguageTag, NnfStore, Oracle, Term, Var, VarSet};

fn c(codes: &[i64]) -> Clause {
    Clause::from_dimacs(codes).unwrap()
}

fn t(codes: &[i64]) -> Term {
    Term::from_dimacs(codes).unwrap()
}

fn main() -> kcmap::Result<()> {
    let mut s = NnfStore::new(4);
    let oracle = Oracle::default();

    let cnf = cnf_node(&mut s, &[c(&[1, 2]), c(&[-1, 3]), c(&[-3, 4])]);
    let cond = transforms::condition(&mut s, cnf, &t(&[1]), LanguageTag::Cnf)?;
    println!("CNF | x1:\n{}", write_nnf_string(&s, cond));

    // Forgetting x1 from a CNF by resolution.
    let fo = transforms::forget_single(&mut s, cnf, Var::new(1), LanguageTag::Cnf)?;
    println!("∃x1 CNF has {} edges", s.size(fo));

    let dnf = dnf_node(&mut s, &[t(&[1, 2]), t(&[-2, 3])]);
    let xs: VarSet = [Var::new(2)].into_iter().collect();
    let fo = transforms::forget(&mut s, dnf, &xs, LanguageTag::Dnf)?;
    println!("∃x2 DNF equivalent to x1 ∨ x3: {}", {
        let want = dnf_node(&mut s, &[t(&[1]), t(&[3])]);
        oracle.equivalent(&s, fo, want)?
    });

    let both = transforms::apply_and(&mut s, dnf, fo, LanguageTag::Dnf)?;
    println!("DNF ∧ DNF: {} edges", s.size(both));

    // DNF does not support negation.
    if let Err(e) = transforms::negate(&mut s, dnf, LanguageTag::Dnf) {
        println!("refused: {e}");
    }
    let neg = transforms::negate(&mut s, dnf, LanguageTag::DNnf)?;
    let conj = s.and([neg, dnf]);
    println!("d-NNF negation is a complement: {}", !oracle.is_consistent(&s, conj)?);
    Ok(())
}
