//! Run every query on a compiled d-DNNF and check it against the oracle.
//!
//! ```text
//! cargo run --example queries
//! ```

use kcmap::compile::{compile_ddnnf, CnfFormula};
use kcmap::{queries, Clause, LanguageTag, NnfStore, Oracle, Term};

fn main() -> kcmap::Result<()> {
    // (x1 ∨ x2) ∧ (¬x2 ∨ x3) ∧ (¬x1 ∨ ¬x3)
    let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2], &[-2, 3], &[-1, -3]]);
    let mut s = NnfStore::new(f.num_vars);
    let root = compile_ddnnf(&mut s, &f);
    let lang = LanguageTag::DDnnf;
    let over = s.universe();
    let oracle = Oracle::default();

    println!("CO  {}", queries::co(&s, root, lang)?);
    println!("VA  {}", queries::va(&s, root, lang)?);
    let c = Clause::from_dimacs(&[2, 3]).unwrap();
    println!("CE  x2 ∨ x3: {}", queries::ce(&s, root, lang, &c)?);
    let t = Term::from_dimacs(&[-1, 2]).unwrap();
    println!("IM  ¬x1 ∧ x2: {}", queries::im(&s, root, lang, &t)?);
    let n = queries::ct(&s, root, lang, &over)?;
    println!("CT  {n} (oracle {})", oracle.count(&s, root, &over)?);
    for m in queries::me(&s, root, lang, &over)?.bit_strings() {
        println!("ME  {m}");
    }

    // EQ is open for d-DNNF, so the call is refused.
    match queries::eq(&mut s, root, root, lang) {
        Err(e) => println!("EQ  refused: {e}"),
        Ok(b) => println!("EQ  {b}"),
    }
    Ok(())
}
