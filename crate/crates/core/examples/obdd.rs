//! Ordered decision diagrams: build, apply, reduce, and compare orders.
//!
//! ```text
//! cargo run --example obdd
//! ```

use kcmap::bdd::{self, BoolOp, Obdd};
use kcmap::compile::compile_obdd;
use kcmap::families::{blocked_order, gen_equivalences, interleaved_order};
use kcmap::{Clause, NnfStore, VarOrder};

fn main() -> kcmap::Result<()> {
    let order = VarOrder::identity(3);
    let mut s = NnfStore::new(3);
    let mut ob = Obdd::new(&order);
    let a = ob.clause(&mut s, &Clause::from_dimacs(&[1, 2]).unwrap());
    let b = ob.clause(&mut s, &Clause::from_dimacs(&[-1, 3]).unwrap());
    let and = ob.apply(&mut s, BoolOp::And, a, b)?;
    let or = ob.apply(&mut s, BoolOp::Or, a, b)?;
    println!("(x1∨x2) ∧ (¬x1∨x3): {} decision nodes", bdd::decision_count(&s, and).unwrap());
    println!("(x1∨x2) ∨ (¬x1∨x3) is the true sink: {}", s.is_true(or));
    println!("reduced: {}", bdd::is_reduced(&s, and));

    // The same function under two orders.
    for n in [2, 4, 6] {
        let f = gen_equivalences(n);
        let mut s = NnfStore::new(2 * n);
        let good = compile_obdd(&mut s, &f, &interleaved_order(n))?;
        let bad = compile_obdd(&mut s, &f, &blocked_order(n))?;
        println!(
            "n={n}: interleaved {} nodes, blocked {} nodes",
            bdd::node_count(&s, good).unwrap(),
            bdd::node_count(&s, bad).unwrap()
        );
    }
    Ok(())
}
