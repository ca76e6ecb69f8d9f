//! Build a small sentence by hand and list the languages it belongs to.
//!
//! ```text
//! cargo run --example classify
//! ```

use kcmap::properties::classify;
use kcmap::{NnfStore, Var};

fn main() {
    let mut s = NnfStore::new(3);
    let (x1, x2, x3) = (Var::new(1), Var::new(2), Var::new(3));

    // (x1 ∧ x2) ∨ (¬x1 ∧ x3). The branches are literals, not diagrams, so
    // this is a DNF and a d-DNNF but not a BDD.
    let hi = s.lit(x2.pos());
    let lo = s.lit(x3.pos());
    let root = s.decision(x1, hi, lo);

    println!("sentence with {} edges over {} variables", s.size(root), s.vars(root).len());
    for line in classify(&s, root, None).lines() {
        println!("  {line}");
    }
}
