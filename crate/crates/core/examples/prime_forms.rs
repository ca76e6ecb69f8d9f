//! Prime implicates and prime implicants, compiled and brute-forced.
//!
//! ```text
//! cargo run --example prime_forms
//! ```

use kcmap::clausal::{clauses_of, terms_of};
use kcmap::compile::{compile_ip, compile_pi};
use kcmap::families::gen_pair_clauses;
use kcmap::{NnfStore, Oracle};

fn main() -> kcmap::Result<()> {
    let oracle = Oracle::default();
    for n in 1..=4 {
        let f = gen_pair_clauses(n);
        let mut s = NnfStore::new(f.num_vars);
        let pi = compile_pi(&mut s, &f)?;
        let ip = compile_ip(&mut s, &f)?;
        let cnf = f.to_nnf(&mut s);
        println!(
            "n={n}: {} prime implicates, {} prime implicants (oracle {})",
            clauses_of(&s, pi).map_or(0, |c| c.len()),
            terms_of(&s, ip).map_or(0, |t| t.len()),
            oracle.prime_implicants(&s, cnf)?.len()
        );
    }
    Ok(())
}
