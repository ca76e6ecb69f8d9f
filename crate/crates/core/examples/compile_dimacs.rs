//! Parse a DIMACS CNF, compile it to d-DNNF, smooth it and count models.
//!
//! ```text
//! cargo run --example compile_dimacs [file.cnf]
//! ```

use std::env;
use std::fs;

use kcmap::compile::{self, parse_dimacs_str};
use kcmap::properties::{member, Tri};
use kcmap::{queries, LanguageTag, NnfStore};

const SAMPLE: &str = "c pigeonhole-ish
p cnf 4 5
1 2 0
3 4 0
-1 -3 0
-2 -4 0
1 -4 0
";

fn main() -> kcmap::Result<()> {
    let text = match env::args().nth(1) {
        Some(p) => fs::read_to_string(p)?,
        None => SAMPLE.to_string(),
    };
    let f = parse_dimacs_str(&text)?;
    let mut s = NnfStore::new(f.num_vars);
    let d = compile::compile_ddnnf(&mut s, &f);
    let sd = compile::compile_sddnnf(&mut s, &f);
    let over = s.universe();
    println!("{} variables, {} clauses", f.num_vars, f.clauses.len());
    println!("d-DNNF: {} edges, sd-DNNF: {} edges", s.size(d), s.size(sd));
    println!("sd-DNNF member: {}", member(&s, sd, LanguageTag::SdDnnf, None).value == Tri::Yes);
    println!("models: {}", queries::ct(&s, d, LanguageTag::DDnnf, &over)?);
    Ok(())
}
