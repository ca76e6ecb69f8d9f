//! Stream the models of odd parity and cross-check the count.
//!
//! ```text
//! cargo run --example model_enumeration [n]
//! ```

use kcmap::families::gen_parity;
use kcmap::{queries, LanguageTag, NnfStore};

fn main() -> kcmap::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let mut s = NnfStore::new(0);
    let p = gen_parity(&mut s, n)?;
    let over = s.universe();
    let lang = LanguageTag::SdDnnf;
    let mut seen = 0u64;
    for m in queries::me_iter(&s, p, lang, &over)? {
        println!("{}", m.bit_string());
        seen += 1;
    }
    println!("{seen} models, ct says {}", queries::ct(&s, p, lang, &over)?);
    Ok(())
}
