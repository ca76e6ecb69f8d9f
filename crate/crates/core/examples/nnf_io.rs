//! Write a sentence in the text format and read it back into a fresh store.
//!
//! ```text
//! cargo run --example nnf_io
//! ```

use kcmap::nnf::{read_nnf, write_nnf_string};
use kcmap::random::Gen;
use kcmap::NnfStore;

fn main() -> kcmap::Result<()> {
    let mut g = Gen::new(7);
    let mut s = NnfStore::new(5);
    let root = g.dnnf(&mut s, 5, 3);
    let text = write_nnf_string(&s, root);
    print!("{text}");

    let mut fresh = NnfStore::new(0);
    let back = read_nnf(text.as_bytes(), &mut fresh)?;
    assert_eq!(write_nnf_string(&fresh, back), text);
    println!("round trip ok: {} edges", fresh.size(back));
    Ok(())
}
