//! Print the query and transformation capability matrices.
//!
//! ```text
//! cargo run --example capability_matrix
//! ```

use kcmap::capabilities::{query_cell, transform_cell};
use kcmap::{LanguageTag, QueryTag, TransformTag};

fn main() {
    print!("{:<9}", "");
    for q in QueryTag::ALL {
        print!("{:>4}", q.name());
    }
    print!("   |");
    for t in TransformTag::ALL {
        print!("{:>5}", t.name());
    }
    println!();
    for l in LanguageTag::ALL {
        print!("{:<9}", l.name());
        for q in QueryTag::ALL {
            print!("{:>4}", query_cell(l, q).symbol());
        }
        print!("   |");
        for t in TransformTag::ALL {
            print!("{:>5}", transform_cell(l, t).symbol());
        }
        println!();
    }
    println!("\n✓ polytime, ○ not polytime unless P=NP, • not polytime, ? open");
}
