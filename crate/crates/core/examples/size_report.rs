//! Size report over a separation family, written as CSV to stdout.
//!
//! ```text
//! cargo run --example size_report
//! ```

use std::io;

use kcmap::families::{run_size_report, write_csv, Family, SizeConfig, Target};

fn main() -> kcmap::Result<()> {
    let parity = SizeConfig::new(Family::Parity, (2, 8), vec![Target::Obdd, Target::Dnf, Target::Ddnnf]);
    let equiv = SizeConfig::new(Family::Equiv, (2, 6), vec![Target::Obdd, Target::ObddBlocked]);
    let mut rows = run_size_report(&parity)?;
    rows.extend(run_size_report(&equiv)?);
    write_csv(&rows, io::stdout().lock())?;
    Ok(())
}
