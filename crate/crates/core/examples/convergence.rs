//! (1/n) eta_<a^n b> converges to eta_<a> on every cylinder, while the
//! intersection functional against eta_<a> stays 0 and the pushforward
//! jumps in the limit.
//!
//! cargo run --example convergence

use subset_currents::cli::{converge_table, cmd_shnc_scan, RunConfig};
use subset_currents::{Alphabet, Result};

fn main() -> Result<()> {
    let table = converge_table(12, 2, Alphabet::new(2)?)?;
    print!("{}", table.to_tsv());
    let problems = table.check();
    println!("table checks: {}", if problems.is_empty() { "ok".to_string() } else { problems.join("; ") });

    let scan = cmd_shnc_scan(&RunConfig { samples: 10, seed: 3, ..RunConfig::default() })?;
    print!("{}", scan.report);
    Ok(())
}
