//! The full expected-versus-computed table.
//!
//! ```text
//! cargo run --release --example reproduce -- d4
//! cargo run --release --example reproduce -- all 100000
//! ```

use qneg::repro::{cmd_reproduce, render_table, Scope};

fn main() -> qneg::Result<()> {
    let mut args = std::env::args().skip(1);
    let scope: Scope = args.next().as_deref().unwrap_or("d3").parse()?;
    let seeds: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let rows = cmd_reproduce(scope, threads, seeds)?;
    print!("{}", render_table(&rows));
    if rows.iter().any(|r| r.failed()) {
        std::process::exit(1);
    }
    Ok(())
}
