//! Stationary two- and three-valued vectors on the pure-state sphere and the
//! resulting sum-negativity upper bound.
//!
//! ```text
//! cargo run --example stationary_table -- 4
//! ```

use qneg::stationary::{max_stationary_sum_negativity, stationary_table};

fn main() -> qneg::Result<()> {
    let d: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    println!("{:>3} {:>3} {:>3} {:>16} {:>16} {:>16}", "n", "m", "k", "a", "b", "n|a|");
    for s in stationary_table(d)? {
        println!("{:>3} {:>3} {:>3} {:>16.12} {:>16.12} {:>16.12}", s.n, s.m, s.k(), s.a, s.b, s.value());
    }
    let best = max_stationary_sum_negativity(d)?;
    println!("max over the table: {:.15} at n = {}, m = {}", best.value(), best.n, best.m);
    Ok(())
}
