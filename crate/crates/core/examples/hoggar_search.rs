//! Stochastic sum-negativity search on the Hoggar-line Q-rep in d = 8,
//! followed by the two-value local-maximum test.
//!
//! ```text
//! cargo run --release --example hoggar_search -- 100000
//! ```

use std::time::Instant;

use qneg::builtin::builtin_qrep;
use qneg::negativity::{sum_negativity_stochastic, DEFAULT_TOL};
use qneg::stationary::{local_max_certificate, CLUSTER_TOL};

fn main() -> qneg::Result<()> {
    let seeds: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10_000);
    let q = builtin_qrep("d8-hoggar-qminus")?;
    let t = Instant::now();
    let r = sum_negativity_stochastic(&q, seeds, 0, DEFAULT_TOL)?;
    println!("{seeds} seeds in {:.2?}: N^1 >= {:.15} (reseeds {})", t.elapsed(), r.value, r.reseeds);

    let c = local_max_certificate(&r, &q, CLUSTER_TOL)?;
    for cl in &c.clusters {
        println!("  {:>2} x {:+.12}", cl.count, cl.center);
    }
    println!("{}", c.verdict());
    Ok(())
}
