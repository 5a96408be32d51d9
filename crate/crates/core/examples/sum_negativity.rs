//! Exact sum negativity of the SIC Q-reps by scanning all partial sums.
//!
//! ```text
//! cargo run --release --example sum_negativity          # d = 2, 3, 4
//! cargo run --release --example sum_negativity -- 5     # include d = 5 (slow)
//! ```

use std::time::Instant;

use qneg::negativity::sum_negativity_exhaustive;
use qneg::sic::{load_sic, sic_qreps};

fn main() -> qneg::Result<()> {
    let max_d: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    for label in ["d2", "d3-hesse", "d4", "d5"] {
        let s = load_sic(label)?;
        if s.dim() > max_d {
            continue;
        }
        let (qp, qm) = sic_qreps(&s)?;
        for q in [qp, qm] {
            let t = Instant::now();
            let r = sum_negativity_exhaustive(&q, threads)?;
            println!(
                "{:<16} N^1 = {:.12}  |S| = {:>2}  scanned {:>9}  eigensolves {:>6}  {:.2?}",
                q.label(),
                r.value,
                r.achieving_subset.len(),
                r.subsets_scanned,
                r.eigensolves,
                t.elapsed()
            );
        }
    }
    Ok(())
}
