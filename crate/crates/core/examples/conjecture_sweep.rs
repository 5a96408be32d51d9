//! Smallest sum negativity across randomly sampled WH Q-reps in d = 3,
//! compared with the value at `Q^min`.
//!
//! ```text
//! cargo run --release --example conjecture_sweep -- 10000
//! ```

use std::time::Instant;

use qneg::sweep::{conjecture_sweep, SweepOptions};

fn main() -> qneg::Result<()> {
    let samples: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2000);
    let t = Instant::now();
    let r = conjecture_sweep(&SweepOptions {
        samples,
        ..Default::default()
    })?;
    println!("{samples} samples in {:.2?}", t.elapsed());
    println!("Q^min value       {:.12}", r.bound);
    println!("smallest sample   {:.12}", r.sample_min);
    println!("after refinement  {:.12}  ({:+.3e})", r.refined_min, r.refined_min - r.bound);
    println!("samples below     {}", r.violations);
    println!("spectrum gap to Q^min fiducial {:.3e}", r.spectrum_gap);
    println!("{:?}", r.refined_params);
    Ok(())
}
