//! Local-maximum certificates for exhaustive sum-negativity reports.
//!
//! ```text
//! cargo run --release --example certify
//! ```

use qneg::builtin::builtin_qrep;
use qneg::negativity::sum_negativity_exhaustive;
use qneg::stationary::{local_max_certificate, CLUSTER_TOL};

fn main() -> qneg::Result<()> {
    for label in ["qmax", "qmin", "d4-qplus", "d4-qminus", "d3-hesse-qplus"] {
        let q = builtin_qrep(label)?;
        let r = sum_negativity_exhaustive(&q, 1)?;
        let c = local_max_certificate(&r, &q, CLUSTER_TOL)?;
        let shape: Vec<String> = c.clusters.iter().map(|k| format!("{}x{:+.6}", k.count, k.center)).collect();
        println!("{label:<15} N^1 = {:.10}  [{}]  {}", c.value, shape.join(", "), c.verdict());
    }
    Ok(())
}
