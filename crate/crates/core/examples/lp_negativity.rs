//! `N^p` of a Q-rep for several `p`, from the ceiling (`p = inf`) down to the
//! sum negativity (`p = 1`).
//!
//! ```text
//! cargo run --release --example lp_negativity -- qmax
//! ```

use qneg::builtin::builtin_qrep;
use qneg::negativity::{np_negativity_qrep, NormOrder};

fn main() -> qneg::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "qmax".into());
    let q = builtin_qrep(&label)?;
    for p in ["inf", "8", "4", "2", "1.5", "1"] {
        let order: NormOrder = p.parse()?;
        let r = np_negativity_qrep(&q, order, 200, 0)?;
        let how = if r.exhaustive { "exact" } else { "search" };
        println!("{label}  N^{p:<4} = {:.10}  ({how})", r.value);
    }
    Ok(())
}
