//! Builds every shipped SIC, checks its Gram matrix and prints the ceiling
//! negativity bounds its two Q-reps attain.
//!
//! ```text
//! cargo run --release --example sic_gram
//! ```

use qneg::negativity::ceiling_negativity;
use qneg::sic::{ceiling_bounds, load_sic, sic_gram_deviation, sic_qreps, SIC_LABELS};

fn main() -> qneg::Result<()> {
    println!("{:<10} {:>3} {:>12} {:>14} {:>14}", "sic", "d", "gram dev", "N^inf(Q+)", "N^inf(Q-)");
    for label in SIC_LABELS {
        let s = load_sic(label)?;
        let dev = sic_gram_deviation(s.projectors())?;
        let (qp, qm) = sic_qreps(&s)?;
        let b = ceiling_bounds(s.dim())?;
        let (np, nm) = (ceiling_negativity(&qp).value, ceiling_negativity(&qm).value);
        println!("{label:<10} {:>3} {dev:>12.2e} {np:>14.10} {nm:>14.10}", s.dim());
        assert!((np - b.n_plus).abs() < 1e-9 && (nm - b.n_minus).abs() < 1e-9);
    }

    // first rows of the d = 4 Gram matrix
    let g = load_sic("d4")?.gram();
    for row in g.iter().take(3) {
        let cells: Vec<String> = row.iter().take(6).map(|x| format!("{x:.4}")).collect();
        println!("  {} ...", cells.join(" "));
    }
    Ok(())
}
