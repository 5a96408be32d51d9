//! States as quasiprobability vectors: representation, reconstruction and
//! the Born rule written in terms of a Q-rep.
//!
//! ```text
//! cargo run --example quasiprobability
//! ```

use qneg::builtin::builtin_qrep;
use qneg::negativity::{negative_part, np_negativity, NormOrder};
use qneg::operators::DensityMatrix;
use qneg::qrep::{born_lhs_rhs, reconstruct, represent, Povm};

fn main() -> qneg::Result<()> {
    let q = builtin_qrep("d3-hesse-qplus")?;
    let rho = DensityMatrix::random(3, 42)?;
    let v = represent(&rho, &q)?;
    println!("p      = {:?}", v.entries().iter().map(|x| format!("{x:+.4}")).collect::<Vec<_>>());
    println!("p^-    = {:?}", negative_part(&v).iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>());
    for p in ["1", "2", "inf"] {
        let order: NormOrder = p.parse()?;
        println!("N^{p:<3}  = {:.6}", np_negativity(&v, order));
    }

    let back = reconstruct(&v, &q)?;
    println!("reconstruction error {:.2e}", back.max_abs_diff(rho.op()));

    let g = Povm::random(3, 5, 1)?;
    let (lhs, rhs) = born_lhs_rhs(&rho, &q, &g)?;
    let err = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("Born rule via the Q-rep, max |lhs - rhs| = {err:.2e}");
    Ok(())
}
