//! Weyl-Heisenberg Q-rep fiducials in d = 3: random sampling, the condition
//! check, and parameter recovery for the two named fiducials.
//!
//! ```text
//! cargo run --release --example wh_fiducials
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qneg::negativity::sum_negativity_exhaustive;
use qneg::qrep::validate_qrep;
use qneg::wh::{self, check_wh_fiducial_d3, WhFiducialD3, WhSampleParams};

fn main() -> qneg::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let (p, fid) = WhSampleParams::sample_random(&mut rng);
        let m = fid.to_operator();
        let check = check_wh_fiducial_d3(&m)?;
        let valid = validate_qrep(&wh::wh_orbit(&m, 3)?)?;
        let n1 = sum_negativity_exhaustive(&fid.qrep("sample")?, 1)?.value;
        println!(
            "angle {:+.3} branch {}  residual {:.1e}  gram {:.1e}  N^1 {:.9}",
            p.diag_angle,
            p.branch,
            check.max_residual(),
            valid.max_gram_violation,
            n1
        );
    }

    for (name, m) in [("qmin", wh::qmin_fiducial()), ("qmax", wh::qmax_fiducial())] {
        let p = WhSampleParams::invert(&WhFiducialD3::from_operator(&m)?)?;
        let back = p.sample()?.to_operator();
        println!("{name}: {p:?}\n      rebuilt within {:.1e}", back.max_abs_diff(&m));
    }
    Ok(())
}
