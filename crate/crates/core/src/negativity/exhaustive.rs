//! Exact sum negativity by scanning every nonempty partial sum.
//!
//! The `2^{d^2} - 1` subsets are split into fixed chunks on their high bits.
//! Inside a chunk the low bits follow a reflected Gray code, so consecutive
//! partial sums differ by adding or removing one element. Before any
//! eigensolve a subset must survive two cheap exact tests against the
//! current threshold `t`: the Gershgorin lower bound, then a Cholesky
//! factorization of `S - t I` (success proves `lambda_min(S) > t`).
//!
//! The chunk layout does not depend on the worker count and results are
//! reduced in chunk order, so reports are bit-identical across thread
//! budgets.

use rayon::prelude::*;

use super::{improves, stochastic, subset_indices, NegativityReport, NormOrder};
use crate::error::{Error, Result};
use crate::operators::{HermitianOperator, C64};
use crate::qrep::QRep;

/// Largest dimension accepted (`2^25 - 1` partial sums at `d = 5`).
pub const MAX_EXHAUSTIVE_DIM: usize = 5;

/// Low bits walked by one chunk's Gray code.
const CHUNK_BITS: usize = 12;

/// Subsets whose `lambda_min` may lie within this of the threshold are
/// always eigen-solved.
const PRUNE_MARGIN: f64 = 1e-9;

/// Seeds for the pre-pass that sets the initial pruning threshold when
/// there is more than one chunk.
const PREPASS_SEEDS: u64 = 64;

#[derive(Clone, Copy, Default)]
struct ChunkResult {
    best: Option<(f64, u64)>,
    eigensolves: u64,
    scanned: u64,
}

/// `N^1 = -(1/d) min_S lambda_min(sum_{i in S} Q_i)` over all nonempty `S`.
///
/// `thread_budget` only affects speed; `0` means one worker.
pub fn sum_negativity_exhaustive(q: &QRep, thread_budget: usize) -> Result<NegativityReport> {
    let d = q.dim();
    if d > MAX_EXHAUSTIVE_DIM {
        return Err(Error::TooLarge(d));
    }
    let n = q.len();
    let flat: Vec<Vec<C64>> = q.elements().iter().map(|e| e.matrix().iter().copied().collect()).collect();

    // Any subset's eigenvalue bounds the minimum from above.
    let singles = q
        .elements()
        .iter()
        .map(|e| e.min_eigenpair().0)
        .fold(f64::INFINITY, f64::min);
    let mut threshold = singles;
    if n > CHUNK_BITS {
        let prepass = stochastic::sum_negativity_stochastic_with(
            q,
            &stochastic::StochasticOptions {
                seeds: PREPASS_SEEDS,
                rng_seed: 0x5eed,
                threads: 1,
                ..Default::default()
            },
        )?;
        threshold = threshold.min(-prepass.value * d as f64);
    }
    let threshold = threshold + PRUNE_MARGIN;

    let low = n.min(CHUNK_BITS);
    let chunks = 1u64 << (n - low);
    let scan = |c| scan_chunk(&flat, d, low, c, threshold);
    let results: Vec<ChunkResult> = if thread_budget <= 1 || chunks == 1 {
        (0..chunks).map(scan).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(thread_budget)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| (0..chunks).into_par_iter().map(scan).collect())
    };

    let mut best = None;
    let mut eigensolves = 0;
    let mut scanned = 0;
    for r in &results {
        eigensolves += r.eigensolves;
        scanned += r.scanned;
        if let Some(cand) = r.best {
            if improves(cand, best) {
                best = Some(cand);
            }
        }
    }
    let (_, mask) = best.ok_or_else(|| {
        Error::InvalidArgument("no partial sum reached the pruning threshold".into())
    })?;

    let subset = subset_indices(mask);
    let (lambda, state) = q.partial_sum(&subset).min_eigenpair();
    Ok(NegativityReport {
        label: q.label().to_string(),
        measure: NormOrder::ONE,
        value: (-lambda / d as f64).max(0.0),
        achieving_state: state,
        achieving_subset: subset,
        exhaustive: true,
        subsets_scanned: scanned,
        eigensolves,
        seeds_used: 0,
        reseeds: 0,
        wall_time_s: None,
    })
}

fn scan_chunk(elements: &[Vec<C64>], d: usize, low: usize, chunk: u64, threshold: f64) -> ChunkResult {
    let mut cur = vec![C64::new(0.0, 0.0); d * d];
    for (b, e) in elements.iter().enumerate().skip(low) {
        if chunk >> (b - low) & 1 == 1 {
            add_into(&mut cur, e, 1.0);
        }
    }
    let high = chunk << low;
    let mut out = ChunkResult::default();
    let mut cut = threshold;
    let mut gray = 0u64;
    for k in 0..(1u64 << low) {
        if k > 0 {
            let bit = k.trailing_zeros() as usize;
            gray ^= 1 << bit;
            let sign = if gray >> bit & 1 == 1 { 1.0 } else { -1.0 };
            add_into(&mut cur, &elements[bit], sign);
        }
        let mask = high | gray;
        if mask == 0 {
            continue;
        }
        out.scanned += 1;
        if gershgorin_lower(&cur, d) > cut || shifted_is_positive_definite(&cur, d, cut) {
            continue;
        }
        out.eigensolves += 1;
        let lambda = min_eigenvalue(&cur, d);
        if improves((lambda, mask), out.best) {
            out.best = Some((lambda, mask));
            cut = cut.min(lambda + PRUNE_MARGIN);
        }
    }
    out
}

fn add_into(acc: &mut [C64], e: &[C64], sign: f64) {
    for (a, x) in acc.iter_mut().zip(e) {
        *a += x * sign;
    }
}

/// `min_i (a_ii - sum_{j != i} |a_ij|)`. Storage is column-major, which for a
/// Hermitian matrix only conjugates the off-diagonal entries.
fn gershgorin_lower(m: &[C64], d: usize) -> f64 {
    (0..d)
        .map(|i| {
            let radius: f64 = (0..d).filter(|&j| j != i).map(|j| m[i + j * d].norm()).sum();
            m[i + i * d].re - radius
        })
        .fold(f64::INFINITY, f64::min)
}

/// Cholesky of `m - t I`; `true` iff every pivot is positive.
fn shifted_is_positive_definite(m: &[C64], d: usize, t: f64) -> bool {
    let mut l = [C64::new(0.0, 0.0); MAX_EXHAUSTIVE_DIM * MAX_EXHAUSTIVE_DIM];
    for j in 0..d {
        let mut pivot = m[j + j * d].re - t;
        for k in 0..j {
            pivot -= l[j * d + k].norm_sqr();
        }
        if pivot <= 0.0 || pivot.is_nan() {
            return false;
        }
        let ljj = pivot.sqrt();
        l[j * d + j] = C64::new(ljj, 0.0);
        for i in (j + 1)..d {
            let mut s = m[i + j * d];
            for k in 0..j {
                s -= l[i * d + k] * l[j * d + k].conj();
            }
            l[i * d + j] = s / ljj;
        }
    }
    true
}

fn min_eigenvalue(m: &[C64], d: usize) -> f64 {
    let mat = nalgebra::DMatrix::from_column_slice(d, d, m);
    HermitianOperator::symmetrized(mat).eigenvalues()[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::complex_normal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> HermitianOperator {
        let g = nalgebra::DMatrix::from_fn(d, d, |_, _| complex_normal(rng));
        HermitianOperator::symmetrized(&g + g.adjoint())
    }

    #[test]
    fn pruning_tests_are_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for d in 2..=5 {
            for _ in 0..2000 {
                let h = random_hermitian(d, &mut rng);
                let flat: Vec<C64> = h.matrix().iter().copied().collect();
                let lo = h.eigenvalues()[0];
                assert!(gershgorin_lower(&flat, d) <= lo + 1e-12);
                for t in [lo - 0.5, lo - 1e-6, lo + 1e-6, lo + 0.5] {
                    assert_eq!(shifted_is_positive_definite(&flat, d, t), t < lo, "d={d} t-lo={}", t - lo);
                }
            }
        }
    }

    #[test]
    fn refuses_large_dimension() {
        let s = crate::sic::load_sic("d8-hoggar").unwrap();
        let (_, qm) = crate::sic::sic_qreps(&s).unwrap();
        assert!(matches!(sum_negativity_exhaustive(&qm, 1), Err(Error::TooLarge(8))));
    }

    #[test]
    fn gray_walk_visits_every_subset_once() {
        // d = 2: 16 elements would be 4 bits; use a d = 3 Q-rep (9 bits) and
        // compare the scan count.
        let q = crate::wh::qmin_qrep();
        let r = sum_negativity_exhaustive(&q, 1).unwrap();
        assert_eq!(r.subsets_scanned, (1 << 9) - 1);
    }
}
