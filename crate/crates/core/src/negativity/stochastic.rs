//! Sum negativity by alternating between states and index sets.
//!
//! From a state, take the set `S` of negative entries; from `S`, take the
//! lowest eigenvector of `sum_{i in S} Q_i`. The objective
//! `-(1/d) lambda_min(sum_S Q_i)` never decreases along the way, so each
//! start climbs to a local maximum. Many random starts give a lower bound on
//! the true maximum that is usually tight.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{improves, subset_indices, NegativityReport, NormOrder};
use crate::error::{Error, Result};
use crate::operators::{HermitianOperator, PureState};
use crate::qrep::QRep;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERS: usize = 200;

/// Draws allowed per seed before it is abandoned.
const MAX_RESEEDS: u64 = 64;

#[derive(Clone, Debug)]
pub struct StochasticOptions {
    pub seeds: u64,
    pub rng_seed: u64,
    pub tol: f64,
    pub max_iters: usize,
    /// Worker threads; `0` uses the global rayon pool.
    pub threads: usize,
}

impl Default for StochasticOptions {
    fn default() -> Self {
        Self {
            seeds: 1000,
            rng_seed: 0,
            tol: DEFAULT_TOL,
            max_iters: DEFAULT_MAX_ITERS,
            threads: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Climb {
    pub lambda: f64,
    pub mask: u64,
    pub state: PureState,
}

struct SeedOutcome {
    climb: Option<Climb>,
    reseeds: u64,
}

pub fn sum_negativity_stochastic(q: &QRep, seeds: u64, rng_seed: u64, tol: f64) -> Result<NegativityReport> {
    sum_negativity_stochastic_with(
        q,
        &StochasticOptions {
            seeds,
            rng_seed,
            tol,
            ..StochasticOptions::default()
        },
    )
}

/// Seed `k` draws from a ChaCha8 stream `(rng_seed, k)`, so the result does
/// not depend on scheduling.
pub fn sum_negativity_stochastic_with(q: &QRep, opts: &StochasticOptions) -> Result<NegativityReport> {
    if q.len() > 64 {
        return Err(Error::TooLarge(q.dim()));
    }
    if opts.seeds == 0 {
        return Err(Error::InvalidArgument("at least one seed is required".into()));
    }
    let run = || -> Vec<SeedOutcome> {
        (0..opts.seeds)
            .into_par_iter()
            .map(|k| run_seed(q, opts, k))
            .collect()
    };
    let outcomes = if opts.threads == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run)
    };

    let mut best: Option<Climb> = None;
    let mut reseeds = 0;
    for o in outcomes {
        reseeds += o.reseeds;
        if let Some(c) = o.climb {
            if improves((c.lambda, c.mask), best.as_ref().map(|b| (b.lambda, b.mask))) {
                best = Some(c);
            }
        }
    }
    let d = q.dim() as f64;
    let (value, subset, state) = match best {
        Some(c) => ((-c.lambda / d).max(0.0), subset_indices(c.mask), c.state),
        // Every start was nonnegative: nothing negative was found.
        None => (0.0, Vec::new(), PureState::basis(q.dim(), 0)),
    };
    Ok(NegativityReport {
        label: q.label().to_string(),
        measure: NormOrder::ONE,
        value,
        achieving_state: state,
        achieving_subset: subset,
        exhaustive: false,
        subsets_scanned: 0,
        eigensolves: 0,
        seeds_used: opts.seeds,
        reseeds,
        wall_time_s: None,
    })
}

fn run_seed(q: &QRep, opts: &StochasticOptions, k: u64) -> SeedOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    rng.set_stream(k);
    let mut reseeds = 0;
    loop {
        let psi = PureState::random_with(q.dim(), &mut rng);
        if let Some(c) = climb(q, psi, opts.tol, opts.max_iters) {
            return SeedOutcome {
                climb: Some(c),
                reseeds,
            };
        }
        reseeds += 1;
        if reseeds >= MAX_RESEEDS {
            return SeedOutcome { climb: None, reseeds };
        }
    }
}

fn negative_mask(q: &QRep, psi: &PureState) -> u64 {
    q.elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.expectation(psi).expect("matching dimension") < 0.0)
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn masked_sum(q: &QRep, mask: u64) -> HermitianOperator {
    q.partial_sum(&subset_indices(mask))
}

/// Alternates from `start`; `None` if `start` has no negative entry.
pub(crate) fn climb(q: &QRep, start: PureState, tol: f64, max_iters: usize) -> Option<Climb> {
    let mut mask = negative_mask(q, &start);
    if mask == 0 {
        return None;
    }
    let (mut lambda, mut state) = masked_sum(q, mask).min_eigenpair();
    for _ in 1..max_iters {
        let next = negative_mask(q, &state);
        if next == mask || next == 0 {
            break;
        }
        let (l, s) = masked_sum(q, next).min_eigenpair();
        if l > lambda - tol {
            if l < lambda {
                lambda = l;
                state = s;
                mask = next;
            }
            break;
        }
        lambda = l;
        state = s;
        mask = next;
    }
    Some(Climb { lambda, mask, state })
}
