//! Sum negativity across the family of WH Q-reps in dimension 3.
//!
//! Samples fiducials with the closed-form sampler, evaluates each exactly,
//! then polishes the smallest few with Nelder-Mead over the continuous
//! sampler parameters. The smallest value seen is compared with
//! `(2/3)(cos(pi/9) - 1/2)`, the value at `Q^min`.

use std::f64::consts::PI;

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::negativity::sum_negativity_exhaustive;
use crate::wh::{self, WhSampleParams};

/// `(2/3)(cos(pi/9) - 1/2)`
pub fn conjectured_wh_minimum() -> f64 {
    2.0 / 3.0 * ((PI / 9.0).cos() - 0.5)
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub samples: usize,
    pub rng_seed: u64,
    /// How many of the smallest samples to polish.
    pub refine: usize,
    pub max_iters: u64,
    /// Worker threads; `0` uses the global rayon pool.
    pub threads: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            samples: 10_000,
            rng_seed: 0,
            refine: 6,
            max_iters: 1500,
            threads: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub samples: usize,
    pub rng_seed: u64,
    pub bound: f64,
    /// Samples below `bound - 1e-9`.
    pub violations: usize,
    pub sample_min: f64,
    pub sample_min_params: WhSampleParams,
    pub refined_min: f64,
    pub refined_params: WhSampleParams,
    /// Largest gap between the sorted fiducial spectra of the refined
    /// minimizer and `Q^min`. Spectra are invariant on a Clifford orbit.
    pub spectrum_gap: f64,
}

impl SweepReport {
    pub fn recovers_qmin_class(&self, value_tol: f64, spectrum_tol: f64) -> bool {
        (self.refined_min - self.bound).abs() <= value_tol && self.spectrum_gap <= spectrum_tol
    }
}

/// Exact sum negativity of the WH Q-rep built from `params`.
pub fn wh_sum_negativity(params: &WhSampleParams) -> Result<f64> {
    let q = params.sample()?.qrep("wh-sample")?;
    Ok(sum_negativity_exhaustive(&q, 1)?.value)
}

pub fn conjecture_sweep(opts: &SweepOptions) -> Result<SweepReport> {
    if opts.samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    let params: Vec<WhSampleParams> = (0..opts.samples)
        .map(|_| WhSampleParams::sample_random(&mut rng).0)
        .collect();
    type Evaluated = (Vec<f64>, Vec<(f64, WhSampleParams)>);
    let work = || -> Result<Evaluated> {
        let values = params
            .par_iter()
            .map(wh_sum_negativity)
            .collect::<Result<Vec<f64>>>()?;
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
        let refined = order
            .par_iter()
            .take(opts.refine.max(1))
            .map(|&i| refine(params[i], values[i], opts.max_iters))
            .collect::<Result<Vec<_>>>()?;
        Ok((values, refined))
    };
    let (values, refined) = if opts.threads == 0 {
        work()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work)?
    };

    let bound = conjectured_wh_minimum();
    let (min_idx, &sample_min) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    let (refined_min, refined_params) = refined
        .into_iter()
        .fold((sample_min, params[min_idx]), |best, r| if r.0 < best.0 { r } else { best });
    Ok(SweepReport {
        samples: opts.samples,
        rng_seed: opts.rng_seed,
        bound,
        violations: values.iter().filter(|&&v| v < bound - 1e-9).count(),
        sample_min,
        sample_min_params: params[min_idx],
        refined_min,
        refined_params,
        spectrum_gap: spectrum_gap(&refined_params)?,
    })
}

fn spectrum_gap(params: &WhSampleParams) -> Result<f64> {
    let found = params.sample()?.to_operator().eigenvalues();
    let target = wh::qmin_fiducial().eigenvalues();
    Ok(found
        .iter()
        .zip(&target)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

struct WhCost {
    branch: u8,
}

impl WhCost {
    fn params(&self, x: &[f64]) -> WhSampleParams {
        WhSampleParams {
            diag_angle: x[0],
            polar: x[1],
            azimuth: x[2],
            twist: x[3],
            branch: self.branch,
        }
    }
}

impl CostFunction for WhCost {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        // Infeasible moduli lie outside the family; a constant above every
        // sum negativity in d = 3 keeps the simplex out.
        Ok(wh_sum_negativity(&self.params(x)).unwrap_or(1.0))
    }
}

fn refine(start: WhSampleParams, start_value: f64, max_iters: u64) -> Result<(f64, WhSampleParams)> {
    let cost = WhCost { branch: start.branch };
    let x0 = vec![start.diag_angle, start.polar, start.azimuth, start.twist];
    let mut best = (start_value, start);
    let mut scale = 0.05;
    let mut x = x0;
    // Restarting with a fresh, smaller simplex helps at the kinks of a
    // max-of-eigenvalues objective.
    for _ in 0..4 {
        let simplex: Vec<Vec<f64>> = std::iter::once(x.clone())
            .chain((0..4).map(|i| {
                let mut y = x.clone();
                y[i] += scale;
                y
            }))
            .collect();
        let solver = NelderMead::new(simplex)
            .with_sd_tolerance(1e-14)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let res = Executor::new(
            WhCost {
                branch: start.branch,
            },
            solver,
        )
        .configure(|s| s.max_iters(max_iters))
        .run()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let state = res.state();
        if let Some(p) = state.best_param.clone() {
            if state.best_cost < best.0 {
                best = (state.best_cost, cost.params(&p));
            }
            x = p;
        }
        scale *= 0.1;
    }
    Ok(best)
}
