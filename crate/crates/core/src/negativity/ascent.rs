//! `N^p` for finite `p` by multi-start gradient ascent on the unit sphere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{np_of, NegativityReport, NormOrder};
use crate::error::{Error, Result};
use crate::operators::{l2_norm, PureState, C64};
use crate::qrep::QRep;

#[derive(Clone, Debug)]
pub struct AscentOptions {
    pub seeds: u64,
    pub rng_seed: u64,
    pub max_iters: usize,
    /// Stop once a step changes `sum |p^-|^p` by less than this.
    pub tol: f64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        Self {
            seeds: 200,
            rng_seed: 0,
            max_iters: 2000,
            tol: 1e-15,
        }
    }
}

const MAX_RESEEDS: u64 = 64;

/// Maximizes `|| p^-(psi) ||_p` over pure states `psi`. Step sizes are halved
/// whenever a step fails to increase the objective.
pub fn np_negativity_ascent(q: &QRep, p: NormOrder, opts: &AscentOptions) -> Result<NegativityReport> {
    if p.is_infinite() {
        return Err(Error::InvalidArgument("use the ceiling formula for p = inf".into()));
    }
    if opts.seeds == 0 {
        return Err(Error::InvalidArgument("at least one seed is required".into()));
    }
    let pv = p.value();
    let outcomes: Vec<(Option<(f64, PureState)>, u64)> = (0..opts.seeds)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
            rng.set_stream(k);
            let mut reseeds = 0;
            while reseeds < MAX_RESEEDS {
                let psi = PureState::random_with(q.dim(), &mut rng);
                if objective(q, psi.amplitudes(), pv) > 0.0 {
                    return (Some(ascend(q, psi, pv, opts)), reseeds);
                }
                reseeds += 1;
            }
            (None, reseeds)
        })
        .collect();

    let mut best: Option<(f64, PureState)> = None;
    let mut reseeds = 0;
    for (o, r) in outcomes {
        reseeds += r;
        if let Some((f, s)) = o {
            if best.as_ref().is_none_or(|(g, _)| f > *g) {
                best = Some((f, s));
            }
        }
    }
    let (value, state) = match best {
        Some((_, s)) => (np_of(q.represent_pure(&s)?.entries(), p), s),
        None => (0.0, PureState::basis(q.dim(), 0)),
    };
    let subset = q
        .represent_pure(&state)?
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x < 0.0)
        .map(|(i, _)| i)
        .collect();
    Ok(NegativityReport {
        label: q.label().to_string(),
        measure: p,
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

fn entries(q: &QRep, psi: &[C64]) -> Vec<f64> {
    let d = q.dim() as f64;
    q.elements()
        .iter()
        .map(|e| crate::operators::quadratic_form(e.matrix(), psi) / d)
        .collect()
}

/// `sum_j |p^-(j)|^p`
fn objective(q: &QRep, psi: &[C64], p: f64) -> f64 {
    entries(q, psi).into_iter().filter(|&x| x < 0.0).map(|x| (-x).powf(p)).sum()
}

/// Ascent direction `sum_{q_j < 0} p |q_j|^{p-1} (-Q_j psi / d)`.
fn gradient(q: &QRep, psi: &[C64], p: f64) -> Vec<C64> {
    let d = q.dim();
    let mut g = vec![C64::new(0.0, 0.0); d];
    for (e, x) in q.elements().iter().zip(entries(q, psi)) {
        if x >= 0.0 {
            continue;
        }
        let w = -p * (-x).powf(p - 1.0) / d as f64;
        let m = e.matrix();
        for (r, gr) in g.iter_mut().enumerate() {
            for (c, a) in psi.iter().enumerate() {
                *gr += m[(r, c)] * a * w;
            }
        }
    }
    g
}

fn ascend(q: &QRep, start: PureState, p: f64, opts: &AscentOptions) -> (f64, PureState) {
    let mut psi: Vec<C64> = start.amplitudes().to_vec();
    let mut f = objective(q, &psi, p);
    let mut step = 1.0;
    for _ in 0..opts.max_iters {
        let g = gradient(q, &psi, p);
        let mut moved = false;
        while step > 1e-14 {
            let mut trial: Vec<C64> = psi.iter().zip(&g).map(|(a, b)| a + b * step).collect();
            let n = l2_norm(&trial);
            trial.iter_mut().for_each(|a| *a /= n);
            let ft = objective(q, &trial, p);
            if ft > f {
                let gain = ft - f;
                psi = trial;
                f = ft;
                step *= 1.5;
                moved = gain > opts.tol;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
    (f, PureState::normalized(psi).expect("unit vector"))
}
