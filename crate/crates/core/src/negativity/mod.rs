//! The `N^p` negativities: `L^p` norms of the negative part of a
//! quasiprobability vector, and their maxima over quantum states for a Q-rep.
//!
//! * `p = inf` (ceiling negativity) is exact via the smallest eigenvalue of
//!   any single `Q_j`.
//! * `p = 1` (sum negativity) is exact via the smallest eigenvalue of any
//!   partial sum `sum_{i in S} Q_i`; see [`sum_negativity_exhaustive`].
//! * other `p` use multi-start projected gradient ascent over pure states.

mod ascent;
mod exhaustive;
mod stochastic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::Decimal;
use crate::operators::PureState;
use crate::qrep::{QRep, QuasiprobVector};

pub use ascent::{np_negativity_ascent, AscentOptions};
pub use exhaustive::{sum_negativity_exhaustive, MAX_EXHAUSTIVE_DIM};
pub use stochastic::{
    sum_negativity_stochastic, sum_negativity_stochastic_with, StochasticOptions,
    DEFAULT_MAX_ITERS, DEFAULT_TOL,
};

/// Exponent `p` of an `L^p` norm, `1 <= p <= inf`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(into = "Decimal", try_from = "Decimal")]
pub struct NormOrder(f64);

impl NormOrder {
    pub const ONE: Self = Self(1.0);
    pub const TWO: Self = Self(2.0);
    pub const INFINITY: Self = Self(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidArgument(format!("norm order p = {p} < 1")));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl fmt::Display for NormOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for NormOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::INFINITY),
            t => Self::new(t.parse().map_err(|_| Error::Parse(format!("norm order {s:?}")))?),
        }
    }
}

impl From<NormOrder> for Decimal {
    fn from(p: NormOrder) -> Self {
        if p.is_infinite() {
            Decimal::Str("inf".into())
        } else {
            Decimal::Num(p.0)
        }
    }
}

impl TryFrom<Decimal> for NormOrder {
    type Error = Error;
    fn try_from(d: Decimal) -> Result<Self> {
        match d {
            Decimal::Num(x) => Self::new(x),
            Decimal::Str(s) => s.parse(),
        }
    }
}

/// Outcome of a Q-rep negativity computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NegativityReport {
    pub label: String,
    pub measure: NormOrder,
    pub value: f64,
    pub achieving_state: PureState,
    /// Indices `i` with the achieving partial sum `sum_{i in S} Q_i`
    /// (for `p = inf`, the single minimizing element).
    pub achieving_subset: Vec<usize>,
    pub exhaustive: bool,
    pub subsets_scanned: u64,
    pub eigensolves: u64,
    pub seeds_used: u64,
    pub reseeds: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

/// `p^(-)(j) = (|p(j)| - p(j)) / 2`
pub fn negative_part(v: &QuasiprobVector) -> Vec<f64> {
    negative_part_of(v.entries())
}

pub(crate) fn negative_part_of(entries: &[f64]) -> Vec<f64> {
    entries.iter().map(|&x| if x < 0.0 { -x } else { 0.0 }).collect()
}

/// `|| p^(-) ||_p`
pub fn np_negativity(v: &QuasiprobVector, p: NormOrder) -> f64 {
    np_of(v.entries(), p)
}

pub(crate) fn np_of(entries: &[f64], p: NormOrder) -> f64 {
    let neg = negative_part_of(entries);
    if p.is_infinite() {
        neg.into_iter().fold(0.0, f64::max)
    } else if p.0 == 1.0 {
        neg.into_iter().sum()
    } else {
        neg.iter().map(|x| x.powf(p.0)).sum::<f64>().powf(1.0 / p.0)
    }
}

/// `(1/d) |min_j lambda_min(Q_j)|`, exact.
pub fn ceiling_negativity(q: &QRep) -> NegativityReport {
    let d = q.dim() as f64;
    let (idx, (val, state)) = q
        .elements()
        .iter()
        .map(|e| e.min_eigenpair())
        .enumerate()
        .fold(None, |best: Option<(usize, (f64, PureState))>, (k, cand)| match best {
            Some((_, (v, _))) if v <= cand.0 => best,
            _ => Some((k, cand)),
        })
        .expect("a Q-rep has elements");
    NegativityReport {
        label: q.label().to_string(),
        measure: NormOrder::INFINITY,
        value: (-val / d).max(0.0),
        achieving_state: state,
        achieving_subset: vec![idx],
        exhaustive: true,
        subsets_scanned: q.len() as u64,
        eigensolves: q.len() as u64,
        seeds_used: 0,
        reseeds: 0,
        wall_time_s: None,
    }
}

/// `max_rho N^p(rho)` routed by `p`: ceiling formula for `p = inf`,
/// exhaustive partial sums for `p = 1` and `d <= 5`, stochastic partial sums
/// for `p = 1` and larger `d`, gradient ascent otherwise.
pub fn np_negativity_qrep(q: &QRep, p: NormOrder, seeds: u64, rng_seed: u64) -> Result<NegativityReport> {
    if p.is_infinite() {
        Ok(ceiling_negativity(q))
    } else if p == NormOrder::ONE {
        if q.dim() <= MAX_EXHAUSTIVE_DIM {
            sum_negativity_exhaustive(q, rayon::current_num_threads())
        } else {
            sum_negativity_stochastic(q, seeds, rng_seed, DEFAULT_TOL)
        }
    } else {
        np_negativity_ascent(
            q,
            p,
            &AscentOptions {
                seeds,
                rng_seed,
                ..AscentOptions::default()
            },
        )
    }
}

pub(crate) fn subset_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

/// Candidate `(lambda, mask)` replaces `best` if it is smaller by more than
/// `TIE_TOL`, or within `TIE_TOL` with a smaller bitmask.
pub(crate) const TIE_TOL: f64 = 1e-12;

pub(crate) fn improves(cand: (f64, u64), best: Option<(f64, u64)>) -> bool {
    match best {
        None => true,
        Some((v, m)) => cand.0 < v - TIE_TOL || (cand.0 <= v + TIE_TOL && cand.1 < m),
    }
}
