//! Stationary quasiprobability vectors on the pure-state sphere and the
//! local-maximum certificate they give for sum negativity.
//!
//! A pure state's quasiprobability vector satisfies `sum p = 1` and
//! `sum p^2 = 1/d`. On that sphere the stationary points of the sum of
//! negative entries take at most two values, or three if one of them is 0:
//! `n` entries equal to `a < 0`, `m` zeros, and `k = d^2 - n - m` entries
//! equal to `b > 0`. Their largest `n |a|` bounds the sum negativity of every
//! Q-rep in dimension `d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::negativity::NegativityReport;
use crate::qrep::QRep;

/// Default absolute gap separating two value clusters.
pub const CLUSTER_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationaryVector {
    pub dim: usize,
    pub n: usize,
    pub m: usize,
    pub a: f64,
    pub b: f64,
}

impl StationaryVector {
    /// Number of positive entries.
    pub fn k(&self) -> usize {
        self.dim * self.dim - self.n - self.m
    }

    /// Sum negativity `n |a|` of the vector.
    pub fn value(&self) -> f64 {
        self.n as f64 * -self.a
    }

    pub fn entries(&self) -> Vec<f64> {
        let mut v = vec![self.a; self.n];
        v.extend(std::iter::repeat_n(0.0, self.m));
        v.extend(std::iter::repeat_n(self.b, self.k()));
        v
    }
}

/// Solves `n a + k b = 1`, `n a^2 + k b^2 = 1/d` for `a < 0 < b`.
///
/// Eliminating `a` leaves `k (k + n) b^2 - 2 k b + 1 - n/d = 0`; only the
/// larger root can make `a` negative, and it does iff `k (k + n - d) > n d`.
pub fn stationary_values(d: usize, n: usize, m: usize) -> Result<StationaryVector> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d = {d} < 2")));
    }
    if n == 0 || n + m >= d * d {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n and n + m < d^2, got n = {n}, m = {m}, d = {d}"
        )));
    }
    let k = (d * d - n - m) as f64;
    let (nf, df) = (n as f64, d as f64);
    if k * (k + nf - df) <= nf * df {
        return Err(Error::NoSolution(format!(
            "no stationary vector with a < 0 < b for d = {d}, n = {n}, m = {m}"
        )));
    }
    let disc = k * nf * (k + nf - df) / df;
    let b = (k + disc.sqrt()) / (k * (k + nf));
    let a = (1.0 - k * b) / nf;
    Ok(StationaryVector { dim: d, n, m, a, b })
}

/// Every feasible `(n, m)`, ordered by `n` then `m`.
pub fn stationary_table(d: usize) -> Result<Vec<StationaryVector>> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d = {d} < 2")));
    }
    let mut rows = Vec::new();
    for n in 1..d * d {
        for m in 0..(d * d - n) {
            if let Ok(s) = stationary_values(d, n, m) {
                rows.push(s);
            }
        }
    }
    Ok(rows)
}

/// Largest `n |a|` over the table; ties go to the smallest `(n, m)`.
pub fn max_stationary_sum_negativity(d: usize) -> Result<StationaryVector> {
    stationary_table(d)?
        .into_iter()
        .reduce(|best, s| if s.value() > best.value() + 1e-14 { s } else { best })
        .ok_or_else(|| Error::NoSolution(format!("no stationary vector in d = {d}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub center: f64,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub label: String,
    pub dim: usize,
    pub tol: f64,
    /// Sum negativity of the achieving state's vector.
    pub value: f64,
    pub clusters: Vec<Cluster>,
    /// Two values, or three with one at zero: a strict local maximum.
    pub certified: bool,
    pub stationary_max: f64,
    /// `value` equals the stationary maximum within `tol`.
    pub global_max_witness: bool,
}

impl Certificate {
    pub fn verdict(&self) -> &'static str {
        match (self.certified, self.global_max_witness) {
            (true, true) => "local-max, global-max witness",
            (true, false) => "local-max",
            (false, true) => "no certificate, global-max witness",
            (false, false) => "no certificate",
        }
    }
}

/// Sorts `values` and starts a new cluster wherever consecutive entries are
/// more than `tol` apart.
pub fn cluster_values(values: &[f64], tol: f64) -> Vec<Cluster> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for x in sorted {
        match groups.last_mut() {
            Some(g) if x - g[g.len() - 1] <= tol => g.push(x),
            _ => groups.push(vec![x]),
        }
    }
    groups
        .into_iter()
        .map(|g| Cluster {
            center: g.iter().sum::<f64>() / g.len() as f64,
            count: g.len(),
        })
        .collect()
}

pub fn local_max_certificate(report: &NegativityReport, q: &QRep, tol: f64) -> Result<Certificate> {
    let d = q.dim();
    if report.achieving_state.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: report.achieving_state.dim(),
        });
    }
    let v = q.represent_pure(&report.achieving_state)?;
    let value: f64 = v.entries().iter().filter(|&&x| x < 0.0).map(|x| -x).sum();
    let clusters = cluster_values(v.entries(), tol);
    let certified = match clusters.as_slice() {
        [lo, hi] => lo.center < -tol && hi.center > tol,
        [lo, mid, hi] => lo.center < -tol && mid.center.abs() <= tol && hi.center > tol,
        _ => false,
    };
    let stationary_max = max_stationary_sum_negativity(d)?.value();
    Ok(Certificate {
        label: q.label().to_string(),
        dim: d,
        tol,
        value,
        clusters,
        certified,
        stationary_max,
        global_max_witness: (value - stationary_max).abs() <= tol,
    })
}
