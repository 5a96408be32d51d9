//! Q-reps: self-dual orthogonal Hermitian bases `{Q_j}` with `Tr Q_j = 1`,
//! `Tr(Q_i Q_j) = d delta_ij` and `sum_j Q_j = d I`.
//!
//! The dual basis is stored; the frame `F_j = Q_j / d` only appears through
//! the `1/d` factors applied in [`represent`].

use std::fmt;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{
    check_dim, complex_normal, quadratic_form, trace_inner_product, DensityMatrix,
    HermitianOperator, PureState, C64,
};

pub const TRACE_TOL: f64 = 1e-10;
pub const GRAM_TOL: f64 = 1e-9;
pub const SUM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub max_trace_violation: f64,
    pub max_gram_violation: f64,
    pub max_sum_violation: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.max_trace_violation <= TRACE_TOL
            && self.max_gram_violation <= GRAM_TOL
            && self.max_sum_violation <= SUM_TOL
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} trace {:.3e} gram {:.3e} sum {:.3e} => {}",
            self.dim,
            self.max_trace_violation,
            self.max_gram_violation,
            self.max_sum_violation,
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

/// Measures how far `candidate` is from being a Q-rep. Errors only on
/// malformed input (wrong count, mixed dimensions).
pub fn validate_qrep(candidate: &[HermitianOperator]) -> Result<ValidationReport> {
    let first = candidate
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty operator list".into()))?;
    let d = first.dim();
    if candidate.len() != d * d {
        return Err(Error::WrongCount {
            expected: d * d,
            found: candidate.len(),
        });
    }
    for op in candidate {
        check_dim(d, op.dim())?;
    }

    let max_trace_violation = candidate
        .iter()
        .map(|q| (q.trace() - 1.0).abs())
        .fold(0.0, f64::max);

    let mut max_gram_violation: f64 = 0.0;
    for (i, a) in candidate.iter().enumerate() {
        for (j, b) in candidate.iter().enumerate().skip(i) {
            let target = if i == j { d as f64 } else { 0.0 };
            let g = trace_inner_product(a, b)?;
            max_gram_violation = max_gram_violation.max((g - target).abs());
        }
    }

    let total = candidate
        .iter()
        .skip(1)
        .fold(first.clone(), |acc, q| &acc + q);
    let max_sum_violation = total.max_abs_diff(&HermitianOperator::identity(d).scale(d as f64));

    Ok(ValidationReport {
        dim: d,
        max_trace_violation,
        max_gram_violation,
        max_sum_violation,
    })
}

/// A validated Q-rep.
#[derive(Clone, Debug)]
pub struct QRep {
    dim: usize,
    elements: Vec<HermitianOperator>,
    label: String,
}

impl QRep {
    pub fn new(elements: Vec<HermitianOperator>, label: impl Into<String>) -> Result<Self> {
        let report = validate_qrep(&elements)?;
        if !report.passed() {
            return Err(Error::InvalidQRep(report));
        }
        Ok(Self {
            dim: report.dim,
            elements,
            label: label.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Same Q-rep with its elements reordered: element `k` of the result is
    /// element `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() || order.iter().any(|&k| k >= seen.len() || std::mem::replace(&mut seen[k], true)) {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        Ok(Self {
            dim: self.dim,
            elements: order.iter().map(|&k| self.elements[k].clone()).collect(),
            label: self.label.clone(),
        })
    }

    /// `Tr(psi psi^H Q_j) / d` for every `j`, without forming the projector.
    pub fn represent_pure(&self, psi: &PureState) -> Result<QuasiprobVector> {
        check_dim(self.dim, psi.dim())?;
        let d = self.dim as f64;
        let entries = self
            .elements
            .iter()
            .map(|q| quadratic_form(q.matrix(), psi.amplitudes()) / d)
            .collect();
        Ok(QuasiprobVector { entries })
    }

    /// `sum_{i in subset} Q_i`
    pub fn partial_sum(&self, subset: &[usize]) -> HermitianOperator {
        subset
            .iter()
            .fold(HermitianOperator::zeros(self.dim), |acc, &i| &acc + &self.elements[i])
    }
}

/// Real vector summing to one; entries may be negative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasiprobVector {
    entries: Vec<f64>,
}

impl QuasiprobVector {
    pub const SUM_TOL: f64 = 1e-10;

    pub fn new(entries: Vec<f64>) -> Result<Self> {
        let s: f64 = entries.iter().sum();
        if (s - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::InvalidArgument(format!("entries sum to {s}, not 1")));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// A POVM: positive semidefinite effects summing to the identity.
#[derive(Clone, Debug)]
pub struct Povm {
    dim: usize,
    effects: Vec<HermitianOperator>,
}

impl Povm {
    pub const PSD_TOL: f64 = 1e-10;
    pub const SUM_TOL: f64 = 1e-9;

    pub fn new(effects: Vec<HermitianOperator>) -> Result<Self> {
        let dim = effects
            .first()
            .ok_or_else(|| Error::InvalidArgument("POVM without effects".into()))?
            .dim();
        let mut total = HermitianOperator::zeros(dim);
        for e in &effects {
            check_dim(dim, e.dim())?;
            let lo = e.eigenvalues()[0];
            if lo < -Self::PSD_TOL {
                return Err(Error::InvalidArgument(format!("effect has eigenvalue {lo:.3e}")));
            }
            total = &total + e;
        }
        let dev = total.max_abs_diff(&HermitianOperator::identity(dim));
        if dev > Self::SUM_TOL {
            return Err(Error::InvalidArgument(format!("effects sum to I only within {dev:.3e}")));
        }
        Ok(Self { dim, effects })
    }

    /// The single-outcome POVM `{I}`.
    pub fn trivial(dim: usize) -> Self {
        Self {
            dim,
            effects: vec![HermitianOperator::identity(dim)],
        }
    }

    /// Projective measurement in the computational basis.
    pub fn computational(dim: usize) -> Self {
        Self {
            dim,
            effects: (0..dim)
                .map(|k| HermitianOperator::projector(&PureState::basis(dim, k)))
                .collect(),
        }
    }

    /// `G_j = S^{-1/2} A_j S^{-1/2}` with `A_j = B_j B_j^H` Gaussian and
    /// `S = sum_j A_j`. Deterministic in `rng_seed`.
    pub fn random(dim: usize, outcomes: usize, rng_seed: u64) -> Result<Self> {
        if dim < 1 || outcomes < 1 {
            return Err(Error::InvalidArgument("empty POVM".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let raw: Vec<DMatrix<C64>> = (0..outcomes)
            .map(|_| {
                let b = DMatrix::from_fn(dim, dim, |_, _| complex_normal(&mut rng));
                &b * b.adjoint()
            })
            .collect();
        let s = raw.iter().fold(DMatrix::zeros(dim, dim), |acc, a| acc + a);
        let (vals, vecs) = HermitianOperator::symmetrized(s).eigen();
        let inv_sqrt = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            dim,
            vals.iter().map(|&v| C64::new(1.0 / v.sqrt(), 0.0)),
        ));
        let w = &vecs * inv_sqrt * vecs.adjoint();
        let effects = raw
            .iter()
            .map(|a| HermitianOperator::symmetrized(&w * a * &w))
            .collect();
        Self::new(effects)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn effects(&self) -> &[HermitianOperator] {
        &self.effects
    }
}

/// `p(i) = Tr(rho Q_i) / d`
pub fn represent(rho: &DensityMatrix, q: &QRep) -> Result<QuasiprobVector> {
    check_dim(q.dim(), rho.dim())?;
    let d = q.dim() as f64;
    let entries = q
        .elements()
        .iter()
        .map(|qi| trace_inner_product(rho.op(), qi).map(|t| t / d))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuasiprobVector { entries })
}

/// `sum_j v(j) Q_j`; inverts [`represent`] on density matrices.
pub fn reconstruct(v: &QuasiprobVector, q: &QRep) -> Result<HermitianOperator> {
    if v.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: q.len(),
            found: v.len(),
        });
    }
    let mut acc = DMatrix::zeros(q.dim(), q.dim());
    for (w, qj) in v.entries().iter().zip(q.elements()) {
        acc += qj.matrix() * C64::new(*w, 0.0);
    }
    Ok(HermitianOperator::symmetrized(acc))
}

/// `r[j][i] = Tr(Q_i G_j)`. Columns sum to one.
pub fn conditional_matrix(q: &QRep, g: &Povm) -> Result<Vec<Vec<f64>>> {
    check_dim(q.dim(), g.dim())?;
    g.effects()
        .iter()
        .map(|gj| {
            q.elements()
                .iter()
                .map(|qi| trace_inner_product(qi, gj))
                .collect()
        })
        .collect()
}

/// Both sides of the quasiprobabilistic Born rule:
/// `lhs[j] = Tr(rho G_j)` and `rhs[j] = sum_i p(i) r(j|i)`.
pub fn born_lhs_rhs(rho: &DensityMatrix, q: &QRep, g: &Povm) -> Result<(Vec<f64>, Vec<f64>)> {
    check_dim(q.dim(), rho.dim())?;
    check_dim(q.dim(), g.dim())?;
    let lhs = g
        .effects()
        .iter()
        .map(|gj| trace_inner_product(rho.op(), gj))
        .collect::<Result<Vec<_>>>()?;
    let p = represent(rho, q)?;
    let r = conditional_matrix(q, g)?;
    let rhs = r
        .iter()
        .map(|row| row.iter().zip(p.entries()).map(|(rji, pi)| rji * pi).sum())
        .collect();
    Ok((lhs, rhs))
}
