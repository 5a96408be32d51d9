//! Dense complex Hermitian linear algebra.
//!
//! Everything in this crate lives in dimension `d <= 8`, so operators are
//! plain dense `d x d` matrices backed by `nalgebra`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest asymmetry `|a_ij - conj(a_ji)|` that is silently symmetrized away.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct HermitianOperator {
    mat: DMatrix<C64>,
}

impl fmt::Debug for HermitianOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianOperator(d={}) {}", self.dim(), self.mat)
    }
}

impl HermitianOperator {
    /// Wraps a square matrix, replacing it with `(a + a^H)/2`.
    ///
    /// Inputs whose asymmetry exceeds [`HERMITIAN_TOL`] are rejected.
    pub fn new(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        if mat.nrows() == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let drift = asymmetry(&mat);
        if drift.is_nan() || drift > HERMITIAN_TOL {
            return Err(Error::NotHermitian(drift));
        }
        Ok(Self::symmetrized(mat))
    }

    /// Symmetrizes without checking. Used where the input is Hermitian by
    /// construction up to rounding (conjugations, sums).
    pub(crate) fn symmetrized(mat: DMatrix<C64>) -> Self {
        let adj = mat.adjoint();
        Self {
            mat: (mat + adj) * C64::new(0.5, 0.0),
        }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Result<Self> {
        Self::new(DMatrix::from_fn(dim, dim, f))
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self {
            mat: DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    C64::new(values[i], 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
        }
    }

    /// `|psi><psi|`
    pub fn projector(psi: &PureState) -> Self {
        let v = psi.as_vector();
        Self::symmetrized(&v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            mat: &self.mat * C64::new(c, 0.0),
        }
    }

    /// `U A U^H` for an arbitrary square `U`.
    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> Result<Self> {
        check_dim(self.dim(), u.nrows())?;
        Ok(Self::symmetrized(u * &self.mat * u.adjoint()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `<psi| A |psi>`
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        check_dim(self.dim(), psi.dim())?;
        Ok(quadratic_form(&self.mat, &psi.amplitudes))
    }

    /// Full eigendecomposition, eigenvalues ascending; column `k` of the
    /// returned matrix belongs to eigenvalue `k`.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<C64>) {
        let eig = SymmetricEigen::new(self.mat.clone());
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        (values, vectors)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().0
    }

    /// Smallest eigenvalue and a normalized eigenvector for it.
    pub fn min_eigenpair(&self) -> (f64, PureState) {
        let (values, vectors) = self.eigen();
        let amps: Vec<C64> = vectors.column(0).iter().copied().collect();
        (values[0], PureState::normalized(amps).expect("eigenvector is nonzero"))
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: Self) -> HermitianOperator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in operator sum");
        HermitianOperator {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: Self) -> HermitianOperator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in operator difference");
        HermitianOperator {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;
    fn mul(self, rhs: f64) -> HermitianOperator {
        self.scale(rhs)
    }
}

/// `Re Tr(a b)`. The imaginary part of the trace of a product of two
/// Hermitian matrices vanishes identically.
pub fn trace_inner_product(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    // Tr(ab) = sum_ij a_ij b_ji = sum_ij a_ij conj(b_ij)
    Ok(a.mat
        .iter()
        .zip(b.mat.iter())
        .map(|(x, y)| x.re * y.re + x.im * y.im)
        .sum())
}

/// Smallest eigenvalue of `h` with its eigenvector.
pub fn min_eigenpair(h: &HermitianOperator) -> (f64, PureState) {
    h.min_eigenpair()
}

/// A positive semidefinite unit-trace Hermitian operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    pub const TRACE_TOL: f64 = 1e-12;
    pub const EIGEN_TOL: f64 = 1e-10;

    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > Self::TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let lo = op.eigenvalues()[0];
        if lo < -Self::EIGEN_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {lo:.3e}")));
        }
        Ok(Self { op })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            op: HermitianOperator::projector(psi),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// `G G^H / Tr(G G^H)` for a complex Gaussian `G` (Hilbert-Schmidt measure).
    pub fn random(dim: usize, rng_seed: u64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!("dim {dim} < 2")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let g = DMatrix::from_fn(dim, dim, |_, _| complex_normal(&mut rng));
        let gg = &g * g.adjoint();
        let tr: f64 = (0..dim).map(|i| gg[(i, i)].re).sum();
        Ok(Self {
            op: HermitianOperator::symmetrized(gg * C64::new(1.0 / tr, 0.0)),
        })
    }

    /// Convex combination `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!("mixing weight {lambda}")));
        }
        Ok(Self {
            op: &self.op.scale(lambda) + &other.op.scale(1.0 - lambda),
        })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn purity(&self) -> f64 {
        trace_inner_product(&self.op, &self.op).expect("same dimension")
    }
}

/// A normalized vector in `C^d`.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(into = "crate::io::VectorLiteral", try_from = "crate::io::VectorLiteral")]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub const NORM_TOL: f64 = 1e-12;

    /// Accepts amplitudes whose norm is already 1 (within [`Self::NORM_TOL`]).
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let n = l2_norm(&amplitudes);
        if (n - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::InvalidState(format!("norm {n} != 1")));
        }
        Ok(Self { amplitudes })
    }

    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let n = l2_norm(&amplitudes);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidState("zero or non-finite vector".into()));
        }
        for a in &mut amplitudes {
            *a /= n;
        }
        Ok(Self { amplitudes })
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Self { amplitudes: amps }
    }

    /// Haar-random state drawn from `rng`.
    pub fn random_with<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let amps: Vec<C64> = (0..dim).map(|_| complex_normal(rng)).collect();
            if let Ok(s) = Self::normalized(amps) {
                return s;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn as_vector(&self) -> DVector<C64> {
        DVector::from_column_slice(&self.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// `|<self|other>|^2`
    pub fn overlap(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .norm_sqr()
    }
}

/// Haar-distributed pure state, deterministic in `rng_seed`.
pub fn random_pure_state(dim: usize, rng_seed: u64) -> Result<PureState> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("dim {dim} < 2")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    Ok(PureState::random_with(dim, &mut rng))
}

pub(crate) fn complex_normal<R: rand::Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

pub(crate) fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `Re <v| m |v>` without allocating.
pub(crate) fn quadratic_form(m: &DMatrix<C64>, v: &[C64]) -> f64 {
    let n = v.len();
    let mut acc = 0.0;
    for j in 0..n {
        let mut col = C64::new(0.0, 0.0);
        for i in 0..n {
            col += v[i].conj() * m[(i, j)];
        }
        acc += (col * v[j]).re;
    }
    acc
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

fn asymmetry(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(d);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> HermitianOperator {
        let g = DMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
        HermitianOperator::symmetrized(&g + g.adjoint())
    }

    #[test]
    fn identity_pairing_is_dimension() {
        let i3 = HermitianOperator::identity(3);
        assert_abs_diff_eq!(trace_inner_product(&i3, &i3).unwrap(), 3.0);
    }

    #[test]
    fn pairing_matches_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in 2..=6 {
            let a = random_hermitian(dim, &mut rng);
            let b = random_hermitian(dim, &mut rng);
            let mut full = C64::new(0.0, 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    full += a.entry(i, j) * b.entry(j, i);
                }
            }
            assert!(full.im.abs() < 1e-10);
            assert_abs_diff_eq!(trace_inner_product(&a, &b).unwrap(), full.re, epsilon = 1e-10);
            assert_abs_diff_eq!(
                trace_inner_product(&a, &b).unwrap(),
                trace_inner_product(&b, &a).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn pairing_rejects_mismatch() {
        let r = trace_inner_product(&HermitianOperator::identity(2), &HermitianOperator::identity(3));
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        ]);
        assert!(matches!(HermitianOperator::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn symmetrizes_small_drift() {
        let m = DMatrix::from_row_slice(2, 2, &[
            C64::new(1.0, 0.0),
            C64::new(0.5, 1e-13),
            C64::new(0.5, 0.0),
            C64::new(2.0, 0.0),
        ]);
        let h = HermitianOperator::new(m).unwrap();
        assert_eq!(h.entry(0, 1), h.entry(1, 0).conj());
    }

    #[test]
    fn diagonal_min_eigenpair() {
        let h = HermitianOperator::diagonal(&[1.0, -2.0, 0.5]);
        let (val, vec) = h.min_eigenpair();
        assert_abs_diff_eq!(val, -2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vec.amplitudes()[1].norm(), 1.0, epsilon = 1e-12);
    }

    fn residual(h: &HermitianOperator, val: f64, v: &PureState) -> f64 {
        let hv = h.matrix() * v.as_vector();
        let r = hv - v.as_vector() * C64::new(val, 0.0);
        r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    #[test]
    fn eigen_residuals_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for dim in 2..=8 {
            for _ in 0..1000 {
                let h = random_hermitian(dim, &mut rng);
                let (val, v) = h.min_eigenpair();
                assert!((v.norm() - 1.0).abs() < 1e-12);
                assert!(residual(&h, val, &v) <= 1e-9 * h.frobenius_norm());
                let vals = h.eigenvalues();
                assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn shift_moves_min_eigenvalue() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for dim in 2..=5 {
            let h = random_hermitian(dim, &mut rng);
            let c: f64 = rng.random_range(-3.0..3.0);
            let shifted = &h + &HermitianOperator::identity(dim).scale(c);
            let (v0, s0) = h.min_eigenpair();
            let (v1, s1) = shifted.min_eigenpair();
            assert_abs_diff_eq!(v1, v0 + c, epsilon = 1e-10);
            assert_abs_diff_eq!(s0.overlap(&s1), 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn random_state_deterministic_and_normalized() {
        let a = random_pure_state(2, 7).unwrap();
        let b = random_pure_state(2, 7).unwrap();
        assert_eq!(a, b);
        for seed in 0..20 {
            let s = random_pure_state(4, seed).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
        assert!(random_pure_state(1, 0).is_err());
    }

    #[test]
    fn haar_first_moment() {
        let mean: f64 = (0..10_000u64)
            .map(|s| random_pure_state(3, s).unwrap().amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / 10_000.0;
        assert!((mean - 1.0 / 3.0).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn density_matrix_checks() {
        assert!(DensityMatrix::new(HermitianOperator::diagonal(&[1.5, -0.5])).is_err());
        assert!(DensityMatrix::new(HermitianOperator::diagonal(&[0.5, 0.25])).is_err());
        let rho = DensityMatrix::random(4, 3).unwrap();
        assert!(DensityMatrix::new(rho.op().clone()).is_ok());
        let pure = DensityMatrix::from_pure(&random_pure_state(3, 1).unwrap());
        assert_abs_diff_eq!(pure.purity(), 1.0, epsilon = 1e-12);
    }
}
