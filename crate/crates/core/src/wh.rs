//! Weyl-Heisenberg group orbits and the `d = 3` WH Q-rep fiducials.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::MatrixLiteral;
use crate::operators::{HermitianOperator, C64};
use crate::qrep::QRep;

/// Shift `X|j> = |j+1>` and phase `Z|j> = w^j |j>` in dimension `d`.
#[derive(Clone, Debug)]
pub struct WhGroup {
    dim: usize,
    x_op: DMatrix<C64>,
    z_op: DMatrix<C64>,
    omega: C64,
}

impl WhGroup {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidArgument("dimension 0".into()));
        }
        let omega = C64::from_polar(1.0, 2.0 * PI / dim as f64);
        let x_op = DMatrix::from_fn(dim, dim, |i, j| {
            if i == (j + 1) % dim {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let z_op = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                root_of_unity(dim, i)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Ok(Self {
            dim,
            x_op,
            z_op,
            omega,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x_op(&self) -> &DMatrix<C64> {
        &self.x_op
    }

    pub fn z_op(&self) -> &DMatrix<C64> {
        &self.z_op
    }

    pub fn omega(&self) -> C64 {
        self.omega
    }

    /// `X^i Z^j`, built entrywise: `(X^i Z^j)_{k+i, k} = w^{jk}`.
    pub fn displacement(&self, i: usize, j: usize) -> DMatrix<C64> {
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for k in 0..d {
            m[((k + i) % d, k)] = root_of_unity(d, (j * k) % d);
        }
        m
    }

    /// All `d^2` displacements, lexicographic in `(i, j)`, phases dropped.
    pub fn displacements(&self) -> Vec<DMatrix<C64>> {
        (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.displacement(i, j))
            .collect()
    }
}

/// `exp(2 pi i k / d)` with exact values at the quarter turns.
fn root_of_unity(d: usize, k: usize) -> C64 {
    let k = k % d;
    if (4 * k).is_multiple_of(d) {
        match 4 * k / d {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    } else {
        C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)
    }
}

/// `Q_ij = X^i Z^j Q_0 (X^i Z^j)^H`, ordered lexicographically by `(i, j)`.
pub fn wh_orbit(fiducial: &HermitianOperator, d: usize) -> Result<Vec<HermitianOperator>> {
    if fiducial.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: fiducial.dim(),
        });
    }
    let g = WhGroup::new(d)?;
    g.displacements()
        .iter()
        .map(|u| fiducial.conjugate_by(u))
        .collect()
}

/// The `4^factors` displacements of the `factors`-fold tensor power of the
/// qubit WH group, lexicographic in `(i1, j1, i2, j2, ...)`.
pub fn tensor_displacements(factors: usize) -> Vec<DMatrix<C64>> {
    let qubit = WhGroup::new(2).expect("d = 2").displacements();
    let mut ops = vec![DMatrix::<C64>::identity(1, 1)];
    for _ in 0..factors {
        ops = ops
            .iter()
            .flat_map(|a| qubit.iter().map(move |b| a.kronecker(b)))
            .collect();
    }
    ops
}

/// Orbit under `X^{i1}Z^{j1} (x) X^{i2}Z^{j2} (x) X^{i3}Z^{j3}` for three
/// qubit factors (the Hoggar symmetry group in `d = 8`).
pub fn tensor_wh_orbit(fiducial: &HermitianOperator, factors: usize) -> Result<Vec<HermitianOperator>> {
    let expected = 1usize << factors;
    if factors == 0 || fiducial.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: fiducial.dim(),
        });
    }
    tensor_displacements(factors)
        .iter()
        .map(|u| fiducial.conjugate_by(u))
        .collect()
}

/// WH Q-rep generated by `fiducial`.
pub fn wh_qrep(fiducial: &HermitianOperator, label: impl Into<String>) -> Result<QRep> {
    QRep::new(wh_orbit(fiducial, fiducial.dim())?, label)
}

pub const FIDUCIAL_TOL: f64 = 1e-9;

/// Residuals of the three `d = 3` WH Q-rep fiducial conditions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WhConditionReport {
    /// `z^2 + zw + w^2 - (z + w)`
    pub diagonal: f64,
    /// `|y|^2 + |x|^2 + |v|^2 - 1`
    pub moduli: f64,
    /// `|xy + y* v + v* x*|`
    pub phase: f64,
}

impl WhConditionReport {
    pub fn passed(&self) -> bool {
        self.max_residual() < FIDUCIAL_TOL
    }

    pub fn max_residual(&self) -> f64 {
        self.diagonal.abs().max(self.moduli.abs()).max(self.phase.abs())
    }
}

/// Checks whether the unit-trace `3 x 3` Hermitian `m` generates a WH Q-rep.
pub fn check_wh_fiducial_d3(m: &HermitianOperator) -> Result<WhConditionReport> {
    if m.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: m.dim(),
        });
    }
    let tr = m.trace();
    if (tr - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("fiducial trace {tr} != 1")));
    }
    Ok(WhFiducialD3::from_operator(m)?.residuals())
}

/// A unit-trace `3 x 3` Hermitian matrix in the layout
///
/// ```text
/// [ a   y   x     ]
/// [ y*  f   v     ]
/// [ x*  v*  1-a-f ]
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WhFiducialD3 {
    pub diag: (f64, f64),
    pub offdiag: (C64, C64, C64),
}

impl WhFiducialD3 {
    pub fn from_operator(m: &HermitianOperator) -> Result<Self> {
        if m.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: m.dim(),
            });
        }
        Ok(Self {
            diag: (m.entry(0, 0).re, m.entry(1, 1).re),
            offdiag: (m.entry(0, 1), m.entry(0, 2), m.entry(1, 2)),
        })
    }

    pub fn to_operator(&self) -> HermitianOperator {
        let (a, f) = self.diag;
        let (y, x, v) = self.offdiag;
        let re = |r: f64| C64::new(r, 0.0);
        let m = DMatrix::from_row_slice(3, 3, &[
            re(a), y, x,
            y.conj(), re(f), v,
            x.conj(), v.conj(), re(1.0 - a - f),
        ]);
        HermitianOperator::symmetrized(m)
    }

    pub fn residuals(&self) -> WhConditionReport {
        let (z, w) = self.diag;
        let (y, x, v) = self.offdiag;
        WhConditionReport {
            diagonal: z * z + z * w + w * w - (z + w),
            moduli: y.norm_sqr() + x.norm_sqr() + v.norm_sqr() - 1.0,
            phase: (x * y + y.conj() * v + v.conj() * x.conj()).norm(),
        }
    }

    pub fn qrep(&self, label: impl Into<String>) -> Result<QRep> {
        wh_qrep(&self.to_operator(), label)
    }
}

/// Coordinates on the 4-dimensional manifold of `d = 3` WH Q-rep fiducials.
///
/// * `diag_angle`: diagonal entries `1/3 + (2/3) cos(angle - 2 pi k / 3)`.
/// * `polar`, `azimuth`: `(|y|, |x|, |v|) = (sin p cos a, sin p sin a, cos p)`
///   up to sign.
/// * `twist`: `(x, y, v) -> (e^{-it} x, e^{it} y, e^{it} v)`, which leaves
///   all three conditions invariant.
/// * `branch` (0..6): which of the discrete phase solutions to take.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WhSampleParams {
    pub diag_angle: f64,
    pub polar: f64,
    pub azimuth: f64,
    pub twist: f64,
    pub branch: u8,
}

pub const BRANCHES: u8 = 6;

impl WhSampleParams {
    /// Uniform angles; moduli uniform on the sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            diag_angle: rng.random_range(0.0..2.0 * PI),
            polar: rng.random_range(-1.0f64..1.0).acos(),
            azimuth: rng.random_range(0.0..2.0 * PI),
            twist: rng.random_range(0.0..2.0 * PI),
            branch: rng.random_range(0..BRANCHES),
        }
    }

    pub fn offdiag(&self) -> [f64; 3] {
        [self.polar, self.azimuth, self.twist]
    }

    pub fn sample(&self) -> Result<WhFiducialD3> {
        sample_wh_fiducial_d3(self.diag_angle, self.offdiag(), self.branch)
    }

    /// Draws parameters until they admit a solution.
    pub fn sample_random<R: Rng + ?Sized>(rng: &mut R) -> (Self, WhFiducialD3) {
        loop {
            let p = Self::random(rng);
            if let Ok(f) = p.sample() {
                return (p, f);
            }
        }
    }

    /// Recovers parameters that reproduce `fid` (up to rounding).
    pub fn invert(fid: &WhFiducialD3) -> Result<Self> {
        let res = fid.residuals();
        if res.max_residual() > 1e-8 {
            return Err(Error::NoSolution(format!(
                "not a WH fiducial (residual {:.3e})",
                res.max_residual()
            )));
        }
        let (z, w) = fid.diag;
        let c0 = 1.5 * (z - 1.0 / 3.0);
        let c1 = 1.5 * (w - 1.0 / 3.0);
        // cos(t - 2pi/3) = -cos t / 2 + (sqrt3/2) sin t
        let s0 = (2.0 * c1 + c0) / 3f64.sqrt();
        let diag_angle = s0.atan2(c0);
        let (y, x, v) = fid.offdiag;
        let polar = v.norm().clamp(0.0, 1.0).acos();
        let azimuth = x.norm().atan2(y.norm());

        let mut best: Option<(f64, Self)> = None;
        for branch in 0..BRANCHES {
            let base = Self {
                diag_angle,
                polar,
                azimuth,
                twist: 0.0,
                branch,
            };
            let Ok(b) = base.sample() else { continue };
            // twist rotates v and y by +t; use whichever is better conditioned
            let twist = if v.norm() >= y.norm() {
                (v / b.offdiag.2).arg()
            } else {
                (y / b.offdiag.0).arg()
            };
            let cand = Self { twist, ..base };
            let Ok(m) = cand.sample() else { continue };
            let err = m.to_operator().max_abs_diff(&fid.to_operator());
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, cand));
            }
        }
        match best {
            Some((err, p)) if err < 1e-8 => Ok(p),
            Some((err, _)) => Err(Error::NoSolution(format!("closest branch misses by {err:.3e}"))),
            None => Err(Error::NoSolution("no branch admits these moduli".into())),
        }
    }
}

/// Diagonal `(d0, d1, d2)` on the circle of solutions to the first condition.
pub fn wh_diagonal(diag_angle: f64) -> [f64; 3] {
    std::array::from_fn(|k| 1.0 / 3.0 + 2.0 / 3.0 * (diag_angle - 2.0 * PI * k as f64 / 3.0).cos())
}

/// Builds a fiducial satisfying all three conditions exactly (up to
/// rounding).
///
/// `offdiag = [polar, azimuth, twist]`. The phase condition with `arg v = 0`
/// says the three complex numbers `xy`, `y* v`, `v* x*` close a triangle
/// whose edge directions sum to zero mod `2 pi`. The triangle shape follows
/// from the law of cosines; its overall rotation is fixed up to a cube root
/// of unity, and there are two mirror images, giving six branches.
pub fn sample_wh_fiducial_d3(diag_angle: f64, offdiag: [f64; 3], branch: u8) -> Result<WhFiducialD3> {
    let [polar, azimuth, twist] = offdiag;
    if branch >= BRANCHES {
        return Err(Error::InvalidArgument(format!("branch {branch} >= {BRANCHES}")));
    }
    if !(diag_angle.is_finite() && polar.is_finite() && azimuth.is_finite() && twist.is_finite()) {
        return Err(Error::InvalidArgument("non-finite sampler parameter".into()));
    }
    let [d0, d1, _] = wh_diagonal(diag_angle);
    let my = (polar.sin() * azimuth.cos()).abs();
    let mx = (polar.sin() * azimuth.sin()).abs();
    let mv = polar.cos().abs();

    let r1 = mx * my;
    let r2 = my * mv;
    let r3 = mv * mx;
    let longest = r1.max(r2).max(r3);
    let (phi_x, phi_y) = if longest < 1e-300 {
        (0.0, 0.0)
    } else {
        if 2.0 * longest > (r1 + r2 + r3) * (1.0 + 1e-12) {
            return Err(Error::NoSolution(format!(
                "moduli ({my:.4}, {mx:.4}, {mv:.4}) violate the triangle inequality"
            )));
        }
        let mirror = if branch.is_multiple_of(2) { 1.0 } else { -1.0 };
        let k = f64::from(branch / 2);
        let a2 = mirror * ((r3 * r3 - r1 * r1 - r2 * r2) / (2.0 * r1 * r2)).clamp(-1.0, 1.0).acos();
        let a3 = -mirror * ((r2 * r2 - r1 * r1 - r3 * r3) / (2.0 * r1 * r3)).clamp(-1.0, 1.0).acos();
        let delta = -(a2 + a3) / 3.0 + 2.0 * PI * k / 3.0;
        // edge directions: arg(xy) = delta, arg(y* v) = delta + a2, arg(v* x*) = delta + a3
        (-(delta + a3), -(delta + a2))
    };
    let x = C64::from_polar(mx, phi_x - twist);
    let y = C64::from_polar(my, phi_y + twist);
    let v = C64::from_polar(mv, twist);
    let fid = WhFiducialD3 {
        diag: (d0, d1),
        offdiag: (y, x, v),
    };
    let res = fid.residuals();
    if res.max_residual() > 1e-10 {
        return Err(Error::NoSolution(format!(
            "degenerate triangle (residual {:.3e})",
            res.max_residual()
        )));
    }
    Ok(fid)
}

const QMIN_JSON: &str = include_str!("../data/qmin.json");
const QMAX_JSON: &str = include_str!("../data/qmax.json");

fn embedded_matrix(text: &str) -> HermitianOperator {
    serde_json::from_str::<MatrixLiteral>(text)
        .expect("embedded matrix parses")
        .to_operator()
        .expect("embedded matrix is Hermitian")
}

/// The fiducial whose WH Q-rep has sum negativity `(2cos(pi/9) - 1)/3`.
pub fn qmin_fiducial() -> HermitianOperator {
    embedded_matrix(QMIN_JSON)
}

/// The fiducial whose WH Q-rep has sum negativity `(2/9)(sqrt7 - 1)`.
pub fn qmax_fiducial() -> HermitianOperator {
    embedded_matrix(QMAX_JSON)
}

pub fn qmin_qrep() -> QRep {
    wh_qrep(&qmin_fiducial(), "qmin").expect("embedded qmin is a WH fiducial")
}

pub fn qmax_qrep() -> QRep {
    wh_qrep(&qmax_fiducial(), "qmax").expect("embedded qmax is a WH fiducial")
}
