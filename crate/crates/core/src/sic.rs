//! SICs from embedded fiducial vectors and the two SIC Q-reps built from
//! them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::VectorLiteral;
use crate::operators::{trace_inner_product, HermitianOperator, PureState};
use crate::qrep::{Povm, QRep};
use crate::wh;

/// Gram tolerance for SIC validation.
pub const SIC_GRAM_TOL: f64 = 1e-8;

pub const SIC_LABELS: [&str; 5] = ["d2", "d3-hesse", "d4", "d5", "d8-hoggar"];

/// `d^2` rank-one projectors with `Tr(P_i P_j) = (d delta_ij + 1)/(d + 1)`.
#[derive(Clone, Debug)]
pub struct SicSystem {
    dim: usize,
    projectors: Vec<HermitianOperator>,
    fiducial: PureState,
    fiducial_label: String,
}

impl SicSystem {
    /// Orbit of `|fiducial><fiducial|` under the WH group, or under the
    /// three-qubit tensor WH group when `tensor_qubits` is set.
    pub fn from_fiducial(fiducial: PureState, label: impl Into<String>, tensor_qubits: bool) -> Result<Self> {
        let dim = fiducial.dim();
        let label = label.into();
        let seed = HermitianOperator::projector(&fiducial);
        let projectors = if tensor_qubits {
            if !dim.is_power_of_two() || dim < 2 {
                return Err(Error::InvalidArgument(format!("tensor orbit needs d = 2^k, got {dim}")));
            }
            wh::tensor_wh_orbit(&seed, dim.trailing_zeros() as usize)?
        } else {
            wh::wh_orbit(&seed, dim)?
        };
        let deviation = sic_gram_deviation(&projectors)?;
        if deviation > SIC_GRAM_TOL {
            return Err(Error::InvalidSic { label, deviation });
        }
        Ok(Self {
            dim,
            projectors,
            fiducial,
            fiducial_label: label,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projectors(&self) -> &[HermitianOperator] {
        &self.projectors
    }

    pub fn fiducial(&self) -> &PureState {
        &self.fiducial
    }

    pub fn fiducial_label(&self) -> &str {
        &self.fiducial_label
    }

    /// `G[i][j] = Tr(P_i P_j)`
    pub fn gram(&self) -> Vec<Vec<f64>> {
        self.projectors
            .iter()
            .map(|a| {
                self.projectors
                    .iter()
                    .map(|b| trace_inner_product(a, b).expect("same dimension"))
                    .collect()
            })
            .collect()
    }

    /// The SIC measurement `E_j = P_j / d`.
    pub fn povm(&self) -> Povm {
        let d = self.dim as f64;
        Povm::new(self.projectors.iter().map(|p| p.scale(1.0 / d)).collect())
            .expect("a SIC is a POVM")
    }
}

/// Largest deviation of `Tr(P_i P_j)` from `(d delta_ij + 1)/(d + 1)`, also
/// counting `|Tr P_i - 1|`.
pub fn sic_gram_deviation(projectors: &[HermitianOperator]) -> Result<f64> {
    let d = projectors
        .first()
        .ok_or_else(|| Error::InvalidArgument("no projectors".into()))?
        .dim();
    if projectors.len() != d * d {
        return Err(Error::WrongCount {
            expected: d * d,
            found: projectors.len(),
        });
    }
    let df = d as f64;
    let mut worst: f64 = 0.0;
    for (i, a) in projectors.iter().enumerate() {
        worst = worst.max((a.trace() - 1.0).abs());
        for (j, b) in projectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 1.0 / (df + 1.0) };
            worst = worst.max((trace_inner_product(a, b)? - target).abs());
        }
    }
    Ok(worst)
}

fn embedded_fiducial(label: &str) -> Option<&'static str> {
    Some(match label {
        "d2" => include_str!("../data/sic_d2.json"),
        "d3-hesse" => include_str!("../data/sic_d3-hesse.json"),
        "d4" => include_str!("../data/sic_d4.json"),
        "d5" => include_str!("../data/sic_d5.json"),
        "d8-hoggar" => include_str!("../data/sic_d8-hoggar.json"),
        _ => return None,
    })
}

/// Builds one of the shipped SICs: `d2`, `d3-hesse`, `d4`, `d5`, `d8-hoggar`.
pub fn load_sic(label: &str) -> Result<SicSystem> {
    let text = embedded_fiducial(label).ok_or_else(|| Error::UnknownBuiltin(label.to_string()))?;
    let lit: VectorLiteral = serde_json::from_str(text)?;
    let psi = lit.to_state()?;
    SicSystem::from_fiducial(psi, label, label == "d8-hoggar")
}

/// `Q_j^(+-) = -+ sqrt(d+1) P_j + (1 +- sqrt(d+1))/d I`, returned as
/// `(Q+, Q-)`.
pub fn sic_qreps(s: &SicSystem) -> Result<(QRep, QRep)> {
    let d = s.dim() as f64;
    let r = (d + 1.0).sqrt();
    let id = HermitianOperator::identity(s.dim());
    let build = |sign: f64| -> Vec<HermitianOperator> {
        s.projectors()
            .iter()
            .map(|p| &p.scale(-sign * r) + &id.scale((1.0 + sign * r) / d))
            .collect()
    };
    let label = s.fiducial_label();
    Ok((
        QRep::new(build(1.0), format!("{label}-qplus"))?,
        QRep::new(build(-1.0), format!("{label}-qminus"))?,
    ))
}

/// Ceiling negativities of the SIC Q-reps, which bound every Q-rep's.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CeilingBounds {
    pub dim: usize,
    pub n_plus: f64,
    pub n_minus: f64,
}

pub fn ceiling_bounds(d: usize) -> Result<CeilingBounds> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d = {d} < 2")));
    }
    let df = d as f64;
    let r = (df + 1.0).sqrt();
    Ok(CeilingBounds {
        dim: d,
        n_plus: ((df - 1.0) * r - 1.0) / (df * df),
        n_minus: (r - 1.0) / (df * df),
    })
}
