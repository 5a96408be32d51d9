//! JSON file formats.
//!
//! Matrices are `{"dim": d, "re": [[...]], "im": [[...]]}` and vectors are
//! `{"dim": d, "re": [...], "im": [...]}`. Entries may be JSON numbers or
//! decimal strings; embedded data uses 40-digit strings.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{HermitianOperator, PureState, C64};
use crate::qrep::QRep;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Decimal {
    Num(f64),
    Str(String),
}

impl Decimal {
    pub fn value(&self) -> Result<f64> {
        match self {
            Decimal::Num(x) => Ok(*x),
            Decimal::Str(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixLiteral {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: usize,
    pub re: Vec<Vec<Decimal>>,
    pub im: Vec<Vec<Decimal>>,
}

impl MatrixLiteral {
    pub fn from_operator(op: &HermitianOperator) -> Self {
        let d = op.dim();
        let row = |f: fn(C64) -> f64, i: usize| (0..d).map(|j| Decimal::Num(f(op.entry(i, j)))).collect();
        Self {
            label: None,
            dim: d,
            re: (0..d).map(|i| row(|z| z.re, i)).collect(),
            im: (0..d).map(|i| row(|z| z.im, i)).collect(),
        }
    }

    pub fn to_operator(&self) -> Result<HermitianOperator> {
        let d = self.dim;
        let shape_ok = self.re.len() == d
            && self.im.len() == d
            && self.re.iter().chain(&self.im).all(|r| r.len() == d);
        if !shape_ok || d == 0 {
            return Err(Error::Parse(format!("matrix literal is not {d}x{d}")));
        }
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = C64::new(self.re[i][j].value()?, self.im[i][j].value()?);
            }
        }
        HermitianOperator::new(m)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorLiteral {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: usize,
    pub re: Vec<Decimal>,
    pub im: Vec<Decimal>,
}

impl VectorLiteral {
    pub fn from_state(psi: &PureState) -> Self {
        Self {
            label: None,
            dim: psi.dim(),
            re: psi.amplitudes().iter().map(|z| Decimal::Num(z.re)).collect(),
            im: psi.amplitudes().iter().map(|z| Decimal::Num(z.im)).collect(),
        }
    }

    pub fn amplitudes(&self) -> Result<Vec<C64>> {
        if self.re.len() != self.dim || self.im.len() != self.dim {
            return Err(Error::Parse(format!("vector literal is not of length {}", self.dim)));
        }
        self.re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| Ok(C64::new(r.value()?, i.value()?)))
            .collect()
    }

    /// Parses and normalizes. Embedded data is normalized to 40 digits, so
    /// this only removes f64 rounding.
    pub fn to_state(&self) -> Result<PureState> {
        PureState::normalized(self.amplitudes()?)
    }
}

impl From<PureState> for VectorLiteral {
    fn from(psi: PureState) -> Self {
        Self::from_state(&psi)
    }
}

impl TryFrom<VectorLiteral> for PureState {
    type Error = Error;
    fn try_from(lit: VectorLiteral) -> Result<Self> {
        lit.to_state()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QRepFile {
    pub label: String,
    pub elements: Vec<MatrixLiteral>,
}

impl QRepFile {
    pub fn from_qrep(q: &QRep) -> Self {
        Self {
            label: q.label().to_string(),
            elements: q.elements().iter().map(MatrixLiteral::from_operator).collect(),
        }
    }

    /// Re-validates the Q-rep conditions on load.
    pub fn to_qrep(&self) -> Result<QRep> {
        let ops = self
            .elements
            .iter()
            .map(MatrixLiteral::to_operator)
            .collect::<Result<Vec<_>>>()?;
        QRep::new(ops, self.label.clone())
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn load_qrep_file(path: impl AsRef<Path>) -> Result<QRep> {
    read_json::<QRepFile>(path)?.to_qrep()
}

pub fn load_matrix_file(path: impl AsRef<Path>) -> Result<HermitianOperator> {
    read_json::<MatrixLiteral>(path)?.to_operator()
}
