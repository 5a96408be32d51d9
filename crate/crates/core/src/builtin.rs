//! Named objects that ship with the crate.

use std::path::Path;

use crate::error::{Error, Result};
use crate::io;
use crate::qrep::QRep;
use crate::sic::{load_sic, sic_qreps, SIC_LABELS};
use crate::wh;

/// Every builtin Q-rep label: `<sic>-qplus`, `<sic>-qminus`, `qmin`, `qmax`.
pub fn builtin_qrep_labels() -> Vec<String> {
    SIC_LABELS
        .iter()
        .flat_map(|s| [format!("{s}-qplus"), format!("{s}-qminus")])
        .chain(["qmin".to_string(), "qmax".to_string()])
        .collect()
}

pub fn builtin_qrep(label: &str) -> Result<QRep> {
    match label {
        "qmin" => return Ok(wh::qmin_qrep()),
        "qmax" => return Ok(wh::qmax_qrep()),
        _ => {}
    }
    let (sic, plus) = if let Some(s) = label.strip_suffix("-qplus") {
        (s, true)
    } else if let Some(s) = label.strip_suffix("-qminus") {
        (s, false)
    } else {
        return Err(Error::UnknownBuiltin(label.to_string()));
    };
    if !SIC_LABELS.contains(&sic) {
        return Err(Error::UnknownBuiltin(label.to_string()));
    }
    let (qp, qm) = sic_qreps(&load_sic(sic)?)?;
    Ok(if plus { qp } else { qm })
}

/// A builtin label, or else a path to a Q-rep JSON file.
pub fn resolve_qrep(spec: &str) -> Result<QRep> {
    match builtin_qrep(spec) {
        Err(Error::UnknownBuiltin(_)) if Path::new(spec).exists() => io::load_qrep_file(spec),
        other => other,
    }
}
