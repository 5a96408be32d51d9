//! Quasiprobability representations (Q-reps) of finite-dimensional quantum
//! theory and their `N^p` negativities.
//!
//! A Q-rep in dimension `d` is a basis of `d^2` Hermitian operators `Q_j` with
//! `Tr Q_j = 1`, `Tr(Q_i Q_j) = d delta_ij` and `sum_j Q_j = d I`. A state
//! `rho` becomes the real vector `p(j) = Tr(rho Q_j)/d`, which sums to one
//! but may have negative entries. This crate measures how negative those
//! vectors can get:
//!
//! * [`negativity::ceiling_negativity`]: largest single negative entry.
//! * [`negativity::sum_negativity_exhaustive`] and
//!   [`negativity::sum_negativity_stochastic`]: largest total negative mass.
//! * [`stationary`]: closed-form upper bounds and local-maximum
//!   certificates.
//!
//! Q-reps come from SICs ([`sic`]), from Weyl-Heisenberg orbits ([`wh`]), or
//! from JSON files ([`io`]).
//!
//! ```
//! use qneg::{builtin::builtin_qrep, negativity::sum_negativity_exhaustive};
//!
//! let q = builtin_qrep("qmax").unwrap();
//! let r = sum_negativity_exhaustive(&q, 1).unwrap();
//! assert!((r.value - 2.0 / 9.0 * (7f64.sqrt() - 1.0)).abs() < 1e-10);
//! ```

pub mod builtin;
pub mod cli;
pub mod error;
pub mod io;
pub mod negativity;
pub mod operators;
pub mod qrep;
pub mod repro;
pub mod sic;
pub mod stationary;
pub mod sweep;
pub mod wh;

pub use error::{Error, Result};
pub use negativity::{NegativityReport, NormOrder};
pub use operators::{DensityMatrix, HermitianOperator, PureState, C64};
pub use qrep::{QRep, QuasiprobVector};
