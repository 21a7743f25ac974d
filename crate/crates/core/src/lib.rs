//! Classical simulation of nearest-neighbour matchgate circuits and
//! compilation in both directions between matchgate circuits and
//! general (space-bounded) quantum circuits.
//!
//! The crate is organised bottom-up:
//!
//! * [`circuit`] and [`format`]: the two circuit flavors and their text encoding.
//! * [`algebra`]: matchgates, Jordan-Wigner operators, the matchgate to
//!   SO(4) correspondence and Givens factorization.
//! * [`mgsim`]: polynomial-time evaluation of `<Z_k>` through the rotation
//!   representation.
//! * [`standardize`]: rewriting to input `0...0` with measurement on line 1.
//! * [`compress`]: matchgate circuit of width `n` to a general circuit of
//!   width `log2(n) + 3`.
//! * [`expand`]: general circuit of width `m` to a matchgate circuit of
//!   width `2^(m+1)`.
//! * [`oracle`]: dense statevector ground truth.

pub mod algebra;
pub mod circuit;
pub mod compress;
mod error;
pub mod expand;
pub mod format;
pub mod mgsim;
pub mod oracle;
pub mod random;
pub mod standardize;

pub use circuit::{Circuit, GeneralCircuit, MatchgateCircuit, MgGate, QcGate, Violation};
pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Entrywise tolerance for unitarity, orthogonality and determinant checks.
pub const TOL: f64 = 1e-9;
