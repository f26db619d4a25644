//! Exact split Casimir operators of so(2r) on spinor representations.
//!
//! Everything is computed over the Gaussian rationals Q(i); there is no
//! floating point anywhere in the crate.

pub mod casimir;
pub mod check;
pub mod clifford;
pub mod colour;
pub mod error;
pub mod linalg;
pub mod oracles;
pub mod report;
pub mod scalar;
pub mod spectra;
pub mod ybe;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, TensorShape};
pub use scalar::{ExactScalar, Rational};
