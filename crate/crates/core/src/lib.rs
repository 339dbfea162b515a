#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Truncated Bose ladder operators on `C^n`: construction, commutator
//! structure, spectra of the truncated position operator, state expectation
//! values, and scaling of the extreme eigenvalues.

pub mod error;
pub mod expm;
pub mod lie;
pub mod matrix;
pub mod operators;
pub mod scaling;
pub mod spectral;
pub mod states;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use num_complex::Complex64;
pub use operators::{Dim, Role, TruncatedOperator};
