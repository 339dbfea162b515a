//! Truncated ladder operators on `C^n` in the number basis `|0>, ..., |n-1>`.
//!
//! All operators are real dense `n x n` matrices:
//!
//! | role           | matrix                         |
//! |----------------|--------------------------------|
//! | `Lowering`     | `b`,   `b[k-1][k] = sqrt(k)`   |
//! | `Raising`      | `b^T`, `b[k][k-1] = sqrt(k)`   |
//! | `Number`       | `diag(0, 1, ..., n-1)`         |
//! | `Position`     | `b^T + b`                      |
//! | `MomentumLike` | `b^T - b`                      |
//! | `Identity`     | `I_n`                          |
//!
//! Truncation preserves `[N, B] = C` and `[N, C] = B` but not `[B, C] = 2I`:
//! the last diagonal entry picks up the defect `2(1 - n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};

/// Truncation dimension, always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dim(usize);

impl Dim {
    pub const MIN: usize = 2;

    pub fn new(n: usize) -> Result<Self> {
        if n < Self::MIN {
            return Err(Error::Dimension(n));
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for Dim {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl From<Dim> for usize {
    fn from(d: Dim) -> usize {
        d.0
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Lowering,
    Raising,
    Number,
    Position,
    MomentumLike,
    Identity,
}

impl Role {
    /// Short symbol used in labels and CLI output.
    pub fn symbol(self) -> &'static str {
        match self {
            Role::Lowering => "b",
            Role::Raising => "bdag",
            Role::Number => "N",
            Role::Position => "B",
            Role::MomentumLike => "C",
            Role::Identity => "I",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "b" => Role::Lowering,
            "bdag" => Role::Raising,
            "N" => Role::Number,
            "B" => Role::Position,
            "C" => Role::MomentumLike,
            "I" => Role::Identity,
            _ => return None,
        })
    }

    pub fn is_hermitian(self) -> bool {
        matches!(self, Role::Number | Role::Position | Role::Identity)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A truncated operator: its role and its `n x n` matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedOperator {
    dim: Dim,
    role: Role,
    entries: Matrix,
}

impl TruncatedOperator {
    /// Builds the operator with the given role.
    pub fn build(role: Role, dim: Dim) -> Self {
        let n = dim.get();
        let mut m = Matrix::zeros(n);
        match role {
            Role::Lowering => {
                for k in 1..n {
                    m[(k - 1, k)] = (k as f64).sqrt();
                }
            }
            Role::Raising => {
                for k in 1..n {
                    m[(k, k - 1)] = (k as f64).sqrt();
                }
            }
            Role::Number => {
                for k in 0..n {
                    m[(k, k)] = k as f64;
                }
            }
            Role::Position => {
                for k in 1..n {
                    let s = (k as f64).sqrt();
                    m[(k - 1, k)] = s;
                    m[(k, k - 1)] = s;
                }
            }
            Role::MomentumLike => {
                for k in 1..n {
                    let s = (k as f64).sqrt();
                    m[(k - 1, k)] = -s;
                    m[(k, k - 1)] = s;
                }
            }
            Role::Identity => m = Matrix::identity(n),
        }
        Self {
            dim,
            role,
            entries: m,
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_entries(self) -> Matrix {
        self.entries
    }

    /// Label such as `B4`.
    pub fn label(&self) -> String {
        format!("{}{}", self.role.symbol(), self.dim)
    }
}

pub fn build_lowering(dim: Dim) -> TruncatedOperator {
    TruncatedOperator::build(Role::Lowering, dim)
}

pub fn build_raising(dim: Dim) -> TruncatedOperator {
    TruncatedOperator::build(Role::Raising, dim)
}

pub fn build_number(dim: Dim) -> TruncatedOperator {
    TruncatedOperator::build(Role::Number, dim)
}

pub fn build_position(dim: Dim) -> TruncatedOperator {
    TruncatedOperator::build(Role::Position, dim)
}

pub fn build_momentum_like(dim: Dim) -> TruncatedOperator {
    TruncatedOperator::build(Role::MomentumLike, dim)
}

pub fn build_identity(dim: Dim) -> TruncatedOperator {
    TruncatedOperator::build(Role::Identity, dim)
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<Matrix> {
    matrix::commutator(&a.entries, &b.entries)
}

/// `[B_n, C_n] = 2 I_{n-1} (+) 2(1 - n)`.
pub fn expected_bc_defect(dim: Dim) -> Matrix {
    let n = dim.get();
    let mut diag = vec![2.0; n];
    diag[n - 1] = 2.0 * (1.0 - n as f64);
    Matrix::from_diagonal(&diag)
}

/// `[b_n, b_n^T] = diag(1, ..., 1, 1 - n)`.
pub fn expected_ladder_defect(dim: Dim) -> Matrix {
    let n = dim.get();
    let mut diag = vec![1.0; n];
    diag[n - 1] = 1.0 - n as f64;
    Matrix::from_diagonal(&diag)
}

/// Outcome of comparing a computed commutator against an expected matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketReport {
    pub lhs_label: String,
    pub rhs_label: String,
    /// Max-abs entry of `actual - expected`.
    pub residual: f64,
    pub tolerance: f64,
    #[serde(skip)]
    pub expected: Matrix,
    #[serde(skip)]
    pub actual: Matrix,
    pub pass: bool,
}

pub fn check_bracket(
    a: &TruncatedOperator,
    b: &TruncatedOperator,
    expected: &Matrix,
    tol: f64,
) -> Result<BracketReport> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be nonnegative, got {tol}"
        )));
    }
    let actual = commutator(a, b)?;
    let residual = actual.max_abs_diff(expected)?;
    Ok(BracketReport {
        lhs_label: a.label(),
        rhs_label: b.label(),
        residual,
        tolerance: tol,
        expected: expected.clone(),
        actual,
        pass: residual <= tol,
    })
}

/// Default sweep tolerance for the truncated brackets at dimension `n`.
pub fn sweep_tolerance(dim: Dim) -> f64 {
    1e-13 * (dim.get() as f64).sqrt()
}

/// The three truncation brackets `[N,B] = C`, `[N,C] = B`, `[B,C] = 2I (+) 2(1-n)`.
pub fn truncation_brackets(dim: Dim, tol: f64) -> Result<[BracketReport; 3]> {
    let n_op = build_number(dim);
    let b_op = build_position(dim);
    let c_op = build_momentum_like(dim);
    Ok([
        check_bracket(&n_op, &b_op, c_op.entries(), tol)?,
        check_bracket(&n_op, &c_op, b_op.entries(), tol)?,
        check_bracket(&b_op, &c_op, &expected_bc_defect(dim), tol)?,
    ])
}
