use serde::Serialize;

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix with strictly positive off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl JacobiMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.len() < 2 {
            return Err(Error::Dimension(diag.len()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "{} diagonal entries need {} off-diagonal entries, got {}",
                diag.len(),
                diag.len() - 1,
                offdiag.len()
            )));
        }
        if let Some(index) = offdiag.iter().position(|&e| !(e > 0.0 && e.is_finite())) {
            return Err(Error::ZeroOffDiagonal { index });
        }
        if diag.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidParameter("diagonal must be finite".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    fn row_radius(&self, i: usize) -> f64 {
        let left = if i > 0 { self.offdiag[i - 1] } else { 0.0 };
        let right = self.offdiag.get(i).copied().unwrap_or(0.0);
        left + right
    }

    /// `max_i |d_i| + |e_{i-1}| + |e_i|`; every eigenvalue lies in `[-r, r]`.
    pub fn gershgorin_radius(&self) -> f64 {
        (0..self.dim())
            .map(|i| self.diag[i].abs() + self.row_radius(i))
            .fold(0.0, f64::max)
    }

    /// Infinity norm; equals the Gershgorin radius for a Jacobi matrix.
    pub fn norm_inf(&self) -> f64 {
        self.gershgorin_radius()
    }

    /// Gershgorin interval widened by a relative `1e-12` so that the Sturm
    /// count is exactly 0 and `n` at its ends even when an eigenvalue sits on
    /// the Gershgorin bound (e.g. `B_2`).
    pub fn search_interval(&self) -> (f64, f64) {
        let r = self.gershgorin_radius();
        let pad = r * 1e-12 + f64::MIN_POSITIVE;
        (-r - pad, r + pad)
    }

    /// Number of eigenvalues strictly below `x`: the count of negative pivots
    /// in the LDL^T factorization of `J - xI`. Zero pivots are replaced by
    /// `eps * |J|_inf`.
    pub fn count_below(&self, x: f64) -> usize {
        let guard = f64::EPSILON * self.norm_inf();
        let mut q = self.diag[0] - x;
        let mut count = usize::from(q < 0.0);
        for i in 1..self.dim() {
            if q.abs() < guard {
                q = if q < 0.0 { -guard } else { guard };
            }
            let e = self.offdiag[i - 1];
            q = (self.diag[i] - x) - e * e / q;
            count += usize::from(q < 0.0);
        }
        count
    }

    /// `J v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// `|J v - lambda v|_inf`.
    pub fn residual_inf(&self, lambda: f64, v: &[f64]) -> f64 {
        self.apply(v)
            .iter()
            .zip(v)
            .map(|(jv, x)| (jv - lambda * x).abs())
            .fold(0.0, f64::max)
    }
}
