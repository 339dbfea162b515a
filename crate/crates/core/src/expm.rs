//! `exp(A) v` for sparse complex `A` by scaled Taylor steps.
//!
//! `A` is split as `exp(A) = exp(A/s)^s` with `s = ceil(|A|_1)`, so every
//! step has `|A/s|_1 <= 1`. Each step sums the Taylor series until a term
//! drops below `2^-53` of the running sum (relative, infinity norm); with
//! `|A/s| <= 1` the neglected tail is bounded by that last term, so the
//! per-step error stays at unit-roundoff level and the total below `s * 1e-16`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const MAX_TERMS: usize = 60;

/// Complex matrix in coordinate form.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseComplex {
    n: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseComplex {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            entries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Adds `coeff * m` (real dense) to `self`, keeping only nonzero entries.
    pub fn add_scaled(&mut self, coeff: Complex64, m: &Matrix) -> Result<()> {
        if m.dim() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: m.dim(),
            });
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let x = m[(i, j)];
                if x != 0.0 {
                    self.entries.push((i, j, coeff * x));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for &(i, j, a) in &self.entries {
            out[i] += a * v[j];
        }
        out
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        let mut cols = vec![0.0; self.n];
        for &(_, j, a) in &self.entries {
            cols[j] += a.norm();
        }
        cols.into_iter().fold(0.0, f64::max)
    }
}

fn norm_inf(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// `exp(A) v`.
pub fn expm_action(a: &SparseComplex, v: &[Complex64]) -> Result<Vec<Complex64>> {
    if v.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: v.len(),
        });
    }
    let steps = a.norm_1().ceil().max(1.0) as usize;
    let inv_steps = 1.0 / steps as f64;
    let mut acc = v.to_vec();
    for _ in 0..steps {
        let mut term = acc.clone();
        let mut converged = false;
        for k in 1..=MAX_TERMS {
            let scale = inv_steps / k as f64;
            term = a.apply(&term).into_iter().map(|z| z * scale).collect();
            for (s, t) in acc.iter_mut().zip(&term) {
                *s += t;
            }
            if norm_inf(&term) <= f64::EPSILON * 0.5 * norm_inf(&acc) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::InvalidParameter(format!(
                "Taylor series for exp(A)v did not converge in {MAX_TERMS} terms"
            )));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_generator() {
        // exp(t [[0,-1],[1,0]]) e0 = (cos t, sin t)
        let t = 2.7;
        let mut a = SparseComplex::new(2);
        a.add_scaled(
            Complex64::new(t, 0.0),
            &Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]),
        )
        .unwrap();
        let v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let out = expm_action(&a, &v).unwrap();
        assert!((out[0] - Complex64::new(t.cos(), 0.0)).norm() < 1e-14);
        assert!((out[1] - Complex64::new(t.sin(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn diagonal_generator() {
        let mut a = SparseComplex::new(3);
        a.add_scaled(Complex64::new(0.5, 1.0), &Matrix::from_diagonal(&[1.0, -2.0, 7.0]))
            .unwrap();
        let v = vec![Complex64::new(1.0, 0.0); 3];
        let out = expm_action(&a, &v).unwrap();
        for (k, d) in [1.0, -2.0, 7.0].iter().enumerate() {
            let exact = (Complex64::new(0.5, 1.0) * d).exp();
            assert!((out[k] - exact).norm() <= 1e-13 * exact.norm().max(1.0));
        }
    }

    #[test]
    fn zero_generator_is_identity() {
        let a = SparseComplex::new(4);
        let v: Vec<_> = (0..4).map(|k| Complex64::new(k as f64, -1.0)).collect();
        assert_eq!(expm_action(&a, &v).unwrap(), v);
        assert!(expm_action(&a, &v[..3]).is_err());
    }
}
