//! Spectra of the truncated position operators `B_n`.
//!
//! `B_n` is an unreduced Jacobi matrix (zero diagonal, off-diagonal
//! `sqrt(1), ..., sqrt(n-1)`), so its spectrum is real and simple. Eigenvalues
//! are located by Sturm-count bisection; eigenvectors come from the
//! three-term recurrence started at `v_0 = 1`.
//!
//! [`hermite_roots_oracle`] computes the same spectrum by an unrelated route
//! (sign changes of Hermite polynomials) and is used to cross-check the solver.

mod closed_form;
mod hermite;
mod jacobi;

#[cfg(test)]
pub(crate) mod dense;

use rayon::prelude::*;
use serde::Serialize;

pub use closed_form::{closed_form_table, ClosedFormEigenvalue, PRINTED_N6};
pub use hermite::{hermite_roots_oracle, hermite_roots_with_cells, hermite_scaled};
pub use jacobi::JacobiMatrix;

use crate::error::{Error, Result};
use crate::operators::{build_momentum_like, build_position, Dim};

pub const DEFAULT_ABS_TOL: f64 = 1e-12;

/// Per-eigenvalue bisection cap.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Eigenvectors are only produced up to this dimension; the forward
/// recurrence loses accuracy for interior eigenvalues beyond it.
pub const MAX_EIGENVECTOR_DIM: usize = 512;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    pub total_steps: usize,
    pub max_steps: usize,
}

/// Eigenvalues in descending order, optionally with unit eigenvectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` pairs with `eigenvalues[k]`.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub stats: SolverStats,
    /// Without vectors: half the widest final bisection bracket.
    /// With vectors: the largest `|Jv - lambda v|_inf` over all pairs.
    pub residual_bound: f64,
}

/// The Bose position operator `B_n` in tridiagonal form.
pub fn bose_jacobi(dim: Dim) -> JacobiMatrix {
    let offdiag = (1..dim.get()).map(|k| (k as f64).sqrt()).collect();
    JacobiMatrix::new(vec![0.0; dim.get()], offdiag).expect("Bose off-diagonals are positive")
}

fn check_tol(abs_tol: f64) -> Result<()> {
    if !(abs_tol > 0.0 && abs_tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "abs_tol must be positive and finite, got {abs_tol}"
        )));
    }
    Ok(())
}

/// Bisection for the `k`-th smallest eigenvalue (0-based).
/// Returns the bracket midpoint, half-width and step count.
fn bisect_index(j: &JacobiMatrix, k: usize, abs_tol: f64) -> Result<(f64, f64, usize)> {
    let (mut lo, mut hi) = j.search_interval();
    let mut steps = 0;
    while hi - lo > abs_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket is down to adjacent floats
            break;
        }
        if steps == MAX_BISECTION_STEPS {
            return Err(Error::NonConvergence {
                index: k,
                iterations: steps,
            });
        }
        if j.count_below(mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    Ok((0.5 * (lo + hi), 0.5 * (hi - lo), steps))
}

fn collect_descending(j: &JacobiMatrix, indices: Vec<usize>, abs_tol: f64) -> Result<SpectrumResult> {
    let solved = indices
        .into_par_iter()
        .map(|k| bisect_index(j, k, abs_tol))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = SolverStats::default();
    let mut residual_bound: f64 = 0.0;
    let mut eigenvalues = Vec::with_capacity(solved.len());
    for (value, half_width, steps) in solved {
        stats.total_steps += steps;
        stats.max_steps = stats.max_steps.max(steps);
        residual_bound = residual_bound.max(half_width);
        eigenvalues.push(value);
    }
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors: None,
        stats,
        residual_bound,
    })
}

/// All eigenvalues by Sturm bisection, descending.
pub fn eigenvalues_bisect(j: &JacobiMatrix, abs_tol: f64) -> Result<SpectrumResult> {
    check_tol(abs_tol)?;
    collect_descending(j, (0..j.dim()).rev().collect(), abs_tol)
}

/// The `count` largest eigenvalues, descending. Cost is independent of the
/// rest of the spectrum.
pub fn top_eigenvalues(j: &JacobiMatrix, count: usize, abs_tol: f64) -> Result<SpectrumResult> {
    check_tol(abs_tol)?;
    let n = j.dim();
    if count == 0 || count > n {
        return Err(Error::InvalidParameter(format!(
            "cannot take the top {count} of {n} eigenvalues"
        )));
    }
    collect_descending(j, (n - count..n).rev().collect(), abs_tol)
}

/// An eigenvector from the three-term recurrence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceVector {
    /// First component is 1.
    pub unnormalized: Vec<f64>,
    pub unit: Vec<f64>,
}

/// Eigenvector for `lambda` by forward recurrence:
/// `v_0 = 1`, `v_{k+1} = ((lambda - d_k) v_k - e_{k-1} v_{k-1}) / e_k`.
pub fn eigenvector_recurrence(j: &JacobiMatrix, lambda: f64) -> Result<RecurrenceVector> {
    let (d, e) = (j.diag(), j.offdiag());
    let n = d.len();
    if let Some(index) = e.iter().position(|&x| x == 0.0) {
        return Err(Error::ZeroOffDiagonal { index });
    }
    let mut v = Vec::with_capacity(n);
    v.push(1.0);
    for k in 0..n - 1 {
        let prev = if k == 0 { 0.0 } else { e[k - 1] * v[k - 1] };
        let next = ((lambda - d[k]) * v[k] - prev) / e[k];
        if !next.is_finite() {
            return Err(Error::RecurrenceOverflow { index: k + 1 });
        }
        v.push(next);
    }
    let big = v.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    let norm = big * v.iter().map(|x| (x / big).powi(2)).sum::<f64>().sqrt();
    if !norm.is_finite() {
        return Err(Error::RecurrenceOverflow { index: n - 1 });
    }
    let unit = v.iter().map(|x| x / norm).collect();
    Ok(RecurrenceVector {
        unnormalized: v,
        unit,
    })
}

/// Eigenvalues and unit eigenvectors, for `n <= MAX_EIGENVECTOR_DIM`.
pub fn eigen_decomposition(j: &JacobiMatrix, abs_tol: f64) -> Result<SpectrumResult> {
    if j.dim() > MAX_EIGENVECTOR_DIM {
        return Err(Error::InvalidParameter(format!(
            "eigenvectors are limited to n <= {MAX_EIGENVECTOR_DIM}, got {}",
            j.dim()
        )));
    }
    let mut result = eigenvalues_bisect(j, abs_tol)?;
    let vectors = result
        .eigenvalues
        .iter()
        .map(|&l| eigenvector_recurrence(j, l).map(|v| v.unit))
        .collect::<Result<Vec<_>>>()?;
    result.residual_bound = result
        .eigenvalues
        .iter()
        .zip(&vectors)
        .map(|(&l, v)| j.residual_inf(l, v))
        .fold(0.0, f64::max);
    result.eigenvectors = Some(vectors);
    Ok(result)
}

/// Magnitudes of the purely imaginary eigenvalues of `C_n`, in the order of
/// the descending eigenvalues of `B_n` they come from.
///
/// With `D = diag(i^k)`, `D B_n D^{-1} = i C_n`, so `spec(C_n) = -i spec(B_n)`.
pub fn momentum_spectrum(dim: Dim, abs_tol: f64) -> Result<Vec<f64>> {
    let spectrum = eigenvalues_bisect(&bose_jacobi(dim), abs_tol)?;
    Ok(spectrum.eigenvalues.into_iter().map(f64::abs).collect())
}

/// Max-abs entry of `C_n^T C_n - S B_n^2 S` with `S = diag(1, 1, -1, -1, 1, 1, ...)`.
///
/// This is the real form of `-C_n^2 = D B_n^2 D^{-1}`; it vanishes up to
/// rounding and certifies that `C_n` and `B_n` share singular values.
pub fn momentum_similarity_residual(dim: Dim) -> f64 {
    let n = dim.get();
    let b = build_position(dim).into_entries();
    let c = build_momentum_like(dim).into_entries();
    let ctc = c.transpose().matmul(&c).expect("same dim");
    let b2 = b.matmul(&b).expect("same dim");
    let sign = |k: usize| if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for s in 0..n {
            let conj = sign(r) * b2[(r, s)] * sign(s);
            worst = worst.max((ctc[(r, s)] - conj).abs());
        }
    }
    worst
}
