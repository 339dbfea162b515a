//! Number, coherent and squeezed-vacuum states on the truncated space, and
//! their expectation values.
//!
//! Coherent states are the truncated series `beta^k / sqrt(k!)` renormalized
//! to unit norm. The squeezed vacuum is `exp(G) e_0` with the truncated
//! generator `G = -(zeta/2) (b^T)^2 + (conj(zeta)/2) b^2`; `G` is exactly
//! anti-Hermitian on `C^n`, so truncation shows up as weight piling into the
//! top levels rather than as a norm defect.
//!
//! Sign convention for `C = b^T - b`: `<beta|C|beta> = conj(beta) - beta =
//! -2i Im(beta)`, a purely imaginary number whose magnitude is `2|Im beta|`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expm::{expm_action, SparseComplex};
use crate::operators::{build_lowering, build_raising, Dim, Role, TruncatedOperator};

/// Squeezing magnitudes above this are rejected.
pub const MAX_SQUEEZE: f64 = 2.0;
/// Allowed deviation of `|exp(G) e_0|` from 1 before renormalization.
pub const NORM_DEVIATION_LIMIT: f64 = 1e-6;
/// Allowed probability in the top tenth (at least two) of the levels of a squeezed vacuum.
pub const TAIL_WEIGHT_LIMIT: f64 = 1e-6;
/// Tolerance on the part of an expectation value that must vanish
/// (imaginary for Hermitian operators, real for `C`), relative to `max(1, |A|_inf)`.
pub const PHASE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexParam {
    pub re: f64,
    pub im: f64,
}

impl ComplexParam {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "complex parameter must be finite, got ({re}, {im})"
            )));
        }
        Ok(Self { re, im })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(self) -> f64 {
        self.to_complex().norm()
    }
}

impl From<ComplexParam> for Complex64 {
    fn from(p: ComplexParam) -> Self {
        p.to_complex()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StateLabel {
    Number(usize),
    Coherent(ComplexParam),
    SqueezedVacuum(ComplexParam),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dim: Dim,
    amplitudes: Vec<Complex64>,
    label: StateLabel,
}

impl StateVector {
    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn label(&self) -> StateLabel {
        self.label
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalized(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let s = 1.0 / norm(&v);
    for z in &mut v {
        *z *= s;
    }
    v
}

/// `e_k`.
pub fn number_state(dim: Dim, k: usize) -> Result<StateVector> {
    let n = dim.get();
    if k >= n {
        return Err(Error::StateIndex { k, n });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
    amplitudes[k] = Complex64::new(1.0, 0.0);
    Ok(StateVector {
        dim,
        amplitudes,
        label: StateLabel::Number(k),
    })
}

/// Truncated, renormalized coherent state.
pub fn coherent_state(dim: Dim, beta: ComplexParam) -> StateVector {
    let b = beta.to_complex();
    let mut amplitudes = Vec::with_capacity(dim.get());
    let mut a = Complex64::new(1.0, 0.0);
    amplitudes.push(a);
    for k in 1..dim.get() {
        a = a * b / (k as f64).sqrt();
        amplitudes.push(a);
    }
    StateVector {
        dim,
        amplitudes: normalized(amplitudes),
        label: StateLabel::Coherent(beta),
    }
}

/// Squeezed vacuum `exp(-(zeta/2)(b^T)^2 + (conj(zeta)/2) b^2) e_0`.
///
/// Fails with [`Error::TruncationInsufficient`] when the state leaks into the
/// top tenth of the levels or the exponential loses unitarity.
pub fn squeezed_vacuum(dim: Dim, zeta: ComplexParam) -> Result<StateVector> {
    if zeta.abs() > MAX_SQUEEZE {
        return Err(Error::InvalidParameter(format!(
            "squeezing |zeta| = {} exceeds the supported {MAX_SQUEEZE}",
            zeta.abs()
        )));
    }
    let n = dim.get();
    let z = zeta.to_complex();
    let lower = build_lowering(dim).into_entries();
    let raise = build_raising(dim).into_entries();
    let mut gen = SparseComplex::new(n);
    gen.add_scaled(-z * 0.5, &raise.matmul(&raise)?)?;
    gen.add_scaled(z.conj() * 0.5, &lower.matmul(&lower)?)?;

    let mut vacuum = vec![Complex64::new(0.0, 0.0); n];
    vacuum[0] = Complex64::new(1.0, 0.0);
    let out = expm_action(&gen, &vacuum)?;

    let deviation = (norm(&out) - 1.0).abs();
    if deviation > NORM_DEVIATION_LIMIT {
        return Err(Error::TruncationInsufficient {
            n,
            detail: format!("norm deviates from 1 by {deviation:.3e}"),
        });
    }
    // at least two levels, since only even levels are populated
    let tail_start = n - (n / 10).max(2);
    let tail: f64 = out[tail_start..].iter().map(|a| a.norm_sqr()).sum();
    if tail > TAIL_WEIGHT_LIMIT {
        return Err(Error::TruncationInsufficient {
            n,
            detail: format!("weight {tail:.3e} in levels {tail_start}..{n}"),
        });
    }
    Ok(StateVector {
        dim,
        amplitudes: normalized(out),
        label: StateLabel::SqueezedVacuum(zeta),
    })
}

/// `<psi|A|psi>`. For Hermitian roles the imaginary part is checked to vanish
/// and returned as exactly zero; for `C` the real part is treated the same way.
pub fn expectation(state: &StateVector, op: &TruncatedOperator) -> Result<Complex64> {
    if state.dim != op.dim() {
        return Err(Error::DimensionMismatch {
            left: state.dim.get(),
            right: op.dim().get(),
        });
    }
    let psi = &state.amplitudes;
    let a = op.entries();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, row) in a.rows().enumerate() {
        let mut row_sum = Complex64::new(0.0, 0.0);
        for (j, &x) in row.iter().enumerate() {
            if x != 0.0 {
                row_sum += psi[j] * x;
            }
        }
        acc += psi[i].conj() * row_sum;
    }
    let tol = PHASE_TOLERANCE * a.norm_inf().max(1.0);
    match op.role() {
        r if r.is_hermitian() => {
            if acc.im.abs() > tol {
                return Err(Error::InvalidParameter(format!(
                    "expectation of Hermitian {} has imaginary part {:e}",
                    op.label(),
                    acc.im
                )));
            }
            Ok(Complex64::new(acc.re, 0.0))
        }
        Role::MomentumLike => {
            if acc.re.abs() > tol {
                return Err(Error::InvalidParameter(format!(
                    "expectation of anti-Hermitian {} has real part {:e}",
                    op.label(),
                    acc.re
                )));
            }
            Ok(Complex64::new(0.0, acc.im))
        }
        _ => Ok(acc),
    }
}

/// Untruncated expectation values for the three state families.
pub fn analytic_expectation(label: StateLabel, role: Role) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match (label, role) {
        (_, Role::Identity) => one,
        (StateLabel::Number(k), Role::Number) => Complex64::new(k as f64, 0.0),
        (StateLabel::Number(_), _) => zero,
        (StateLabel::Coherent(p), role) => {
            let b = p.to_complex();
            match role {
                Role::Number => Complex64::new(b.norm_sqr(), 0.0),
                Role::Position => Complex64::new(2.0 * b.re, 0.0),
                Role::MomentumLike => b.conj() - b,
                Role::Lowering => b,
                Role::Raising => b.conj(),
                Role::Identity => one,
            }
        }
        (StateLabel::SqueezedVacuum(p), Role::Number) => {
            Complex64::new(p.abs().sinh().powi(2), 0.0)
        }
        (StateLabel::SqueezedVacuum(_), _) => zero,
    }
}
