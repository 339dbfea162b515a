//! Small matrix representations of the oscillator-type Lie algebras and
//! checks that they reproduce their declared commutator tables.
//!
//! Three bases are provided:
//! - the strictly upper-triangular 3x3 realization of `{b^T b, I, b^T, b}`,
//! - the 4x4 adjoint representation of `{N, B, C, I}`,
//! - the 2x2 Fermi realization of `{c^T c, c^T + c, c^T - c, I}`.
//!
//! The algebra spanned by `{N, B, C, I}` has a nontrivial center (`I`), so it
//! is not semi-simple; no Killing-form machinery is provided here.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{commutator, Matrix};

/// Oscillator structure constants in the basis `(N, B, C, I)`:
/// `[N,B] = C`, `[N,C] = B`, `[B,C] = 2I`, `I` central.
///
/// Each entry is `(i, j, coefficients of [x_i, x_j])`. Pairs not listed bracket to zero.
pub const OSCILLATOR_STRUCTURE: &[(usize, usize, [f64; 4])] = &[
    (0, 1, [0.0, 0.0, 1.0, 0.0]),
    (0, 2, [0.0, 1.0, 0.0, 0.0]),
    (1, 2, [0.0, 0.0, 0.0, 2.0]),
];

pub const OSCILLATOR_LABELS: [&str; 4] = ["N", "B", "C", "I"];

/// Declared value of a bracket.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum StructureEntry {
    /// Coefficients of the bracket in the basis.
    Span(Vec<f64>),
    /// The bracket is known to leave the span; flagged by verification.
    OutsideSpan,
}

/// A list of generators, their matrices, and their declared brackets.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBasis {
    pub name: String,
    pub labels: Vec<String>,
    pub matrices: Vec<Matrix>,
    /// Keyed by ordered index pair `(i, j)` with `i != j`.
    pub structure: BTreeMap<(usize, usize), StructureEntry>,
}

impl LieBasis {
    pub fn new(
        name: impl Into<String>,
        labels: &[&str],
        matrices: Vec<Matrix>,
        structure: BTreeMap<(usize, usize), StructureEntry>,
    ) -> Result<Self> {
        let basis = Self {
            name: name.into(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            matrices,
            structure,
        };
        basis.validate()?;
        Ok(basis)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.labels.len();
        if self.matrices.len() != k {
            return Err(Error::InvalidParameter(format!(
                "{} labels but {} matrices",
                k,
                self.matrices.len()
            )));
        }
        if let Some(first) = self.matrices.first() {
            if let Some(bad) = self.matrices.iter().find(|m| m.dim() != first.dim()) {
                return Err(Error::DimensionMismatch {
                    left: first.dim(),
                    right: bad.dim(),
                });
            }
        }
        for (&(i, j), entry) in &self.structure {
            if i >= k || j >= k || i == j {
                return Err(Error::InvalidParameter(format!(
                    "structure entry ({i}, {j}) does not name two distinct generators"
                )));
            }
            if let StructureEntry::Span(c) = entry {
                if c.len() != k {
                    return Err(Error::InvalidParameter(format!(
                        "structure entry ({i}, {j}) has {} coefficients, basis has {k}",
                        c.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Matrix commutator of two generators by label.
    pub fn bracket(&self, a: &str, b: &str) -> Option<Matrix> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        commutator(&self.matrices[i], &self.matrices[j]).ok()
    }

    pub fn matrix(&self, label: &str) -> Option<&Matrix> {
        self.index_of(label).map(|i| &self.matrices[i])
    }

    /// `sum_k coeffs[k] * matrices[k]`.
    pub fn combine(&self, coeffs: &[f64]) -> Matrix {
        let n = self.matrices.first().map_or(0, Matrix::dim);
        coeffs
            .iter()
            .zip(&self.matrices)
            .fold(Matrix::zeros(n), |acc, (&c, m)| {
                if c == 0.0 {
                    acc
                } else {
                    acc.add(&m.scale(c)).expect("validated equal dims")
                }
            })
    }

    /// Declared value of `[x_i, x_j]`, using antisymmetry for reversed pairs.
    /// Undeclared pairs bracket to zero.
    fn declared(&self, i: usize, j: usize) -> StructureEntry {
        let k = self.labels.len();
        match (self.structure.get(&(i, j)), self.structure.get(&(j, i))) {
            (Some(e), _) => e.clone(),
            (None, Some(StructureEntry::Span(c))) => {
                StructureEntry::Span(c.iter().map(|x| -x).collect())
            }
            (None, Some(StructureEntry::OutsideSpan)) => StructureEntry::OutsideSpan,
            (None, None) => StructureEntry::Span(vec![0.0; k]),
        }
    }
}

fn structure_map(entries: &[(usize, usize, Vec<f64>)]) -> BTreeMap<(usize, usize), StructureEntry> {
    entries
        .iter()
        .map(|(i, j, c)| ((*i, *j), StructureEntry::Span(c.clone())))
        .collect()
}

/// Non-Hermitian 3x3 realization: `b^T b -> M22`, `I -> M13`, `b^T -> M23`, `b -> M12`,
/// where `Mij` has a single unit entry at (1-based) row `i`, column `j`.
pub fn heisenberg_3x3() -> LieBasis {
    let unit = |i: usize, j: usize| {
        let mut m = Matrix::zeros(3);
        m[(i - 1, j - 1)] = 1.0;
        m
    };
    LieBasis::new(
        "heisenberg-3x3",
        &["M22", "M13", "M23", "M12"],
        vec![unit(2, 2), unit(1, 3), unit(2, 3), unit(1, 2)],
        structure_map(&[
            (0, 2, vec![0.0, 0.0, 1.0, 0.0]),
            (0, 3, vec![0.0, 0.0, 0.0, -1.0]),
            (2, 3, vec![0.0, -1.0, 0.0, 0.0]),
        ]),
    )
    .expect("static basis is well formed")
}

/// Adjoint representation of `(N, B, C, I)` in that basis order.
pub fn oscillator_adjoint_4x4() -> LieBasis {
    let ad_n = Matrix::from_rows(&[
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ]);
    let ad_b = Matrix::from_rows(&[
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 2.0, 0.0],
    ]);
    let ad_c = Matrix::from_rows(&[
        [0.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, -2.0, 0.0, 0.0],
    ]);
    let structure = OSCILLATOR_STRUCTURE
        .iter()
        .map(|(i, j, c)| (*i, *j, c.to_vec()))
        .collect::<Vec<_>>();
    LieBasis::new(
        "oscillator-adjoint-4x4",
        &OSCILLATOR_LABELS,
        vec![ad_n, ad_b, ad_c, Matrix::zeros(4)],
        structure_map(&structure),
    )
    .expect("static basis is well formed")
}

/// Fermi realization: `c^T c -> diag(1,0)`, `c^T + c -> sigma_1`,
/// `c^T - c -> [[0,1],[-1,0]]`, `I -> I_2`.
pub fn fermi_2x2() -> LieBasis {
    LieBasis::new(
        "fermi-2x2",
        &["NF", "BF", "CF", "I"],
        vec![
            Matrix::from_diagonal(&[1.0, 0.0]),
            Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]),
            Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]),
            Matrix::identity(2),
        ],
        structure_map(&[
            (0, 1, vec![0.0, 0.0, 1.0, 0.0]),
            (0, 2, vec![0.0, 1.0, 0.0, 0.0]),
            (1, 2, vec![-4.0, 0.0, 0.0, 2.0]),
        ]),
    )
    .expect("static basis is well formed")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairFailure {
    pub lhs: String,
    pub rhs: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomomorphismReport {
    pub name: String,
    pub pairs_checked: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub failures: Vec<PairFailure>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, lhs: &str, rhs: &str, residual: f64) {
        self.pairs_checked += 1;
        self.max_residual = self.max_residual.max(residual);
        if !(residual <= self.tolerance) {
            self.failures.push(PairFailure {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                residual,
            });
        }
    }
}

/// Checks every unordered pair of generators against its declared bracket
/// (zero when undeclared). Brackets declared outside the span always fail.
pub fn verify_structure(basis: &LieBasis, tol: f64) -> HomomorphismReport {
    let mut report = HomomorphismReport {
        name: basis.name.clone(),
        pairs_checked: 0,
        max_residual: 0.0,
        tolerance: tol,
        failures: Vec::new(),
    };
    let k = basis.labels.len();
    for i in 0..k {
        for j in i + 1..k {
            let actual = commutator(&basis.matrices[i], &basis.matrices[j])
                .expect("validated equal dims");
            let residual = match basis.declared(i, j) {
                StructureEntry::Span(c) => actual
                    .max_abs_diff(&basis.combine(&c))
                    .expect("validated equal dims"),
                StructureEntry::OutsideSpan => f64::INFINITY,
            };
            report.record(&basis.labels[i], &basis.labels[j], residual);
        }
    }
    report
}

/// Checks `ad([x, y]) = [ad x, ad y]` on all pairs of `(N, B, C, I)`,
/// expanding `[x, y]` with [`OSCILLATOR_STRUCTURE`].
pub fn verify_adjoint_homomorphism(tol: f64) -> HomomorphismReport {
    verify_homomorphism(&oscillator_adjoint_4x4(), tol)
}

/// Same as [`verify_adjoint_homomorphism`] for an arbitrary 4-element image
/// of `(N, B, C, I)`.
pub fn verify_homomorphism(image: &LieBasis, tol: f64) -> HomomorphismReport {
    let mut report = HomomorphismReport {
        name: format!("{}-homomorphism", image.name),
        pairs_checked: 0,
        max_residual: 0.0,
        tolerance: tol,
        failures: Vec::new(),
    };
    let k = OSCILLATOR_LABELS.len();
    for i in 0..k {
        for j in i + 1..k {
            let mut coeffs = [0.0; 4];
            if let Some((_, _, c)) = OSCILLATOR_STRUCTURE
                .iter()
                .find(|(a, b, _)| (*a, *b) == (i, j))
            {
                coeffs = *c;
            }
            let lhs = image.combine(&coeffs);
            let rhs = commutator(&image.matrices[i], &image.matrices[j])
                .expect("validated equal dims");
            let residual = lhs.max_abs_diff(&rhs).expect("validated equal dims");
            report.record(OSCILLATOR_LABELS[i], OSCILLATOR_LABELS[j], residual);
        }
    }
    report
}
