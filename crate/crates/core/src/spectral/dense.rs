//! Cyclic Jacobi rotations for dense real symmetric matrices. Test-only
//! brute force, deliberately unrelated to the Sturm solver.

use crate::matrix::Matrix;

/// Eigenvalues of a symmetric matrix, descending.
pub fn symmetric_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.dim();
    let mut a: Vec<Vec<f64>> = m.rows().map(<[f64]>::to_vec).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off.sqrt() < 1e-15 * (1.0 + m.max_abs()) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Singular values of a square matrix, descending, from the symmetric
/// embedding `[[0, A], [A^T, 0]]` whose spectrum is `+-sigma`.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    let n = a.dim();
    let mut emb = Matrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            emb[(i, n + j)] = a[(i, j)];
            emb[(n + j, i)] = a[(i, j)];
        }
    }
    let mut ev = symmetric_eigenvalues(&emb);
    ev.truncate(n);
    ev.into_iter().map(f64::abs).collect()
}

#[test]
fn two_by_two() {
    let ev = symmetric_eigenvalues(&Matrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]));
    assert!((ev[0] - 3.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    let sv = singular_values(&Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]));
    assert!((sv[0] - 1.0).abs() < 1e-14 && (sv[1] - 1.0).abs() < 1e-14);
}
