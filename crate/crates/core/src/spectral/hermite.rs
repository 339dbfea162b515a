//! Independent route to `spec(B_n)`: the characteristic polynomials of the
//! Bose Jacobi family obey the physicists' Hermite recurrence, so
//! `spec(B_n) = sqrt(2) * zeros(H_n)`. Nothing here uses Sturm counts.

use crate::error::{Error, Result};

const RESCALE_ABOVE: f64 = 1e150;
const GRID_POINTS_PER_ROOT: usize = 8;
const GRID_RETRIES: usize = 4;

/// `H_n(x)` up to a positive factor (the recurrence is rescaled whenever it
/// grows past `1e150`). The sign is exact up to rounding.
pub fn hermite_scaled(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            prev /= RESCALE_ABOVE;
            cur /= RESCALE_ABOVE;
        }
    }
    cur
}

/// `sqrt(2)` times the zeros of `H_n`, descending, bisected to `abs_tol`.
///
/// Doubles the grid density on isolation failure, up to four times.
pub fn hermite_roots_oracle(n: usize, abs_tol: f64) -> Result<Vec<f64>> {
    let mut density = GRID_POINTS_PER_ROOT;
    let mut last_err = None;
    for _ in 0..=GRID_RETRIES {
        match hermite_roots_with_cells(n, abs_tol, density * n.max(1)) {
            Ok(r) => return Ok(r),
            Err(e @ Error::OracleGrid { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        density *= 2;
    }
    Err(last_err.expect("at least one attempt"))
}

/// One attempt with a uniform grid of `cells` cells over `[0, sqrt(2n+1)]`.
pub fn hermite_roots_with_cells(n: usize, abs_tol: f64, cells: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("Hermite degree must be positive".into()));
    }
    if !(abs_tol > 0.0) || cells == 0 {
        return Err(Error::InvalidParameter(format!(
            "need abs_tol > 0 and cells > 0, got {abs_tol} and {cells}"
        )));
    }
    let expected = n / 2;
    let x_max = (2.0 * n as f64 + 1.0).sqrt();
    let h = x_max / cells as f64;
    // odd H_n vanishes at the origin; start half a cell to the right of it
    let x0 = if n % 2 == 1 { 0.5 * h } else { 0.0 };
    let x_tol = abs_tol / std::f64::consts::SQRT_2;

    let mut positive = Vec::with_capacity(expected);
    let mut a = x0;
    let mut fa = hermite_scaled(n, a);
    for i in 1..=cells {
        let b = (x0 + i as f64 * h).min(x_max);
        let fb = hermite_scaled(n, b);
        if fb == 0.0 {
            positive.push(b);
        } else if fa != 0.0 && (fa < 0.0) != (fb < 0.0) {
            positive.push(refine(n, a, b, fa, x_tol));
        }
        a = b;
        fa = fb;
    }
    if positive.len() != expected {
        return Err(Error::OracleGrid {
            found: positive.len(),
            expected,
        });
    }

    let scale = std::f64::consts::SQRT_2;
    let mut roots: Vec<f64> = positive.iter().rev().map(|x| scale * x).collect();
    if n % 2 == 1 {
        roots.push(0.0);
    }
    roots.extend(positive.iter().map(|x| -scale * x));
    Ok(roots)
}

fn refine(n: usize, mut a: f64, mut b: f64, fa: f64, x_tol: f64) -> f64 {
    let a_negative = fa < 0.0;
    while b - a > x_tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = hermite_scaled(n, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == a_negative {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
