use std::fmt::Write as _;

use trunc_bose::Matrix;

/// Maps `-0.0` to `0.0` so it never prints as `-0`.
pub(crate) fn clean(x: f64) -> f64 {
    x + 0.0
}

/// Shortest decimal that parses back to the same `f64` (at most 17
/// significant digits), without locale or exponent padding.
pub fn format_float(x: f64) -> String {
    format!("{}", clean(x))
}

pub(crate) fn csv_matrix(m: &Matrix) -> String {
    let mut s = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub(crate) fn table_matrix(m: &Matrix) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|r| r.iter().map(|&x| format_float(x)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    for row in cells {
        for (j, c) in row.iter().enumerate() {
            if j > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{c:>width$}");
        }
        s.push('\n');
    }
    s
}

/// Parses the CSV produced by `build --format csv`.
pub fn parse_csv_matrix(text: &str) -> Result<Matrix, String> {
    let mut data = Vec::new();
    let mut n = None;
    for (i, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let row = line
            .split(',')
            .map(|c| c.trim().parse::<f64>().map_err(|e| format!("line {}: {e}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        match n {
            None => n = Some(row.len()),
            Some(k) if k != row.len() => return Err(format!("line {} has {} cells, expected {k}", i + 1, row.len())),
            _ => {}
        }
        data.extend(row);
    }
    let n = n.unwrap_or(0);
    Matrix::from_row_major(n, data).map_err(|e| e.to_string())
}
