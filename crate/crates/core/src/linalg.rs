//! Small dense helpers.

use crate::{DenseSymMatrix, Error, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

/// Solves `M x = b` by Gaussian elimination with partial pivoting.
///
/// Fails when a pivot falls below `1e-13 * max|M|`; the error carries the
/// ratio of smallest to largest pivot as a crude reciprocal condition
/// estimate.
pub fn solve(m: &DenseSymMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = m.dim();
    assert_eq!(b.len(), n, "dimension mismatch");
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut a = m.to_rows();
    let mut x = b.to_vec();
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot = 0.0_f64;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        a.swap(col, piv);
        x.swap(col, piv);
        let p = a[col][col];
        min_pivot = min_pivot.min(p.abs());
        max_pivot = max_pivot.max(p.abs());
        if p.abs() <= 1e-13 * scale {
            return Err(Error::Numerical {
                message: "linear system is numerically singular".into(),
                residual: min_pivot / max_pivot.max(f64::MIN_POSITIVE),
            });
        }
        for r in (col + 1)..n {
            let f = a[r][col] / p;
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            x[r] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        let s: f64 = ((col + 1)..n).map(|c| a[col][c] * x[c]).sum();
        x[col] = (x[col] - s) / a[col][col];
    }
    Ok(x)
}
