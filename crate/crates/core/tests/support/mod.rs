//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use walktheta::{DenseSymMatrix, Graph};

/// Independence number by enumerating every independent set.
pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 64);
    let masks: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    fn extend(start: usize, allowed: u64, size: usize, masks: &[u64], best: &mut usize) {
        *best = (*best).max(size);
        for v in start..masks.len() {
            if allowed & (1 << v) != 0 {
                extend(v + 1, allowed & !masks[v], size + 1, masks, best);
            }
        }
    }
    let mut best = 0;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    extend(0, all, 0, &masks, &mut best);
    best
}

/// Coefficients (constant term first) of a product of polynomials.
pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Numerator of `d/dx Σ α/(1 - βx)` over the common denominator:
/// `Σ α_i β_i Π_{j≠i} (1 - β_j x)^2`.
pub fn derivative_numerator(alphas: &[f64], betas: &[f64]) -> Vec<f64> {
    let mut total = vec![0.0];
    for i in 0..alphas.len() {
        let mut term = vec![alphas[i] * betas[i]];
        for (j, &b) in betas.iter().enumerate() {
            if j != i {
                term = poly_mul(&term, &[1.0, -2.0 * b, b * b]);
            }
        }
        if term.len() > total.len() {
            total.resize(term.len(), 0.0);
        }
        for (t, c) in total.iter_mut().zip(term) {
            *t += c;
        }
    }
    total
}

/// Real roots of a polynomial through the eigenvalues of its companion
/// matrix; roots with imaginary part above `imag_tol` (relative) are dropped.
pub fn real_roots(coeffs: &[f64], imag_tol: f64) -> Vec<f64> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().abs() <= 1e-14 * scale {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -c[i] / lead;
    }
    let mut roots: Vec<f64> = m
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= imag_tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    roots.sort_by(f64::total_cmp);
    roots
}

/// Weighted adjacency matrix on `g` with weights drawn from `(-2, 2)`
/// away from zero.
pub fn random_weighted<R: Rng>(rng: &mut R, g: &Graph) -> DenseSymMatrix {
    let mut a = DenseSymMatrix::zeros(g.order());
    for &(i, j) in g.edges() {
        let mag = rng.gen_range(0.1..2.0);
        a.set(i, j, if rng.gen_bool(0.5) { mag } else { -mag });
    }
    a
}

/// Eigenvalues of a symmetric matrix through nalgebra, ascending.
pub fn reference_eigenvalues(m: &DenseSymMatrix) -> Vec<f64> {
    let n = m.dim();
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j));
    let mut ev: Vec<f64> = dm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
