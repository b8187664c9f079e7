use serde::Serialize;

use crate::linalg::dot;
use crate::spectral::{eig_sym, SpectralData};
use crate::walkgen::ZERO_MATRIX_TOL;
use crate::{DenseSymMatrix, Error, Result};

const GOLDEN_REL_WIDTH: f64 = 1e-4;
const MAX_EXPANSIONS: usize = 20;
const MAX_BISECTIONS: usize = 200;
/// Eigenvalues of `J - tA` this close (relative) count as one at a kink.
const KINK_TOL: f64 = 1e-12;

/// Minimizer of `t -> λ_max(J - tA)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scaling {
    pub t_star: f64,
    pub value: f64,
}

/// `λ_max(J - tA)`.
pub fn scaled_lambda_max(a: &DenseSymMatrix, t: f64) -> Result<f64> {
    Ok(eig_sym(&penalized(a, t))?.lambda_max())
}

fn penalized(a: &DenseSymMatrix, t: f64) -> DenseSymMatrix {
    DenseSymMatrix::ones(a.dim()).add_scaled(a, -t)
}

/// Interval `[lo, hi]` of derivatives `-u^T A u` over unit vectors in the
/// top eigenspace of `J - tA`.
fn subdifferential(a: &DenseSymMatrix, s: &SpectralData) -> Result<(f64, f64)> {
    let top = s
        .clusters(KINK_TOL * s.norm.max(1.0))
        .pop()
        .expect("non-empty");
    let cols = &s.eigenvectors[top.members];
    let k = cols.len();
    let au: Vec<Vec<f64>> = cols.iter().map(|u| a.matvec(u)).collect();
    let b = DenseSymMatrix::from_upper(k, |i, j| -dot(&cols[i], &au[j]));
    let e = eig_sym(&b)?;
    Ok((e.lambda_min(), e.lambda_max()))
}

/// Optimal scaling of a fixed weighted adjacency matrix: golden-section
/// search on a bracket of half-width `4n / σ_min`, refined by bisection on
/// the sign of the subdifferential.
pub fn optimal_scaling(a: &DenseSymMatrix) -> Result<Scaling> {
    let n = a.dim();
    let spectrum = eig_sym(a)?;
    if spectrum.norm <= ZERO_MATRIX_TOL {
        return Err(Error::Domain(
            "optimal scaling is undefined for the zero matrix".into(),
        ));
    }
    let floor = 1e-9 * spectrum.norm;
    let sigma_min = spectrum
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .filter(|&l| l > floor)
        .fold(f64::INFINITY, f64::min);
    let h = |t: f64| scaled_lambda_max(a, t);

    let mut half = 4.0 * n as f64 / sigma_min;
    let (mut lo, mut hi);
    let mut expansions = 0;
    loop {
        (lo, hi) = golden(&h, -half, half)?;
        let mid = 0.5 * (lo + hi);
        let near_wall = (half - mid.abs()) <= 0.01 * half;
        if !near_wall || expansions == MAX_EXPANSIONS {
            break;
        }
        half *= 4.0;
        expansions += 1;
    }
    // widen by one golden step so the bracket certainly holds the minimizer
    let pad = hi - lo;
    let (mut a_t, mut b_t) = (lo - pad, hi + pad);
    let mut t = 0.5 * (a_t + b_t);
    for _ in 0..MAX_BISECTIONS {
        let s = eig_sym(&penalized(a, t))?;
        let (dlo, dhi) = subdifferential(a, &s)?;
        if dlo <= 0.0 && dhi >= 0.0 {
            break;
        }
        if dlo > 0.0 {
            b_t = t;
        } else {
            a_t = t;
        }
        let mid = 0.5 * (a_t + b_t);
        if mid <= a_t || mid >= b_t {
            break;
        }
        t = mid;
    }
    Ok(Scaling {
        t_star: t,
        value: h(t)?,
    })
}

fn golden<F: Fn(f64) -> Result<f64>>(f: &F, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let width0 = b - a;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > GOLDEN_REL_WIDTH * width0 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::generate_named;

    #[test]
    fn c5_adjacency() {
        let a = generate_named("cycle", &[5]).unwrap().adjacency();
        let s = optimal_scaling(&a).unwrap();
        // J - tA has eigenvalues 5 - 2t and -2t cos(2πk/5); balanced at
        // 5 - 2t = -2t cos(4π/5)
        let c = (4.0 * std::f64::consts::PI / 5.0).cos();
        let t = 5.0 / (2.0 - 2.0 * c);
        assert!((s.t_star - t).abs() < 1e-8, "{}", s.t_star);
        assert!((s.value - 5f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn k2_adjacency() {
        let a = generate_named("complete", &[2]).unwrap().adjacency();
        let s = optimal_scaling(&a).unwrap();
        assert!((s.t_star - 1.0).abs() < 1e-9);
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_is_rejected() {
        assert!(matches!(
            optimal_scaling(&DenseSymMatrix::zeros(3)),
            Err(Error::Domain(_))
        ));
    }
}
