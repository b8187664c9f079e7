use serde::Serialize;

use crate::linalg::{dot, norm_sq, solve};
use crate::spectral::eig_sym;
use crate::walkgen::WalkGenFunction;
use crate::{DenseSymMatrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerCase {
    /// `A = 0`; the all-ones vector.
    Zero,
    /// Minimum strictly inside the spectral interval.
    Interior,
    /// Minimum at a wall `1/λ` whose eigenvalue cluster carries no weight.
    Endpoint,
}

/// Vector `u` with `|u|^2 = <1, u> = min W_A` and `u^T A u = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizerVector {
    pub case: OptimizerCase,
    pub x_star: Option<f64>,
    pub v: Vec<f64>,
    pub norm_sq: f64,
    /// `|u^T A u|`.
    pub residual_orth: f64,
    /// `||u|^2 - <1, u>|`.
    pub residual_sphere: f64,
    /// `|W_A(x*) - |u|^2|`.
    pub residual_value: f64,
    /// `max |λ_i(A)|`.
    pub spectral_norm: f64,
}

impl OptimizerVector {
    /// Residuals within `tol` relative to `‖A‖ |u|^2` and `|u|^2`.
    pub fn certified(&self, tol: f64) -> bool {
        let scale = self.norm_sq.max(1.0);
        self.residual_orth <= tol * self.spectral_norm.max(1.0) * scale
            && self.residual_sphere <= tol * scale
            && self.residual_value <= tol * scale
    }
}

/// Builds the optimizer vector at the minimizer of `W_A` over the spectral
/// interval: `(I - yA)^{-1} 1` inside, and at a wall the regular part plus
/// `sqrt(-y W'(y))` times a unit vector of the wall eigenspace.
pub fn extract_optimizer(a: &DenseSymMatrix) -> Result<OptimizerVector> {
    let n = a.dim();
    let s = eig_sym(a)?;
    let w = WalkGenFunction::from_spectral(&s);
    let m = w.minimize_on_spectral_interval()?;
    let spectral_norm = s.lambda_min().abs().max(s.lambda_max().abs());

    let (case, v) = match m.x_star {
        None => (OptimizerCase::Zero, vec![1.0; n]),
        Some(y) if !m.at_endpoint || !at_wall(&w, y) => {
            let shifted = DenseSymMatrix::identity(n).add_scaled(a, -y);
            (OptimizerCase::Interior, solve(&shifted, &vec![1.0; n])?)
        }
        Some(y) => {
            let wall = 1.0 / y;
            let tol = s.default_cluster_tol();
            let overlaps = s.ones_overlaps();
            let mut v = vec![0.0; n];
            let mut wall_vec = None;
            for (i, u) in s.eigenvectors.iter().enumerate() {
                let l = s.eigenvalues[i];
                if (l - wall).abs() <= tol {
                    wall_vec.get_or_insert(u);
                    continue;
                }
                let c = overlaps[i] / (1.0 - l * y);
                for (vk, uk) in v.iter_mut().zip(u) {
                    *vk += c * uk;
                }
            }
            let extra = (-y * m.derivative_at_x).max(0.0).sqrt();
            if let Some(u) = wall_vec {
                for (vk, uk) in v.iter_mut().zip(u) {
                    *vk += extra * uk;
                }
            }
            (OptimizerCase::Endpoint, v)
        }
    };

    let norm_sq = norm_sq(&v);
    let sum: f64 = v.iter().sum();
    Ok(OptimizerVector {
        case,
        x_star: m.x_star,
        residual_orth: dot(&v, &a.matvec(&v)).abs(),
        residual_sphere: (norm_sq - sum).abs(),
        residual_value: (m.value - norm_sq).abs(),
        norm_sq,
        v,
        spectral_norm,
    })
}

fn at_wall(w: &WalkGenFunction, y: f64) -> bool {
    let (lo, hi) = w.spectral_interval().expect("non-zero matrix");
    let close = |e: f64| (y - e).abs() <= 1e-12 * (1.0 + e.abs());
    close(lo) || close(hi)
}
