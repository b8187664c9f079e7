//! Dense symmetric eigendecomposition and the projection weights
//! `<1, P_λ 1>` of the all-ones vector onto each eigenspace.

use std::ops::Range;

use crate::{DenseSymMatrix, Error, Result};

/// Residual tolerance of the eigensolver, relative to `‖M‖_F`.
pub const TOL_EIG_REL: f64 = 1e-10;
/// Eigenvalues closer than `TOL_CLUSTER_REL * max(1, ‖M‖_F)` share a cluster.
pub const TOL_CLUSTER_REL: f64 = 1e-7;
/// Clusters whose weight is at most `TOL_WEIGHT_REL * n` are dropped.
/// Rounding leaves about `1e-30 n` on a truly orthogonal cluster, while
/// dropping a genuine weight `w` moves interval minima by `O(sqrt(w))`.
pub const TOL_WEIGHT_REL: f64 = 1e-16;

const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SpectralData {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` is the unit eigenvector for `eigenvalues[i]`.
    pub eigenvectors: Vec<Vec<f64>>,
    /// `‖M‖_F` of the decomposed matrix.
    pub norm: f64,
}

/// A run of numerically equal eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub value: f64,
    /// `Σ <1, u_i>^2` over the members.
    pub weight: f64,
    /// Indices into [`SpectralData::eigenvalues`].
    pub members: Range<usize>,
}

/// Cyclic Jacobi eigendecomposition. Eigenvectors are sign-normalized so
/// that their coordinate sum is non-negative (first non-zero coordinate
/// positive when the sum vanishes).
pub fn eig_sym(m: &DenseSymMatrix) -> Result<SpectralData> {
    let n = m.dim();
    let norm = m.frobenius_norm();
    let mut a: Vec<f64> = (0..n).flat_map(|i| m.row(i).to_vec()).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let target = f64::EPSILON * norm;
    let mut converged = norm == 0.0;
    let mut prev_off = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let current = off(&a);
        if converged || current <= target {
            converged = true;
            break;
        }
        // rounding floor reached above the ideal target
        if current >= prev_off {
            break;
        }
        prev_off = current;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        let residual = off(&a);
        if residual > TOL_EIG_REL * norm {
            return Err(Error::Numerical {
                message: format!("Jacobi did not converge in {MAX_SWEEPS} sweeps"),
                residual,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues = order.iter().map(|&i| a[i * n + i]).collect();
    let eigenvectors = order
        .iter()
        .map(|&j| {
            let mut col: Vec<f64> = (0..n).map(|k| v[k * n + j]).collect();
            let sum: f64 = col.iter().sum();
            let flip = if sum.abs() > 1e-12 {
                sum < 0.0
            } else {
                col.iter()
                    .find(|x| x.abs() > 1e-12)
                    .is_some_and(|&x| x < 0.0)
            };
            if flip {
                col.iter_mut().for_each(|x| *x = -*x);
            }
            col
        })
        .collect();
    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
        norm,
    })
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `<1, u_i>` for every eigenvector.
    pub fn ones_overlaps(&self) -> Vec<f64> {
        self.eigenvectors.iter().map(|u| u.iter().sum()).collect()
    }

    pub fn default_cluster_tol(&self) -> f64 {
        TOL_CLUSTER_REL * self.norm.max(1.0)
    }

    pub fn default_weight_tol(&self) -> f64 {
        TOL_WEIGHT_REL * self.dim() as f64
    }

    /// Groups consecutive eigenvalues closer than `tol_cluster`; keeps
    /// zero-weight clusters.
    pub fn clusters(&self, tol_cluster: f64) -> Vec<Cluster> {
        let overlaps = self.ones_overlaps();
        let mut out: Vec<Cluster> = Vec::new();
        let mut start = 0;
        for i in 0..self.dim() {
            let last = i + 1 == self.dim();
            if last || self.eigenvalues[i + 1] - self.eigenvalues[i] > tol_cluster {
                let members = start..i + 1;
                let len = (members.end - members.start) as f64;
                out.push(Cluster {
                    value: self.eigenvalues[members.clone()].iter().sum::<f64>() / len,
                    weight: overlaps[members.clone()].iter().map(|c| c * c).sum(),
                    members,
                });
                start = i + 1;
            }
        }
        out
    }

    /// `(λ_rep, <1, P_λ 1>)` for clusters whose weight exceeds `tol_weight`.
    pub fn cluster_weights(&self, tol_cluster: f64, tol_weight: f64) -> Vec<(f64, f64)> {
        self.clusters(tol_cluster)
            .into_iter()
            .filter(|c| c.weight > tol_weight)
            .map(|c| (c.value, c.weight))
            .collect()
    }

    /// [`Self::cluster_weights`] at the default tolerances.
    pub fn default_cluster_weights(&self) -> Vec<(f64, f64)> {
        self.cluster_weights(self.default_cluster_tol(), self.default_weight_tol())
    }

    /// Largest `‖M u_i - λ_i u_i‖` over all columns.
    pub fn max_residual(&self, m: &DenseSymMatrix) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(&l, u)| {
                m.matvec(u)
                    .iter()
                    .zip(u)
                    .map(|(mu, ui)| (mu - l * ui).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}
