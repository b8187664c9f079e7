//! Lovász theta through `ϑ(G) = inf_A λ_max(J - A)`, where `A` ranges over
//! weighted adjacency matrices of `G`, together with the fixed-`A` scaling
//! identity, optimizer-vector certificates and strong-product constructions.

mod certificate;
mod minimize;
mod product;
mod scaling;

pub use certificate::{extract_optimizer, OptimizerCase, OptimizerVector};
pub use minimize::{minimize_theta, Method, ThetaEstimate, ThetaOptions};
pub use product::{
    factorization_gap, product_adjacency, product_eigenvalues, product_matrix,
    submultiplicativity_check, validate_shift, SubmultiplicativityReport,
};
pub use scaling::{optimal_scaling, scaled_lambda_max, Scaling};

use crate::spectral::eig_sym;
use crate::{DenseSymMatrix, Error, Graph, Result};

/// Edge weights on a fixed graph. The induced matrix is symmetric, zero on
/// the diagonal and off the edge set.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAdjacency {
    graph: Graph,
    /// One weight per entry of `graph.edges()`, same order.
    weights: Vec<f64>,
}

impl WeightedAdjacency {
    pub fn new(graph: Graph, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            return Err(Error::InvalidParams(format!(
                "expected {} edge weights, got {}",
                graph.edge_count(),
                weights.len()
            )));
        }
        Ok(Self { graph, weights })
    }

    /// All weights 1.
    pub fn unweighted(graph: Graph) -> Self {
        let weights = vec![1.0; graph.edge_count()];
        Self { graph, weights }
    }

    /// Reads weights off a matrix, which must vanish on the diagonal and
    /// off the edge set.
    pub fn from_matrix(graph: Graph, m: &DenseSymMatrix) -> Result<Self> {
        let n = graph.order();
        if m.dim() != n {
            return Err(Error::InvalidParams(format!(
                "matrix has dimension {}, graph has order {n}",
                m.dim()
            )));
        }
        for i in 0..n {
            for j in i..n {
                if m.get(i, j) != 0.0 && (i == j || !graph.has_edge(i, j)) {
                    return Err(Error::InvalidParams(format!(
                        "entry ({i}, {j}) = {} lies off the edge support",
                        m.get(i, j)
                    )));
                }
            }
        }
        let weights = graph.edges().iter().map(|&(i, j)| m.get(i, j)).collect();
        Ok(Self { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn to_matrix(&self) -> DenseSymMatrix {
        weighted_matrix(&self.graph, &self.weights)
    }
}

pub(crate) fn weighted_matrix(g: &Graph, weights: &[f64]) -> DenseSymMatrix {
    let mut a = DenseSymMatrix::zeros(g.order());
    for (&(i, j), &w) in g.edges().iter().zip(weights) {
        a.set(i, j, w);
    }
    a
}

/// `J - A` for edge weights `weights`.
pub(crate) fn penalized_matrix(g: &Graph, weights: &[f64]) -> DenseSymMatrix {
    let mut m = DenseSymMatrix::ones(g.order());
    for (&(i, j), &w) in g.edges().iter().zip(weights) {
        m.set(i, j, 1.0 - w);
    }
    m
}

/// Top of the spectrum of `J - A`.
#[derive(Debug, Clone, PartialEq)]
pub struct PenalizedMax {
    pub value: f64,
    pub top_eigvec: Vec<f64>,
    /// Size of the top eigenvalue cluster.
    pub multiplicity: usize,
}

pub fn lambda_max_penalized(g: &Graph, weights: &[f64]) -> Result<PenalizedMax> {
    if weights.len() != g.edge_count() {
        return Err(Error::InvalidParams(format!(
            "expected {} edge weights, got {}",
            g.edge_count(),
            weights.len()
        )));
    }
    if g.order() == 0 {
        return Ok(PenalizedMax {
            value: 0.0,
            top_eigvec: Vec::new(),
            multiplicity: 0,
        });
    }
    let s = eig_sym(&penalized_matrix(g, weights))?;
    let top = s
        .clusters(s.default_cluster_tol())
        .pop()
        .expect("non-empty spectrum");
    Ok(PenalizedMax {
        value: s.lambda_max(),
        top_eigvec: s.eigenvectors[top.members.end - 1].clone(),
        multiplicity: top.members.len(),
    })
}
