//! Lovász theta bounds and estimates built on weighted walk-generating
//! functions.
//!
//! For a weighted adjacency matrix `A` of a graph on `n` vertices the
//! walk-generating function is `W_A(x) = <1, (I - xA)^{-1} 1>`. Minimizing it
//! over `[1/λ_min(A), 1/λ_max(A)]` gives an upper bound on the Lovász number,
//! and the infimum over all `A` equals it. The crate provides:
//!
//! * [`graphs`]: graph values, graph6 / edge-list ingestion, named families,
//!   the strong product and an exact independence-number search.
//! * [`spectral`]: a cyclic Jacobi eigensolver and the projection weights
//!   `<1, P_λ 1>`.
//! * [`walkgen`]: evaluation and convex minimization of `W_A`.
//! * [`reciprocal`]: critical-point analysis of `Σ α_i / (1 - β_i x)`.
//! * [`bounds`]: Hoffman-type bounds and their dominance checks.
//! * [`theta`]: eigenvalue minimization of `λ_max(J - A)`, the scaling
//!   identity, optimizer-vector certificates and strong-product constructions.

pub mod bounds;
pub mod corpus;
mod error;
pub mod graphs;
pub mod linalg;
pub mod reciprocal;
pub mod spectral;
pub mod theta;
pub mod walkgen;

pub use error::{Error, Result};
pub use graphs::{DenseSymMatrix, Graph};
