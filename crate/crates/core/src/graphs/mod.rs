//! Simple undirected graphs, their ingestion formats, named families and the
//! matrices derived from them.

mod alpha;
mod edgelist;
mod graph6;
mod matrix;
mod named;

pub use alpha::independence_number;
pub use edgelist::parse_edge_list;
pub use graph6::{encode_graph6, parse_graph6};
pub use matrix::DenseSymMatrix;
pub use named::{generate_named, golomb, GOLOMB_EDGES, NAMED_FAMILIES};

use crate::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(i, j)` with `i < j`, sorted and deduplicated.
/// Values are immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate (including reversed) edges.
    /// Self-loops and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::InvalidParams(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidParams(format!(
                    "edge ({i}, {j}) has an endpoint outside 0..{n}"
                )));
            }
            list.push((i.min(j), i.max(j)));
        }
        list.sort_unstable();
        list.dedup();
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j) in &list {
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(Self {
            n,
            edges: list,
            neighbors,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.neighbors[i].binary_search(&j).is_ok()
    }

    /// Minimum degree; 0 for the graph with no vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency(&self) -> DenseSymMatrix {
        let mut a = DenseSymMatrix::zeros(self.n);
        for &(i, j) in &self.edges {
            a.set(i, j, 1.0);
        }
        a
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> DenseSymMatrix {
        let mut l = self.adjacency().scaled(-1.0);
        for v in 0..self.n {
            l.set(v, v, self.degree(v) as f64);
        }
        l
    }

    /// Strong product `self ⊠ other`; vertex `(i, j)` has index
    /// `i * other.order() + j`.
    pub fn strong_product(&self, other: &Graph) -> Graph {
        let q = other.n;
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in 0..q {
                let u = i * q + j;
                // closed neighborhoods in both factors, excluding (i, j) itself
                let gi = std::iter::once(i).chain(self.neighbors[i].iter().copied());
                for i2 in gi {
                    let hj = std::iter::once(j).chain(other.neighbors[j].iter().copied());
                    for j2 in hj {
                        let v = i2 * q + j2;
                        if v > u {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
        Graph::new(self.n * q, edges).expect("product edges are valid")
    }

    /// The graph with one extra isolated vertex appended.
    pub fn with_isolated_vertex(&self) -> Graph {
        Graph::new(self.n + 1, self.edges.iter().copied()).expect("same edges stay valid")
    }

    /// Neighborhood bitmasks; only valid for `n <= 64`.
    pub(crate) fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.neighbors
            .iter()
            .map(|nb| nb.iter().fold(0u64, |m, &w| m | (1u64 << w)))
            .collect()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}
