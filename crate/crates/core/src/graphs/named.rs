use super::Graph;
use crate::{Error, Result};

/// Names accepted by [`generate_named`].
pub const NAMED_FAMILIES: &[&str] = &[
    "empty", "complete", "cycle", "path", "petersen", "golomb", "kneser",
];

/// Golomb graph edges, 0-indexed, as drawn with node labels 1..=10:
/// triangle {1, 9, 10}, hub 5 of degree 6, and the gadget on 2, 3, 4, 6, 7, 8.
pub const GOLOMB_EDGES: [(usize, usize); 18] = [
    (0, 8),
    (0, 9),
    (8, 9),
    (0, 1),
    (8, 6),
    (9, 7),
    (4, 1),
    (4, 2),
    (4, 3),
    (4, 5),
    (4, 6),
    (4, 7),
    (1, 2),
    (1, 3),
    (2, 6),
    (3, 7),
    (5, 6),
    (5, 7),
];

pub fn golomb() -> Graph {
    Graph::new(10, GOLOMB_EDGES).expect("constant edge list is valid")
}

fn param(name: &str, params: &[usize], idx: usize, what: &str) -> Result<usize> {
    params
        .get(idx)
        .copied()
        .ok_or_else(|| Error::InvalidParams(format!("{name} needs parameter {what}")))
}

/// Canonically labeled member of a named family.
///
/// | name | params |
/// |------|--------|
/// | `empty`, `complete` | `[n]` |
/// | `cycle` | `[n]`, `n >= 3` |
/// | `path` | `[n]`, `n >= 1` |
/// | `petersen`, `golomb` | none |
/// | `kneser` | `[n, k]`, `1 <= k <= n` |
pub fn generate_named(name: &str, params: &[usize]) -> Result<Graph> {
    match name {
        "empty" => Ok(Graph::empty(param(name, params, 0, "n")?)),
        "complete" => {
            let n = param(name, params, 0, "n")?;
            Graph::new(n, (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))))
        }
        "cycle" => {
            let n = param(name, params, 0, "n")?;
            if n < 3 {
                return Err(Error::InvalidParams(format!("cycle needs n >= 3, got {n}")));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        "path" => {
            let n = param(name, params, 0, "n")?;
            if n == 0 {
                return Err(Error::InvalidParams("path needs n >= 1".into()));
            }
            Graph::new(n, (1..n).map(|i| (i - 1, i)))
        }
        "petersen" => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            Graph::new(10, outer.chain(spokes).chain(inner))
        }
        "golomb" => Ok(golomb()),
        "kneser" => {
            let n = param(name, params, 0, "n")?;
            let k = param(name, params, 1, "k")?;
            if k == 0 || k > n || n > 20 {
                return Err(Error::InvalidParams(format!(
                    "kneser needs 1 <= k <= n <= 20, got n = {n}, k = {k}"
                )));
            }
            let subsets: Vec<u32> = (0u32..(1 << n))
                .filter(|s| s.count_ones() as usize == k)
                .collect();
            let mut edges = Vec::new();
            for (a, &s) in subsets.iter().enumerate() {
                for (b, &t) in subsets.iter().enumerate().skip(a + 1) {
                    if s & t == 0 {
                        edges.push((a, b));
                    }
                }
            }
            Graph::new(subsets.len(), edges)
        }
        _ => Err(Error::InvalidParams(format!(
            "unknown graph family {name:?}; expected one of {NAMED_FAMILIES:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_five() {
        let g = generate_named("cycle", &[5]).unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 5));
    }

    #[test]
    fn path_seventeen() {
        let g = generate_named("path", &[17]).unwrap();
        assert_eq!((g.order(), g.edge_count()), (17, 16));
    }

    #[test]
    fn golomb_shape() {
        let g = golomb();
        assert_eq!((g.order(), g.edge_count()), (10, 18));
        let degrees: Vec<usize> = (0..10).map(|v| g.degree(v)).collect();
        assert!(degrees.contains(&6));
        assert_eq!(g.min_degree(), 3);
        assert_eq!(degrees.iter().sum::<usize>(), 36);
    }

    #[test]
    fn petersen_matches_kneser_5_2() {
        let p = generate_named("petersen", &[]).unwrap();
        let k = generate_named("kneser", &[5, 2]).unwrap();
        assert_eq!(p.regular_degree(), Some(3));
        assert_eq!(k.regular_degree(), Some(3));
        assert_eq!((p.edge_count(), k.edge_count()), (15, 15));
    }

    #[test]
    fn bad_requests() {
        assert!(generate_named("cycle", &[2]).is_err());
        assert!(generate_named("cycle", &[]).is_err());
        assert!(generate_named("hypercube", &[3]).is_err());
        assert!(generate_named("kneser", &[3, 0]).is_err());
    }
}
