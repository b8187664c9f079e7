//! Seeded graph collections for batch verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphs::{generate_named, golomb};
use crate::reciprocal::ReciprocalSum;
use crate::{DenseSymMatrix, Graph};

/// Largest order drawn by [`random_corpus`].
pub const MAX_RANDOM_ORDER: usize = 12;
const EDGE_PROBS: [f64; 5] = [0.15, 0.3, 0.5, 0.7, 0.9];

/// Labelled small graphs with known structure.
pub fn fixtures() -> Vec<(String, Graph)> {
    let named = |name: &str, p: &[usize]| generate_named(name, p).expect("valid fixture");
    let mut out = vec![
        ("K1".to_string(), named("complete", &[1])),
        ("K2".into(), named("complete", &[2])),
        ("K4".into(), named("complete", &[4])),
        ("empty3".into(), Graph::empty(3)),
        ("P2".into(), named("path", &[2])),
        ("P3".into(), named("path", &[3])),
        ("P4".into(), named("path", &[4])),
        ("P17".into(), named("path", &[17])),
        ("C4".into(), named("cycle", &[4])),
        ("C5".into(), named("cycle", &[5])),
        ("C6".into(), named("cycle", &[6])),
        ("C7".into(), named("cycle", &[7])),
        ("petersen".into(), named("petersen", &[])),
        ("golomb".into(), golomb()),
        ("kneser_5_2".into(), named("kneser", &[5, 2])),
        ("kneser_6_2".into(), named("kneser", &[6, 2])),
    ];
    let c5 = named("cycle", &[5]);
    out.push(("C5+isolated".into(), c5.with_isolated_vertex()));
    out.push((
        "K2xK2".into(),
        named("complete", &[2]).strong_product(&named("complete", &[2])),
    ));
    out
}

/// `G(n, p)` graph.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).expect("generated edges are valid")
}

/// `count` random graphs of order `1..=MAX_RANDOM_ORDER`. Every fifth graph
/// gets an extra isolated vertex.
pub fn random_corpus(seed: u64, count: usize) -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(1..=MAX_RANDOM_ORDER);
            let p = EDGE_PROBS[rng.gen_range(0..EDGE_PROBS.len())];
            let g = random_graph(&mut rng, n, p);
            if k % 5 == 4 && n < MAX_RANDOM_ORDER {
                (format!("random{k}+isolated"), g.with_isolated_vertex())
            } else {
                (format!("random{k}"), g)
            }
        })
        .collect()
}

/// Weighted adjacency matrix on `g` with weights of magnitude in
/// `[0.1, 2)` and random sign.
pub fn random_weighted_adjacency<R: Rng>(rng: &mut R, g: &Graph) -> DenseSymMatrix {
    let mut a = DenseSymMatrix::zeros(g.order());
    for &(i, j) in g.edges() {
        let mag = rng.gen_range(0.1..2.0);
        a.set(i, j, if rng.gen_bool(0.5) { mag } else { -mag });
    }
    a
}

/// Random graph of order `3..=max_n` with at least one edge.
pub fn random_nonempty_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(3..=max_n.max(3));
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(rng, n, p);
        if g.edge_count() > 0 {
            return g;
        }
    }
}

/// Sign pattern of the rates of a random reciprocal sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateSigns {
    Positive,
    Negative,
    Zero,
    Mixed,
}

/// Reciprocal sum with up to six terms, weights in `[0.1, 5)` and rates of
/// magnitude in `[0.05, 4)` following `signs`. `Mixed` always has rates of
/// both signs; `Zero` is the single term with rate 0.
pub fn random_reciprocal<R: Rng>(rng: &mut R, signs: RateSigns) -> ReciprocalSum {
    if signs == RateSigns::Zero {
        return ReciprocalSum::new(vec![rng.gen_range(0.1..5.0)], vec![0.0]).expect("valid");
    }
    let n = rng.gen_range(if signs == RateSigns::Mixed { 2 } else { 1 }..=6);
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n);
    while pairs.len() < n {
        let mag = rng.gen_range(0.05..4.0);
        let beta = match signs {
            RateSigns::Positive => mag,
            RateSigns::Negative => -mag,
            _ if pairs.len() < 2 => {
                if pairs.is_empty() {
                    mag
                } else {
                    -mag
                }
            }
            _ => {
                if rng.gen_bool(0.5) {
                    mag
                } else {
                    -mag
                }
            }
        };
        if pairs.iter().all(|&(_, b)| (b - beta).abs() > 1e-3) {
            pairs.push((rng.gen_range(0.1..5.0), beta));
        }
    }
    ReciprocalSum::from_unsorted(&pairs).expect("distinct rates")
}

/// Fixtures followed by `count` random graphs.
pub fn corpus(seed: u64, count: usize) -> Vec<(String, Graph)> {
    let mut out = fixtures();
    out.extend(random_corpus(seed, count));
    out
}
