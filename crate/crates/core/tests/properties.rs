//! Invariants checked over random inputs.

mod support;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walktheta::bounds::{
    closed_form_bound, hoffman_regular, laplacian_bound, report, walkgen_bound,
};
use walktheta::corpus::{corpus, fixtures};
use walktheta::graphs::{encode_graph6, parse_graph6};
use walktheta::reciprocal::ReciprocalSum;
use walktheta::spectral::eig_sym;
use walktheta::theta::{
    extract_optimizer, lambda_max_penalized, minimize_theta, optimal_scaling, product_eigenvalues,
    product_matrix, ThetaOptions,
};
use walktheta::walkgen::WalkGenFunction;
use walktheta::{DenseSymMatrix, Graph};

use support::{brute_alpha, random_weighted};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges: Vec<_> = pairs
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn weighted_strategy() -> impl Strategy<Value = DenseSymMatrix> {
    (graph_strategy(10), any::<u64>())
        .prop_map(|(g, seed)| random_weighted(&mut ChaCha8Rng::seed_from_u64(seed), &g))
}

fn sum_strategy() -> impl Strategy<Value = ReciprocalSum> {
    proptest::collection::vec((0.1f64..5.0, -4.0f64..4.0), 1..7)
        .prop_filter_map("distinct rates", |pairs| {
            ReciprocalSum::from_unsorted(&pairs).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(30)) {
        let text = encode_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn laplacian_annihilates_ones(g in graph_strategy(15)) {
        let l = g.laplacian();
        for i in 0..g.order() {
            prop_assert_eq!(l.row(i).iter().sum::<f64>(), 0.0);
        }
    }

    #[test]
    fn cluster_weights_sum_to_n(a in weighted_strategy()) {
        let s = eig_sym(&a).unwrap();
        let n = a.dim() as f64;
        let total: f64 = s.default_cluster_weights().iter().map(|c| c.1).sum();
        prop_assert!((total - n).abs() <= 1e-9 * n);
        prop_assert!(s.max_residual(&a) <= 1e-10 * a.frobenius_norm().max(1.0));
        let reference = support::reference_eigenvalues(&a);
        for (x, y) in s.eigenvalues.iter().zip(&reference) {
            prop_assert!((x - y).abs() <= 1e-10 * a.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn walkgen_is_convex_on_its_interval(a in weighted_strategy(), u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let w = WalkGenFunction::build(&a).unwrap();
        if let Some((lo, hi)) = w.spectral_interval() {
            // stay away from the walls, where W may blow up
            let at = |t: f64| lo + (hi - lo) * (0.01 + 0.98 * t);
            let (x1, x2) = (at(u), at(v));
            let mid = w.eval(0.5 * (x1 + x2)).unwrap();
            let avg = 0.5 * (w.eval(x1).unwrap() + w.eval(x2).unwrap());
            prop_assert!(mid <= avg + 1e-9 * avg.abs().max(1.0));
        }
    }

    #[test]
    fn derivative_matches_central_difference(a in weighted_strategy(), u in 0.05f64..0.95) {
        let w = WalkGenFunction::build(&a).unwrap();
        if let Some((lo, hi)) = w.spectral_interval() {
            let x = lo + (hi - lo) * u;
            let h = 1e-5 * (hi - lo);
            let fd = (w.eval(x + h).unwrap() - w.eval(x - h).unwrap()) / (2.0 * h);
            let d = w.eval_deriv(x).unwrap();
            let w3: f64 = w.terms().iter().map(|t| {
                let q = 1.0 - t.rate * x;
                (t.weight * t.rate.powi(3) / q.powi(4)).abs()
            }).sum();
            prop_assert!((d - fd).abs() <= 2.0 * w3 * h * h + 1e-6 * (1.0 + d.abs()));
        }
    }

    #[test]
    fn slope_at_zero_is_twice_edge_count(g in graph_strategy(12)) {
        // exact: <1, A 1> in integers
        let a = g.adjacency();
        let ones_a_ones: i64 = (0..g.order()).flat_map(|i| a.row(i).iter().map(|&x| x as i64)).sum();
        prop_assert_eq!(ones_a_ones, 2 * g.edge_count() as i64);
        let w = WalkGenFunction::build(&a).unwrap();
        let d = w.eval_deriv(0.0).unwrap();
        prop_assert!((d - ones_a_ones as f64).abs() <= 1e-9 * (1.0 + d.abs()));
    }

    #[test]
    fn interval_minimum_dominates_kernel_weight(a in weighted_strategy()) {
        let w = WalkGenFunction::build(&a).unwrap();
        let m = w.minimize_on_spectral_interval().unwrap();
        prop_assert!(m.value >= w.kernel_weight() - 1e-9);
        prop_assert!(m.value >= 0.0);
    }

    #[test]
    fn critical_point_count_is_bounded(f in sum_strategy()) {
        let pts = f.enumerate_critical_points(f.default_scan_range()).unwrap();
        prop_assert!(pts.len() <= 2 * (f.order() - 1));
        let found = f.is_constant() || !pts.is_empty();
        prop_assert_eq!(found, f.has_critical_points());
        let r = f.verify_duality().unwrap();
        prop_assert!(r.duality_holds, "{:?}", r);
    }

    #[test]
    fn reciprocal_asymptotics(f in sum_strategy()) {
        // f(x) tends to Σ_{β=0} α as |x| grows; poles blow up with sign set
        // by the side of approach
        let limit = f.limit_at_infinity();
        let max_pole = f.betas().iter().filter(|b| **b != 0.0).map(|b| 1.0 / b.abs()).fold(0.0, f64::max);
        let far = 1e9 * (1.0 + max_pole);
        prop_assert!((f.eval(far) - limit).abs() <= 1e-6 * (1.0 + limit));
        prop_assert!((f.eval(-far) - limit).abs() <= 1e-6 * (1.0 + limit));
        for &b in f.betas() {
            if b != 0.0 {
                let p = 1.0 / b;
                let eps = 1e-9 * (1.0 + p.abs());
                let (left, right) = (f.eval(p - eps), f.eval(p + eps));
                if b > 0.0 {
                    prop_assert!(left > 1e6 && right < -1e6);
                } else {
                    prop_assert!(left < -1e6 && right > 1e6);
                }
            }
        }
    }

    #[test]
    fn sandwich_and_dominance(g in graph_strategy(12)) {
        let alpha = brute_alpha(&g) as f64;
        let r = report(&g, Some(alpha as usize)).unwrap();
        prop_assert!(r.dominance_ok);
        prop_assert_eq!(r.witness_ok, Some(true));
        prop_assert!(r.bounds.walkgen >= alpha - 1e-8);
        prop_assert!(r.bounds.laplacian >= alpha - 1e-8);
    }

    #[test]
    fn isolated_vertex_adds_one(g in graph_strategy(11)) {
        let base = walkgen_bound(&g).unwrap();
        let plus = walkgen_bound(&g.with_isolated_vertex()).unwrap();
        prop_assert!((plus - base - 1.0).abs() <= 1e-8);
        prop_assert_eq!(laplacian_bound(&g.with_isolated_vertex()).unwrap(), (g.order() + 1) as f64);
    }

    #[test]
    fn scaling_duality(a in weighted_strategy()) {
        prop_assume!(a.frobenius_norm() > 0.0);
        let s = optimal_scaling(&a).unwrap();
        let m = WalkGenFunction::build(&a).unwrap().minimize_on_spectral_interval().unwrap();
        prop_assert!((s.value - m.value).abs() <= 1e-6, "{} vs {}", s.value, m.value);
    }

    #[test]
    fn optimizer_certificate(a in weighted_strategy()) {
        let o = extract_optimizer(&a).unwrap();
        prop_assert!(o.certified(1e-7), "{:?}", o);
    }

    #[test]
    fn penalized_max_is_at_least_alpha(g in graph_strategy(9), seed in any::<u64>()) {
        let alpha = brute_alpha(&g) as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: Vec<f64> = (0..g.edge_count()).map(|_| rng.gen_range(-3.0..3.0)).collect();
        prop_assert!(lambda_max_penalized(&g, &w).unwrap().value >= alpha - 1e-7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_trace_is_sound_and_monotone(g in graph_strategy(9)) {
        let alpha = brute_alpha(&g) as f64;
        let est = minimize_theta(&g, &ThetaOptions::default()).unwrap();
        prop_assert!(est.trace.iter().all(|&v| v >= alpha - 1e-7));
        prop_assert!(est.best_so_far().windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(est.upper >= 1.0 - 1e-9 && est.upper <= g.order() as f64);
        prop_assert!(est.upper <= walkgen_bound(&g).unwrap() + 1e-6);
    }
}

#[test]
fn regular_graphs_have_one_cluster_and_collapse() {
    for (name, g) in fixtures() {
        let Some(k) = g.regular_degree() else {
            continue;
        };
        if g.edge_count() == 0 {
            continue;
        }
        let s = eig_sym(&g.adjacency()).unwrap();
        let c = s.default_cluster_weights();
        assert_eq!(c.len(), 1, "{name}");
        assert!((c[0].0 - k as f64).abs() < 1e-9 && (c[0].1 - g.order() as f64).abs() < 1e-9);
        let h = hoffman_regular(&g).unwrap().unwrap();
        assert!((walkgen_bound(&g).unwrap() - h).abs() <= 1e-9, "{name}");
        let cf = closed_form_bound(&g).unwrap().unwrap();
        assert!((cf.value.unwrap() - h).abs() <= 1e-9, "{name}");
    }
}

#[test]
fn spectra_straddle_zero() {
    for (name, g) in corpus(11, 300) {
        if g.edge_count() > 0 {
            let s = eig_sym(&g.adjacency()).unwrap();
            assert!(s.lambda_min() < 0.0 && s.lambda_max() > 0.0, "{name}");
        }
    }
}

#[test]
fn strong_product_matches_kronecker_identity() {
    let f = fixtures();
    let small: Vec<&Graph> = f
        .iter()
        .map(|(_, g)| g)
        .filter(|g| g.order() <= 7)
        .collect();
    for g in &small {
        for h in &small {
            let p = g.strong_product(h).adjacency();
            let expected = g
                .adjacency()
                .shifted(1.0)
                .kron(&h.adjacency().shifted(1.0))
                .shifted(-1.0);
            assert_eq!(p, expected);
            let (sg, sh) = (
                eig_sym(&g.adjacency()).unwrap(),
                eig_sym(&h.adjacency()).unwrap(),
            );
            for (gg, gh) in [(1.0, 1.0), (-sg.lambda_min() + 0.5, -sh.lambda_max() - 0.3)] {
                let formula = product_eigenvalues(&sg, &sh, gg, gh);
                let dense =
                    eig_sym(&product_matrix(&g.adjacency(), &h.adjacency(), gg, gh)).unwrap();
                for (x, y) in formula.iter().zip(&dense.eigenvalues) {
                    assert!((x - y).abs() <= 1e-8, "{x} vs {y}");
                }
            }
        }
    }
}

#[test]
fn product_support_and_diagonal() {
    use walktheta::theta::{product_adjacency, WeightedAdjacency};
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let c5 = walktheta::graphs::generate_named("cycle", &[5]).unwrap();
    let p4 = walktheta::graphs::generate_named("path", &[4]).unwrap();
    for _ in 0..20 {
        let wg =
            WeightedAdjacency::from_matrix(c5.clone(), &random_weighted(&mut rng, &c5)).unwrap();
        let wh =
            WeightedAdjacency::from_matrix(p4.clone(), &random_weighted(&mut rng, &p4)).unwrap();
        let sg = eig_sym(&wg.to_matrix()).unwrap();
        let sh = eig_sym(&wh.to_matrix()).unwrap();
        let p =
            product_adjacency(&wg, &wh, -sg.lambda_min() + 0.1, -sh.lambda_max() - 0.2).unwrap();
        let m = p.to_matrix();
        for i in 0..m.dim() {
            assert_eq!(m.get(i, i), 0.0);
        }
        assert_eq!(p.graph(), &c5.strong_product(&p4));
    }
}
