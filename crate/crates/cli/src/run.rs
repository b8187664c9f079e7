use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use walktheta::bounds::report_with_tol;
use walktheta::corpus::{
    corpus, fixtures, random_nonempty_graph, random_reciprocal, random_weighted_adjacency,
    RateSigns,
};
use walktheta::graphs::independence_number;
use walktheta::reciprocal::ReciprocalSum;
use walktheta::theta::{
    extract_optimizer, minimize_theta, optimal_scaling, submultiplicativity_check, Method,
    ThetaOptions,
};
use walktheta::walkgen::WalkGenFunction;
use walktheta::{bounds, DenseSymMatrix, Graph};

use crate::input::{GraphSource, InputError};
use crate::{Cli, Command, MethodArg, Suite};

const ALPHA_ORACLE_MAX_N: usize = 20;

pub fn dispatch(cli: Cli) -> Result<bool> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()?;
    let mut out: Box<dyn Write + Send> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let seed = cli.seed;
    let ok = pool.install(|| match cli.command {
        Command::Bounds {
            source,
            alpha_oracle,
            tol,
        } => cmd_bounds(&mut out, &require(&source)?, alpha_oracle, tol),
        Command::Theta {
            source,
            method,
            max_iter,
            tol,
            alpha_oracle,
        } => {
            let opts = ThetaOptions {
                method: match method {
                    MethodArg::Smoothed => Method::Smoothed,
                    MethodArg::Subgradient => Method::Subgradient,
                },
                max_iter,
                stall_tol: tol,
                ..ThetaOptions::default()
            };
            cmd_theta(&mut out, &require(&source)?, &opts, alpha_oracle)
        }
        Command::Verify {
            suite,
            source,
            random,
            tol,
        } => {
            let graphs = source.load()?;
            cmd_verify(&mut out, suite, graphs.as_deref(), random, tol, seed)
        }
        Command::Plot {
            source,
            samples,
            lo,
            hi,
        } => {
            let graphs = require(&source)?;
            let [g] = graphs.as_slice() else {
                return Err(InputError(format!(
                    "plot takes exactly one graph, got {}",
                    graphs.len()
                ))
                .into());
            };
            cmd_plot(&mut out, g, samples, lo, hi)
        }
    })?;
    out.flush()?;
    Ok(ok)
}

fn require(source: &GraphSource) -> Result<Vec<Graph>> {
    match source.load()? {
        Some(g) => Ok(g),
        None => Err(InputError("no input: give a file or --named".into()).into()),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_bounds(out: &mut dyn Write, graphs: &[Graph], alpha_oracle: bool, tol: f64) -> Result<bool> {
    let reports: Vec<_> = graphs
        .par_iter()
        .map(|g| {
            let alpha = if alpha_oracle {
                Some(independence_number(g)?)
            } else {
                None
            };
            report_with_tol(g, alpha, tol)
        })
        .collect::<walktheta::Result<_>>()?;
    let mut ok = true;
    for r in &reports {
        ok &= r.dominance_ok && r.witness_ok != Some(false);
        write_json(out, r)?;
    }
    Ok(ok)
}

fn cmd_theta(
    out: &mut dyn Write,
    graphs: &[Graph],
    opts: &ThetaOptions,
    alpha_oracle: bool,
) -> Result<bool> {
    let estimates: Vec<_> = graphs
        .par_iter()
        .map(|g| {
            let mut est = minimize_theta(g, opts)?;
            if alpha_oracle && g.order() <= ALPHA_ORACLE_MAX_N {
                est.lower = Some(independence_number(g)? as f64);
            }
            Ok(est)
        })
        .collect::<walktheta::Result<_>>()?;
    for e in &estimates {
        write_json(out, e)?;
    }
    Ok(true)
}

fn cmd_plot(
    out: &mut dyn Write,
    g: &Graph,
    samples: usize,
    lo: Option<f64>,
    hi: Option<f64>,
) -> Result<bool> {
    let w = WalkGenFunction::build(&g.adjacency())?;
    let f = w.to_reciprocal()?;
    let (dlo, dhi) = if w.is_zero() {
        (-1.0, 1.0)
    } else {
        f.default_scan_range()
    };
    let (lo, hi) = (lo.unwrap_or(dlo), hi.unwrap_or(dhi));
    if !(lo < hi) {
        return Err(InputError(format!("empty plot range [{lo}, {hi}]")).into());
    }
    match w.spectral_interval() {
        Some((a, b)) => {
            writeln!(out, "# lambda_min_inv,{a}")?;
            writeln!(out, "# lambda_max_inv,{b}")?;
        }
        None => writeln!(out, "# spectral_interval,unbounded")?,
    }
    let m = w.minimize_on_spectral_interval()?;
    if let Some(x) = m.x_star {
        writeln!(out, "# interval_min_x,{x}")?;
    }
    writeln!(out, "# interval_min_value,{}", m.value)?;
    if !f.is_constant() {
        let r = f.verify_duality()?;
        writeln!(out, "# critical_points,{}", r.critical_points.len())?;
        if let Some(c) = r.maximal {
            writeln!(out, "# max_critical_x,{}", c.x)?;
            writeln!(out, "# max_critical_value,{}", c.value)?;
        }
    }
    writeln!(out, "x,w")?;
    for s in w.sample(lo, hi, samples) {
        match s.value {
            Some(v) => writeln!(out, "{},{v}", s.x)?,
            None => writeln!(out, "{},", s.x)?,
        }
    }
    Ok(true)
}

#[derive(Debug, Serialize)]
struct Check {
    suite: &'static str,
    case: String,
    pass: bool,
    detail: serde_json::Value,
}

#[derive(Debug, Serialize)]
struct Summary {
    suite: &'static str,
    passed: usize,
    total: usize,
}

fn cmd_verify(
    out: &mut dyn Write,
    suite: Suite,
    graphs: Option<&[Graph]>,
    random: Option<usize>,
    tol: Option<f64>,
    seed: u64,
) -> Result<bool> {
    let suites = match suite {
        Suite::All => vec![
            Suite::Duality,
            Suite::Scaling,
            Suite::Product,
            Suite::Dominance,
            Suite::Optimizer,
        ],
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(match s {
            Suite::Duality => verify_duality(random.unwrap_or(500), tol, seed)?,
            Suite::Scaling => verify_scaling(graphs, random.unwrap_or(100), tol, seed)?,
            Suite::Product => verify_product(graphs, seed)?,
            Suite::Dominance => verify_dominance(graphs, random.unwrap_or(500), tol, seed)?,
            Suite::Optimizer => verify_optimizer(graphs, random.unwrap_or(100), tol, seed)?,
            Suite::All => unreachable!(),
        });
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    for c in &checks {
        write_json(out, c)?;
    }
    write_json(
        out,
        &Summary {
            suite: "summary",
            passed,
            total: checks.len(),
        },
    )?;
    Ok(passed == checks.len())
}

fn verify_duality(count: usize, tol: Option<f64>, seed: u64) -> Result<Vec<Check>> {
    let tol = tol.unwrap_or(walktheta::reciprocal::DUALITY_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = [
        RateSigns::Positive,
        RateSigns::Negative,
        RateSigns::Zero,
        RateSigns::Mixed,
    ];
    let instances: Vec<(ReciprocalSum, ReciprocalSum)> = (0..count)
        .map(|k| {
            let mixed = random_reciprocal(&mut rng, RateSigns::Mixed);
            (mixed, random_reciprocal(&mut rng, kinds[k % kinds.len()]))
        })
        .collect();
    instances
        .par_iter()
        .enumerate()
        .map(|(k, (f, g))| {
            let r = f.verify_duality()?;
            let gap = match (r.maximal, r.strip_min) {
                (Some(m), Some((_, v))) => (m.value - v).abs() / v.abs().max(1.0),
                _ => f64::INFINITY,
            };
            let inside = match (r.maximal, r.strip) {
                (Some(m), Some((a, b))) => m.x > a && m.x < b,
                _ => false,
            };
            let bounded = r.critical_points.len() <= 2 * (f.order() - 1);
            let found = g.is_constant()
                || !g
                    .enumerate_critical_points(g.default_scan_range())?
                    .is_empty();
            let iff = found == g.has_critical_points();
            Ok(Check {
                suite: "duality",
                case: format!("instance{k}"),
                pass: gap <= tol && inside && r.critical_in_strip == 1 && bounded && iff,
                detail: json!({
                    "order": f.order(),
                    "critical_points": r.critical_points.len(),
                    "relative_gap": gap,
                    "critical_in_strip": r.critical_in_strip,
                    "criterion_matches": iff,
                }),
            })
        })
        .collect()
}

fn verify_scaling(
    graphs: Option<&[Graph]>,
    count: usize,
    tol: Option<f64>,
    seed: u64,
) -> Result<Vec<Check>> {
    let tol = tol.unwrap_or(1e-6);
    let mats = matrices(graphs, count, seed);
    mats.par_iter()
        .filter(|(_, a)| a.frobenius_norm() > 0.0)
        .map(|(case, a)| {
            let s = optimal_scaling(a)?;
            let m = WalkGenFunction::build(a)?.minimize_on_spectral_interval()?;
            let gap = (s.value - m.value).abs();
            Ok(Check {
                suite: "scaling",
                case: case.clone(),
                pass: gap <= tol,
                detail: json!({"t_star": s.t_star, "scaled": s.value, "walkgen": m.value, "gap": gap}),
            })
        })
        .collect()
}

fn verify_product(graphs: Option<&[Graph]>, seed: u64) -> Result<Vec<Check>> {
    let pairs: Vec<(String, Graph, Graph)> = match graphs {
        Some(gs) => gs
            .iter()
            .enumerate()
            .map(|(k, g)| (format!("graph{k}^2"), g.clone(), g.clone()))
            .collect(),
        None => {
            let f = fixtures();
            let get = |n: &str| f.iter().find(|(m, _)| m == n).expect("fixture").1.clone();
            [
                ("C5", "C5"),
                ("K2", "K2"),
                ("P2", "C5"),
                ("P3", "P4"),
                ("C4", "C5"),
                ("petersen", "K2"),
                ("golomb", "P3"),
                ("C5+isolated", "P3"),
                ("kneser_5_2", "C4"),
                ("C7", "C5"),
            ]
            .iter()
            .map(|(a, b)| (format!("{a}x{b}"), get(a), get(b)))
            .collect()
        }
    };
    pairs
        .par_iter()
        .enumerate()
        .map(|(k, (case, g, h))| {
            let r = submultiplicativity_check(g, h, seed.wrapping_add(k as u64))?;
            Ok(Check {
                suite: "product",
                case: case.clone(),
                pass: r.ok,
                detail: serde_json::to_value(&r)?,
            })
        })
        .collect()
}

fn graph_list(graphs: Option<&[Graph]>, count: usize, seed: u64) -> Vec<(String, Graph)> {
    match graphs {
        Some(gs) => gs
            .iter()
            .enumerate()
            .map(|(k, g)| (format!("graph{k}"), g.clone()))
            .collect(),
        None => corpus(seed, count),
    }
}

/// Unweighted adjacencies of the given graphs, or `count` random weighted
/// adjacencies.
fn matrices(graphs: Option<&[Graph]>, count: usize, seed: u64) -> Vec<(String, DenseSymMatrix)> {
    match graphs {
        Some(gs) => gs
            .iter()
            .enumerate()
            .map(|(k, g)| (format!("graph{k}"), g.adjacency()))
            .collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|k| {
                    let g = random_nonempty_graph(&mut rng, 10);
                    (
                        format!("weighted{k}"),
                        random_weighted_adjacency(&mut rng, &g),
                    )
                })
                .collect()
        }
    }
}

fn verify_dominance(
    graphs: Option<&[Graph]>,
    count: usize,
    tol: Option<f64>,
    seed: u64,
) -> Result<Vec<Check>> {
    let tol = tol.unwrap_or(bounds::DOMINANCE_TOL);
    graph_list(graphs, count, seed)
        .par_iter()
        .map(|(case, g)| {
            let w = bounds::walkgen_bound(g)?;
            let l = bounds::laplacian_bound(g)?;
            Ok(Check {
                suite: "dominance",
                case: case.clone(),
                pass: w <= l + tol,
                detail: json!({"walkgen": w, "laplacian": l}),
            })
        })
        .collect()
}

fn verify_optimizer(
    graphs: Option<&[Graph]>,
    count: usize,
    tol: Option<f64>,
    seed: u64,
) -> Result<Vec<Check>> {
    let tol = tol.unwrap_or(1e-7);
    let mut mats: Vec<(String, DenseSymMatrix)> = graph_list(graphs, count, seed)
        .into_iter()
        .map(|(c, g)| (c, g.adjacency()))
        .collect();
    if graphs.is_none() {
        mats.extend(matrices(None, count, seed));
    }
    mats.par_iter()
        .map(|(case, a)| {
            let o = extract_optimizer(a)?;
            Ok(Check {
                suite: "optimizer",
                case: case.clone(),
                pass: o.certified(tol),
                detail: json!({
                    "case": o.case,
                    "norm_sq": o.norm_sq,
                    "residual_orth": o.residual_orth,
                    "residual_sphere": o.residual_sphere,
                }),
            })
        })
        .collect()
}
