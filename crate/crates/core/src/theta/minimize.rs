use std::collections::VecDeque;

use serde::Serialize;

use super::{penalized_matrix, scaling::optimal_scaling};
use crate::linalg::dot;
use crate::spectral::eig_sym;
use crate::{Graph, Result};

/// Smoothing parameters for [`Method::Smoothed`], coarsest first.
const MU_SCHEDULE: [f64; 6] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
const LBFGS_MEMORY: usize = 10;
const GRAD_TOL: f64 = 1e-10;
const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 60;
/// Consecutive negligible decreases that end a smoothing stage.
const FLAT_STEPS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// L-BFGS on `μ log Σ exp(λ_i / μ)` with `μ` driven to zero.
    #[default]
    Smoothed,
    /// Projected-free subgradient descent with step `c / √k`.
    Subgradient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaOptions {
    pub method: Method,
    /// Cap on iterations (subgradient steps, or L-BFGS steps over all stages).
    pub max_iter: usize,
    /// Subgradient stall test: stop once the best value improved by less
    /// than `stall_tol` over the last `stall_window` iterations.
    pub stall_window: usize,
    pub stall_tol: f64,
}

impl Default for ThetaOptions {
    fn default() -> Self {
        Self {
            method: Method::Smoothed,
            max_iter: 5000,
            stall_window: 200,
            stall_tol: 1e-6,
        }
    }
}

/// Upper bound on `ϑ(G)` from the best weights found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaEstimate {
    pub upper: f64,
    /// Filled in by callers that know `α(G)`.
    pub lower: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub weights: Vec<f64>,
    /// `λ_max(J - A)` at every weight vector evaluated, in order.
    #[serde(skip)]
    pub trace: Vec<f64>,
}

impl ThetaEstimate {
    /// Best value seen after each evaluation; non-increasing.
    pub fn best_so_far(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.trace
            .iter()
            .map(|&v| {
                best = best.min(v);
                best
            })
            .collect()
    }
}

/// Tracks every evaluation and the best weights.
struct Tracker<'a> {
    graph: &'a Graph,
    best: f64,
    best_w: Vec<f64>,
    trace: Vec<f64>,
}

struct Eval {
    lambda_max: f64,
    smoothed: f64,
    grad: Vec<f64>,
}

impl<'a> Tracker<'a> {
    fn new(graph: &'a Graph) -> Self {
        Self {
            graph,
            best: f64::INFINITY,
            best_w: vec![0.0; graph.edge_count()],
            trace: Vec::new(),
        }
    }

    /// Evaluates `λ_max(J - A(w))` and, for `mu > 0`, the smoothed maximum
    /// with its gradient. With `mu == 0` the gradient is a subgradient
    /// averaged over the top eigenvalue cluster.
    fn eval(&mut self, w: &[f64], mu: f64) -> Result<Eval> {
        let s = eig_sym(&penalized_matrix(self.graph, w))?;
        let lmax = s.lambda_max();
        self.trace.push(lmax);
        if lmax < self.best {
            self.best = lmax;
            self.best_w = w.to_vec();
        }
        let probs: Vec<f64> = if mu > 0.0 {
            s.eigenvalues
                .iter()
                .map(|&l| ((l - lmax) / mu).exp())
                .collect()
        } else {
            let tol = s.default_cluster_tol();
            s.eigenvalues
                .iter()
                .map(|&l| if lmax - l <= tol { 1.0 } else { 0.0 })
                .collect()
        };
        let z: f64 = probs.iter().sum();
        let smoothed = if mu > 0.0 { lmax + mu * z.ln() } else { lmax };
        let grad = self
            .graph
            .edges()
            .iter()
            .map(|&(i, j)| {
                -2.0 * probs
                    .iter()
                    .zip(&s.eigenvectors)
                    .filter(|(p, _)| **p > 0.0)
                    .map(|(p, u)| p * u[i] * u[j])
                    .sum::<f64>()
                    / z
            })
            .collect();
        Ok(Eval {
            lambda_max: lmax,
            smoothed,
            grad,
        })
    }
}

/// Minimizes `λ_max(J - A)` over edge weights of `g`.
pub fn minimize_theta(g: &Graph, opts: &ThetaOptions) -> Result<ThetaEstimate> {
    let mut tracker = Tracker::new(g);
    // A = 0 gives λ_max(J) = n exactly, so the estimate never exceeds n
    tracker.trace.push(g.order() as f64);
    tracker.best = g.order() as f64;
    if g.edge_count() == 0 {
        return Ok(finish(tracker, 0, true));
    }
    let (iterations, converged) = match opts.method {
        Method::Smoothed => smoothed(&mut tracker, opts)?,
        Method::Subgradient => subgradient(&mut tracker, opts)?,
    };
    Ok(finish(tracker, iterations, converged))
}

fn finish(t: Tracker<'_>, iterations: usize, converged: bool) -> ThetaEstimate {
    ThetaEstimate {
        upper: t.best,
        lower: None,
        iterations,
        converged,
        weights: t.best_w,
        trace: t.trace,
    }
}

fn subgradient(t: &mut Tracker<'_>, opts: &ThetaOptions) -> Result<(usize, bool)> {
    let mut w = vec![1.0; t.graph.edge_count()];
    let mut c = None;
    let mut history: Vec<f64> = Vec::new();
    for k in 1..=opts.max_iter {
        let e = t.eval(&w, 0.0)?;
        history.push(t.best);
        let gnorm = dot(&e.grad, &e.grad).sqrt();
        if gnorm == 0.0 {
            return Ok((k, true));
        }
        let c = *c.get_or_insert(t.graph.order() as f64 / gnorm);
        let step = c / (k as f64).sqrt() / gnorm;
        for (wi, gi) in w.iter_mut().zip(&e.grad) {
            *wi -= step * gi;
        }
        if k > opts.stall_window {
            let past = history[k - 1 - opts.stall_window];
            if past - t.best < opts.stall_tol {
                return Ok((k, true));
            }
        }
    }
    Ok((opts.max_iter, false))
}

fn smoothed(t: &mut Tracker<'_>, opts: &ThetaOptions) -> Result<(usize, bool)> {
    let ones = super::weighted_matrix(t.graph, &vec![1.0; t.graph.edge_count()]);
    let scale = optimal_scaling(&ones)?.t_star;
    let mut w = vec![scale; t.graph.edge_count()];
    let per_stage = (opts.max_iter / MU_SCHEDULE.len()).max(1);
    let mut used = 0;
    let mut converged = false;
    for &mu in &MU_SCHEDULE {
        let budget = per_stage.min(opts.max_iter - used);
        if budget == 0 {
            break;
        }
        let (x, steps, done) = lbfgs(t, w, mu, budget)?;
        w = x;
        used += steps;
        converged = done;
    }
    t.eval(&t.best_w.clone(), 0.0)?;
    Ok((used, converged))
}

/// L-BFGS with Armijo backtracking. Returns the final point, the number of
/// steps taken and whether a stopping test (rather than the budget) ended it.
fn lbfgs(
    t: &mut Tracker<'_>,
    mut x: Vec<f64>,
    mu: f64,
    budget: usize,
) -> Result<(Vec<f64>, usize, bool)> {
    let mut memory: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut cur = t.eval(&x, mu)?;
    let mut flat = 0;
    for step in 0..budget {
        let gmax = cur.grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        if gmax <= GRAD_TOL {
            return Ok((x, step, true));
        }
        let mut d = two_loop(&memory, &cur.grad);
        let mut slope = dot(&cur.grad, &d);
        if slope >= 0.0 {
            memory.clear();
            d = cur.grad.iter().map(|g| -g).collect();
            slope = -dot(&cur.grad, &cur.grad);
        }
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + alpha * di).collect();
            let e = t.eval(&trial, mu)?;
            if e.smoothed <= cur.smoothed + ARMIJO * alpha * slope {
                accepted = Some((trial, e));
                break;
            }
            alpha *= 0.5;
        }
        let Some((next, e)) = accepted else {
            return Ok((x, step, true));
        };
        let s: Vec<f64> = next.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = e.grad.iter().zip(&cur.grad).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            if memory.len() == LBFGS_MEMORY {
                memory.pop_front();
            }
            memory.push_back((s, y, 1.0 / sy));
        }
        let decrease = cur.smoothed - e.smoothed;
        flat = if decrease <= 1e-15 * cur.smoothed.abs().max(1.0) {
            flat + 1
        } else {
            0
        };
        debug_assert!(e.lambda_max.is_finite());
        x = next;
        cur = e;
        if flat >= FLAT_STEPS {
            return Ok((x, step + 1, true));
        }
    }
    Ok((x, budget, false))
}

fn two_loop(memory: &VecDeque<(Vec<f64>, Vec<f64>, f64)>, grad: &[f64]) -> Vec<f64> {
    let mut q = grad.to_vec();
    let mut alphas = Vec::with_capacity(memory.len());
    for (s, y, rho) in memory.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    if let Some((s, y, _)) = memory.back() {
        let gamma = dot(s, y) / dot(y, y);
        q.iter_mut().for_each(|v| *v *= gamma);
    }
    for ((s, y, rho), a) in memory.iter().zip(alphas.iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    q.iter_mut().for_each(|v| *v = -*v);
    q
}
