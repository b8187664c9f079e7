//! Hoffman-type upper bounds on the Lovász number of a graph.

use serde::Serialize;

use crate::spectral::eig_sym;
use crate::walkgen::WalkGenFunction;
use crate::{Graph, Result};

/// Slack for the dominance and witness comparisons.
pub const DOMINANCE_TOL: f64 = 1e-8;
/// Slack on the `<= 1` condition of the closed-form bound.
pub const CONDITION_TOL: f64 = 1e-9;
/// `n - W₁` at or below this fraction of `n` is treated as zero.
const FULL_WEIGHT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm {
    pub value: Option<f64>,
    pub condition: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub hoffman: Option<f64>,
    pub walkgen: f64,
    pub closed_form: Option<ClosedForm>,
    pub laplacian: f64,
}

/// All bounds for one graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub bounds: Bounds,
    pub dominance_ok: bool,
    pub alpha_witness: Option<usize>,
    /// Every bound is at least the supplied witness (minus tolerance).
    #[serde(skip)]
    pub witness_ok: Option<bool>,
}

/// `(λ_1, λ_n, <1, P_λ1 1>)` of the unweighted adjacency matrix.
fn extreme_spectrum(g: &Graph) -> Result<(f64, f64, f64, WalkGenFunction)> {
    let s = eig_sym(&g.adjacency())?;
    let w = WalkGenFunction::from_spectral(&s);
    Ok((s.lambda_max(), s.lambda_min(), w.top_weight(), w))
}

/// `-λ_n n / (λ_1 - λ_n)` for regular graphs with at least one edge.
pub fn hoffman_regular(g: &Graph) -> Result<Option<f64>> {
    if g.edge_count() == 0 || g.regular_degree().is_none() {
        return Ok(None);
    }
    let s = eig_sym(&g.adjacency())?;
    let (l1, ln) = (s.lambda_max(), s.lambda_min());
    Ok(Some(-ln * g.order() as f64 / (l1 - ln)))
}

/// `min W(x)` over `[1/λ_n, 0]` for the unweighted adjacency; `n` when the
/// graph has no edges.
pub fn walkgen_bound(g: &Graph) -> Result<f64> {
    if g.edge_count() == 0 {
        return Ok(g.order() as f64);
    }
    let w = WalkGenFunction::build(&g.adjacency())?;
    Ok(w.minimize_on_subinterval(1.0 / w.lambda_min(), 0.0)?.value)
}

/// `W₁/(1 - λ_1 x) + (n - W₁)/(1 - λ_n x)`, the two-cluster relaxation of
/// `W` on `[1/λ_n, 0]` with `W₁ = <1, P_λ1 1>`.
pub fn two_term_relaxation(n: f64, l1: f64, ln: f64, w1: f64, x: f64) -> f64 {
    let rest = n - w1;
    let tail = if rest == 0.0 {
        0.0
    } else {
        rest / (1.0 - ln * x)
    };
    w1 / (1.0 - l1 * x) + tail
}

/// Minimizer of [`two_term_relaxation`] on `[1/λ_n, 0]` when the condition
/// `-λ_n (n - W₁) / (λ_1 W₁) <= 1` holds.
pub fn closed_form_x(n: f64, l1: f64, ln: f64, w1: f64) -> f64 {
    let s = (-ln * (n - w1) / (l1 * w1)).max(0.0).sqrt();
    -(1.0 - s) / (-ln + l1 * s)
}

/// Closed-form bound for graphs with at least one edge; `None` otherwise.
/// The value is absent when the condition fails.
pub fn closed_form_bound(g: &Graph) -> Result<Option<ClosedForm>> {
    if g.edge_count() == 0 {
        return Ok(None);
    }
    let (l1, ln, w1, _) = extreme_spectrum(g)?;
    let n = g.order() as f64;
    // a top cluster carrying all of n up to rounding is exactly the regular case
    let w1 = if n - w1 <= FULL_WEIGHT_TOL * n { n } else { w1 };
    let ratio = -ln * (n - w1) / (l1 * w1);
    let condition = ratio <= 1.0 + CONDITION_TOL;
    let value = condition.then(|| {
        let x = closed_form_x(n, l1, ln, w1);
        two_term_relaxation(n, l1, ln, w1, x)
    });
    Ok(Some(ClosedForm { value, condition }))
}

/// The same quantity written out as
/// `(-n λ_n / (λ_1 - λ_n)) (W₁/n) (1 + sqrt(λ_1 (n - W₁) / (-λ_n W₁)))^2`.
pub fn closed_form_expression(n: f64, l1: f64, ln: f64, w1: f64) -> f64 {
    let root = (l1 * (n - w1) / (-ln * w1)).max(0.0).sqrt();
    (-n * ln / (l1 - ln)) * (w1 / n) * (1.0 + root).powi(2)
}

/// `n (1 - δ/μ_1)`; `n` for edgeless graphs.
pub fn laplacian_bound(g: &Graph) -> Result<f64> {
    let n = g.order() as f64;
    if g.edge_count() == 0 {
        return Ok(n);
    }
    let mu1 = eig_sym(&g.laplacian())?.lambda_max();
    Ok(n * (1.0 - g.min_degree() as f64 / mu1))
}

pub fn report(g: &Graph, known_alpha: Option<usize>) -> Result<BoundReport> {
    report_with_tol(g, known_alpha, DOMINANCE_TOL)
}

/// [`report`] with an explicit tolerance for the dominance and witness
/// comparisons.
pub fn report_with_tol(g: &Graph, known_alpha: Option<usize>, tol: f64) -> Result<BoundReport> {
    let bounds = Bounds {
        hoffman: hoffman_regular(g)?,
        walkgen: walkgen_bound(g)?,
        closed_form: closed_form_bound(g)?,
        laplacian: laplacian_bound(g)?,
    };
    let dominance_ok = bounds.walkgen <= bounds.laplacian + tol;
    let witness_ok = known_alpha.map(|alpha| {
        let a = alpha as f64 - tol;
        let cf = bounds.closed_form.and_then(|c| c.value);
        bounds.walkgen >= a
            && bounds.laplacian >= a
            && bounds.hoffman.is_none_or(|h| h >= a)
            && cf.is_none_or(|c| c >= a)
    });
    Ok(BoundReport {
        n: g.order(),
        bounds,
        dominance_ok,
        alpha_witness: known_alpha,
        witness_ok,
    })
}
