//! Weighted walk-generating functions `W_A(x) = Σ <1, P_λ 1> / (1 - λ x)`.

use serde::Serialize;

use crate::reciprocal::ReciprocalSum;
use crate::spectral::{eig_sym, SpectralData};
use crate::{DenseSymMatrix, Error, Result};

/// `‖A‖_F` at or below this counts as the zero matrix.
pub const ZERO_MATRIX_TOL: f64 = 1e-12;
/// Bisection stops once `|W'(x)|` is at most this.
pub const DERIV_TOL: f64 = 1e-10;
/// Interval endpoints may overshoot the spectral interval by this much
/// (relative) before being rejected.
const INTERVAL_SLACK: f64 = 1e-9;
const MAX_BISECTIONS: usize = 400;

/// Minimum distance to a pole at which evaluation is allowed.
pub fn tol_pole(x: f64) -> f64 {
    1e-9 * (1.0 + x.abs())
}

/// One summand `weight / (1 - rate * x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Term {
    pub weight: f64,
    pub rate: f64,
}

/// `W_A` together with the extreme eigenvalues of `A`, which fix the
/// interval `[1/λ_min, 1/λ_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkGenFunction {
    /// Positive weights, strictly ascending rates.
    terms: Vec<Term>,
    n_total: f64,
    lambda_min: f64,
    lambda_max: f64,
    /// Clusters within this distance of `λ_min`/`λ_max` block that endpoint.
    cluster_tol: f64,
    zero: bool,
}

/// A value that may be `+∞` at an interval wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    PosInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

/// Minimum of `W_A` over a closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalMin {
    /// `None` for the zero matrix, whose interval is the whole line.
    pub x_star: Option<f64>,
    pub value: f64,
    pub at_endpoint: bool,
    pub derivative_at_x: f64,
}

impl WalkGenFunction {
    /// Builds `W_A` from the eigendecomposition of `A`.
    pub fn build(a: &DenseSymMatrix) -> Result<Self> {
        Ok(Self::from_spectral(&eig_sym(a)?))
    }

    pub fn from_spectral(s: &SpectralData) -> Self {
        let terms = s
            .default_cluster_weights()
            .into_iter()
            .map(|(rate, weight)| Term { weight, rate })
            .collect();
        Self {
            terms,
            n_total: s.dim() as f64,
            lambda_min: s.lambda_min(),
            lambda_max: s.lambda_max(),
            cluster_tol: s.default_cluster_tol(),
            zero: s.norm <= ZERO_MATRIX_TOL,
        }
    }

    /// Assembles a function from explicit terms. Terms are sorted by rate;
    /// weights must be positive and rates distinct.
    pub fn from_terms(
        mut terms: Vec<Term>,
        n_total: f64,
        lambda_min: f64,
        lambda_max: f64,
    ) -> Result<Self> {
        if terms
            .iter()
            .any(|t| !(t.weight > 0.0) || !t.rate.is_finite())
        {
            return Err(Error::InvalidParams("term weights must be positive".into()));
        }
        terms.sort_by(|a, b| a.rate.total_cmp(&b.rate));
        if terms.windows(2).any(|w| w[0].rate == w[1].rate) {
            return Err(Error::InvalidParams("term rates must be distinct".into()));
        }
        let zero = lambda_min == 0.0 && lambda_max == 0.0;
        Ok(Self {
            terms,
            n_total,
            lambda_min,
            lambda_max,
            cluster_tol: 1e-7 * lambda_max.abs().max(lambda_min.abs()).max(1.0),
            zero,
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn n_total(&self) -> f64 {
        self.n_total
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `[1/λ_min, 1/λ_max]`, or `None` for the zero matrix.
    pub fn spectral_interval(&self) -> Option<(f64, f64)> {
        (!self.zero).then(|| (1.0 / self.lambda_min, 1.0 / self.lambda_max))
    }

    /// Weight of the cluster at eigenvalue 0, if it survived.
    pub fn kernel_weight(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.rate.abs() <= self.cluster_tol)
            .map(|t| t.weight)
            .sum()
    }

    /// Weight of the cluster at `λ_max` (zero when dropped).
    pub fn top_weight(&self) -> f64 {
        self.terms
            .last()
            .filter(|t| (t.rate - self.lambda_max).abs() <= self.cluster_tol)
            .map_or(0.0, |t| t.weight)
    }

    fn check_pole(&self, x: f64) -> Result<()> {
        for t in &self.terms {
            if t.rate != 0.0 {
                let pole = 1.0 / t.rate;
                if (x - pole).abs() <= tol_pole(x) {
                    return Err(Error::Domain(format!(
                        "x = {x} is within {:e} of the pole 1/{} = {pole}",
                        tol_pole(x),
                        t.rate
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_pole(x)?;
        Ok(self.raw_eval(x))
    }

    pub fn eval_deriv(&self, x: f64) -> Result<f64> {
        self.check_pole(x)?;
        Ok(self.raw_deriv(x))
    }

    pub(crate) fn raw_eval(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight / (1.0 - t.rate * x))
            .sum()
    }

    pub(crate) fn raw_deriv(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let d = 1.0 - t.rate * x;
                t.weight * t.rate / (d * d)
            })
            .sum()
    }

    fn end_blocked(&self, end: End) -> bool {
        match end {
            End::Left => self
                .terms
                .first()
                .is_some_and(|t| t.rate - self.lambda_min <= self.cluster_tol),
            End::Right => self
                .terms
                .last()
                .is_some_and(|t| self.lambda_max - t.rate <= self.cluster_tol),
        }
    }

    /// `W_A` at `1/λ_min` or `1/λ_max`; `+∞` when the cluster there carries
    /// weight. The zero matrix has no endpoints and yields `n`.
    pub fn eval_at_endpoint(&self, end: End) -> Extended {
        if self.zero {
            return Extended::Finite(self.n_total);
        }
        if self.end_blocked(end) {
            return Extended::PosInfinity;
        }
        let x = match end {
            End::Left => 1.0 / self.lambda_min,
            End::Right => 1.0 / self.lambda_max,
        };
        Extended::Finite(self.raw_eval(x))
    }

    /// Global minimum over `[1/λ_min, 1/λ_max]`.
    pub fn minimize_on_spectral_interval(&self) -> Result<IntervalMin> {
        match self.spectral_interval() {
            None => Ok(self.zero_min()),
            Some((lo, hi)) => self.minimize_on_subinterval(lo, hi),
        }
    }

    fn zero_min(&self) -> IntervalMin {
        IntervalMin {
            x_star: None,
            value: self.n_total,
            at_endpoint: false,
            derivative_at_x: 0.0,
        }
    }

    /// Minimum over `[lo, hi] ⊆ [1/λ_min, 1/λ_max]` by bisection on the sign
    /// of `W'`, which is increasing there.
    pub fn minimize_on_subinterval(&self, lo: f64, hi: f64) -> Result<IntervalMin> {
        if self.zero {
            return Ok(self.zero_min());
        }
        if !(self.lambda_min < 0.0 && self.lambda_max > 0.0) {
            return Err(Error::Domain(format!(
                "spectrum [{}, {}] does not straddle 0; not a weighted adjacency matrix",
                self.lambda_min, self.lambda_max
            )));
        }
        let (left, right) = (1.0 / self.lambda_min, 1.0 / self.lambda_max);
        let slack = |v: f64| INTERVAL_SLACK * (1.0 + v.abs());
        if !(lo <= hi) || lo < left - slack(left) || hi > right + slack(right) {
            return Err(Error::Domain(format!(
                "[{lo}, {hi}] is not inside the spectral interval [{left}, {right}]"
            )));
        }
        let (mut lo, mut hi) = (lo.max(left), hi.min(right));
        let lo_wall = lo - left <= slack(left) && self.end_blocked(End::Left);
        let hi_wall = right - hi <= slack(right) && self.end_blocked(End::Right);
        if lo_wall {
            lo = left;
        }
        if hi_wall {
            hi = right;
        }

        if !lo_wall {
            let d = self.raw_deriv(lo);
            if d >= 0.0 || lo == hi {
                return Ok(IntervalMin {
                    x_star: Some(lo),
                    value: self.raw_eval(lo),
                    at_endpoint: true,
                    derivative_at_x: d,
                });
            }
        }
        if !hi_wall {
            let d = self.raw_deriv(hi);
            if d <= 0.0 {
                return Ok(IntervalMin {
                    x_star: Some(hi),
                    value: self.raw_eval(hi),
                    at_endpoint: true,
                    derivative_at_x: d,
                });
            }
        }

        // W' < 0 at lo (or -∞ at a wall) and W' > 0 at hi (or +∞)
        let (mut a, mut b) = (lo, hi);
        let mut x = 0.5 * (a + b);
        let mut d = self.raw_deriv(x);
        for _ in 0..MAX_BISECTIONS {
            if d.abs() <= DERIV_TOL {
                break;
            }
            if d < 0.0 {
                a = x;
            } else {
                b = x;
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            x = mid;
            d = self.raw_deriv(x);
        }
        Ok(IntervalMin {
            x_star: Some(x),
            value: self.raw_eval(x),
            at_endpoint: false,
            derivative_at_x: d,
        })
    }

    /// The same function as a reciprocal sum (rates descending).
    pub fn to_reciprocal(&self) -> Result<ReciprocalSum> {
        let mut terms = self.terms.clone();
        terms.reverse();
        ReciprocalSum::new(
            terms.iter().map(|t| t.weight).collect(),
            terms.iter().map(|t| t.rate).collect(),
        )
    }

    /// `k` evenly spaced samples on `[lo, hi]`. Samples within
    /// [`tol_pole`] of a pole carry no value, and a valueless sample is
    /// inserted at every pole lying strictly between two samples.
    pub fn sample(&self, lo: f64, hi: f64, k: usize) -> Vec<Sample> {
        let xs: Vec<f64> = match k {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..k)
                .map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
                .collect(),
        };
        let mut poles: Vec<f64> = self
            .terms
            .iter()
            .filter(|t| t.rate != 0.0)
            .map(|t| 1.0 / t.rate)
            .collect();
        poles.sort_by(f64::total_cmp);

        let mut out = Vec::with_capacity(k + poles.len());
        for (i, &x) in xs.iter().enumerate() {
            if i > 0 {
                let prev = xs[i - 1];
                for &p in poles.iter().filter(|&&p| p > prev && p < x) {
                    if (p - prev).abs() > tol_pole(p) && (x - p).abs() > tol_pole(p) {
                        out.push(Sample { x: p, value: None });
                    }
                }
            }
            out.push(Sample {
                x,
                value: self.eval(x).ok(),
            });
        }
        out
    }
}

/// One plot sample; `value` is `None` at a pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub x: f64,
    pub value: Option<f64>,
}
