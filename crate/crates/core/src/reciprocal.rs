//! Sums of linear reciprocals `f(x) = Σ α_i / (1 - β_i x)` with `α_i > 0`:
//! critical points, the central strip `(1/β_min, 1/β_max)`, and the duality
//! between the largest critical value and the minimum over the strip.

use serde::Serialize;

use crate::{Error, Result};

/// Samples per pole-free interval in [`ReciprocalSum::enumerate_critical_points`].
pub const SCAN_SAMPLES: usize = 10_000;
/// Relative agreement required between the largest critical value and the
/// strip minimum.
pub const DUALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReciprocalSum {
    alphas: Vec<f64>,
    /// Strictly descending.
    betas: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Curvature {
    Min,
    Max,
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub x: f64,
    pub value: f64,
    pub curvature: Curvature,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalReport {
    pub critical_points: Vec<CriticalPoint>,
    /// The critical point with the largest value.
    pub maximal: Option<CriticalPoint>,
    pub strip: Option<(f64, f64)>,
    /// `(x, f(x))` minimizing `f` over the closed strip.
    pub strip_min: Option<(f64, f64)>,
    pub critical_in_strip: usize,
    pub duality_holds: bool,
}

impl ReciprocalSum {
    /// Requires equal lengths, positive alphas and strictly descending betas.
    pub fn new(alphas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if alphas.len() != betas.len() || alphas.is_empty() {
            return Err(Error::InvalidParams(
                "alphas and betas must be non-empty and of equal length".into(),
            ));
        }
        if alphas.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(Error::InvalidParams("alphas must be positive".into()));
        }
        if betas.iter().any(|b| !b.is_finite()) || betas.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParams(
                "betas must be finite and strictly descending".into(),
            ));
        }
        Ok(Self { alphas, betas })
    }

    /// Sorts the pairs by descending beta first.
    pub fn from_unsorted(pairs: &[(f64, f64)]) -> Result<Self> {
        let mut v = pairs.to_vec();
        v.sort_by(|a, b| b.1.total_cmp(&a.1));
        Self::new(
            v.iter().map(|p| p.0).collect(),
            v.iter().map(|p| p.1).collect(),
        )
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn order(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_constant(&self) -> bool {
        self.betas == [0.0]
    }

    /// Limit of `f` at `±∞`: the alpha paired with a zero beta, else 0.
    pub fn limit_at_infinity(&self) -> f64 {
        self.betas
            .iter()
            .position(|&b| b == 0.0)
            .map_or(0.0, |i| self.alphas[i])
    }

    fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.alphas.iter().copied().zip(self.betas.iter().copied())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.pairs().map(|(a, b)| a / (1.0 - b * x)).sum()
    }

    pub fn deriv(&self, x: f64) -> f64 {
        self.pairs()
            .map(|(a, b)| {
                let d = 1.0 - b * x;
                a * b / (d * d)
            })
            .sum()
    }

    pub fn second_deriv(&self, x: f64) -> f64 {
        self.pairs()
            .map(|(a, b)| {
                let d = 1.0 - b * x;
                2.0 * a * b * b / (d * d * d)
            })
            .sum()
    }

    /// Finite poles `1/β`, ascending.
    pub fn poles(&self) -> Vec<f64> {
        let mut p: Vec<f64> = self
            .betas
            .iter()
            .filter(|&&b| b != 0.0)
            .map(|&b| 1.0 / b)
            .collect();
        p.sort_by(f64::total_cmp);
        p
    }

    /// True iff betas of both signs occur, or `f` is constant.
    pub fn has_critical_points(&self) -> bool {
        let pos = self.betas.iter().any(|&b| b > 0.0);
        let neg = self.betas.iter().any(|&b| b < 0.0);
        (pos && neg) || self.is_constant()
    }

    /// `(1/β_min, 1/β_max)` when `β_min < 0 < β_max`.
    pub fn central_strip(&self) -> Option<(f64, f64)> {
        let (bmax, bmin) = (self.betas[0], *self.betas.last().expect("non-empty"));
        (bmin < 0.0 && bmax > 0.0).then(|| (1.0 / bmin, 1.0 / bmax))
    }

    /// `[min(p_min, 0) * 1.5 - 1, max(p_max, 0) * 1.5 + 1]` over the finite
    /// poles `p`.
    pub fn default_scan_range(&self) -> (f64, f64) {
        let poles = self.poles();
        let lo = poles.first().copied().unwrap_or(0.0).min(0.0);
        let hi = poles.last().copied().unwrap_or(0.0).max(0.0);
        (lo * 1.5 - 1.0, hi * 1.5 + 1.0)
    }

    /// Every sign change of `f'` on the real line, refined by bisection.
    ///
    /// Inside `range` each pole-free interval is sampled on a grid clustered
    /// toward the poles; between consecutive sign changes of `f''` the
    /// derivative is monotone, so each such piece holds at most one root.
    /// Beyond `range` the substitution `t = 1/x` turns `f'(x) = 0` into
    /// `Σ αβ / (t - β)^2 = 0` on a bounded `t` interval, scanned the same
    /// way. Constant functions report no points.
    pub fn enumerate_critical_points(&self, range: (f64, f64)) -> Result<Vec<CriticalPoint>> {
        let poles = self.poles();
        let (lo, hi) = range;
        if !(lo < 0.0 && hi > 0.0)
            || poles.first().is_some_and(|&p| p <= lo)
            || poles.last().is_some_and(|&p| p >= hi)
        {
            return Err(Error::Domain(format!(
                "scan range [{lo}, {hi}] must contain 0 and every pole {poles:?}"
            )));
        }
        if self.is_constant() {
            return Ok(Vec::new());
        }

        let mut xs = Vec::new();
        let mut cuts = vec![lo];
        cuts.extend(&poles);
        cuts.push(hi);
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let closed_a = a == lo;
            let closed_b = b == hi;
            xs.extend(scan_roots(
                |x| self.deriv(x),
                |x| self.second_deriv(x),
                a,
                b,
                closed_a,
                closed_b,
            ));
        }

        // tails: x = 1/t with t in (1/lo, 0) and (0, 1/hi)
        let g = |t: f64| -> f64 {
            self.pairs()
                .map(|(a, b)| {
                    let d = t - b;
                    a * b / (d * d)
                })
                .sum()
        };
        let dg = |t: f64| -> f64 {
            self.pairs()
                .map(|(a, b)| {
                    let d = t - b;
                    -2.0 * a * b / (d * d * d)
                })
                .sum()
        };
        for (a, b) in [(1.0 / lo, 0.0), (0.0, 1.0 / hi)] {
            for t in scan_roots(g, dg, a, b, false, false) {
                let x = 1.0 / t;
                if x < lo || x > hi {
                    xs.push(x);
                }
            }
        }

        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        Ok(xs
            .into_iter()
            .map(|x| {
                let c = self.second_deriv(x);
                CriticalPoint {
                    x,
                    value: self.eval(x),
                    curvature: if c > 0.0 {
                        Curvature::Min
                    } else if c < 0.0 {
                        Curvature::Max
                    } else {
                        Curvature::Flat
                    },
                }
            })
            .collect())
    }

    /// Minimum of `f` over the closed central strip. `f` tends to `+∞` at
    /// both walls and `f'` increases across the strip.
    pub fn strip_minimum(&self) -> Option<(f64, f64)> {
        let (mut a, mut b) = self.central_strip()?;
        let mut x = 0.5 * (a + b);
        for _ in 0..400 {
            let d = self.deriv(x);
            if d == 0.0 {
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
        }
        Some((x, self.eval(x)))
    }

    /// Checks that the largest critical value equals the strip minimum, that
    /// the maximal critical point lies strictly inside the strip, and that it
    /// is the only critical point there, a local minimum.
    pub fn verify_duality(&self) -> Result<CriticalReport> {
        if self.is_constant() {
            return Ok(CriticalReport {
                critical_points: Vec::new(),
                maximal: None,
                strip: None,
                strip_min: None,
                critical_in_strip: 0,
                duality_holds: true,
            });
        }
        let critical_points = self.enumerate_critical_points(self.default_scan_range())?;
        let maximal = critical_points
            .iter()
            .copied()
            .max_by(|a, b| a.value.total_cmp(&b.value));
        let strip = self.central_strip();
        let strip_min = self.strip_minimum();
        let in_strip: Vec<&CriticalPoint> = match strip {
            Some((a, b)) => critical_points
                .iter()
                .filter(|c| c.x > a && c.x < b)
                .collect(),
            None => Vec::new(),
        };
        let duality_holds = match (maximal, strip, strip_min) {
            (None, None, _) => !self.has_critical_points(),
            (Some(m), Some((a, b)), Some((_, v))) => {
                (m.value - v).abs() <= DUALITY_TOL * (1.0 + v.abs())
                    && m.x > a
                    && m.x < b
                    && in_strip.len() == 1
                    && in_strip[0].curvature == Curvature::Min
            }
            _ => false,
        };
        Ok(CriticalReport {
            critical_in_strip: in_strip.len(),
            critical_points,
            maximal,
            strip,
            strip_min,
            duality_holds,
        })
    }
}

/// Roots of `f` on `(a, b)` (endpoints included when `closed_*`), given its
/// derivative `df`.
fn scan_roots<F, D>(f: F, df: D, a: f64, b: f64, closed_a: bool, closed_b: bool) -> Vec<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let m = SCAN_SAMPLES;
    // cosine spacing clusters samples toward both ends
    let mut grid: Vec<f64> = (1..=m)
        .map(|i| {
            let u = i as f64 / (m + 1) as f64;
            a + (b - a) * 0.5 * (1.0 - (std::f64::consts::PI * u).cos())
        })
        .collect();
    if closed_a {
        grid.insert(0, a);
    }
    if closed_b {
        grid.push(b);
    }
    grid.dedup();

    // breakpoints where df changes sign split the grid into monotone pieces
    let mut knots = vec![grid[0]];
    let mut prev = df(grid[0]);
    for w in grid.windows(2) {
        let cur = df(w[1]);
        if prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0) {
            knots.push(bisect(&df, w[0], w[1]));
        }
        if cur != 0.0 {
            prev = cur;
        }
        knots.push(w[1]);
    }

    let mut roots = Vec::new();
    let mut fa = f(knots[0]);
    if fa == 0.0 {
        roots.push(knots[0]);
    }
    for w in knots.windows(2) {
        let fb = f(w[1]);
        if fb == 0.0 {
            roots.push(w[1]);
        } else if fa != 0.0 && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect(&f, w[0], w[1]));
        }
        fa = fb;
    }
    roots
}

/// Bisection on a bracketed sign change down to floating-point resolution.
fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let neg_at_a = f(a) < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == neg_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
