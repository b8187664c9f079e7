use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::WeightedAdjacency;
use crate::spectral::{eig_sym, SpectralData};
use crate::walkgen::WalkGenFunction;
use crate::{DenseSymMatrix, Error, Graph, Result};

/// Random shift pairs tested against the factorization identity.
const FACTORIZATION_SAMPLES: usize = 50;
const FACTORIZATION_TOL: f64 = 1e-8;
const SUBMULT_TOL: f64 = 1e-6;
/// Multiples of the extreme shifts added to the search grid.
const GRID_FACTORS: [f64; 4] = [1.0, 1.25, 2.0, 4.0];

/// Rejects shifts inside the open band `(-λ_max, -λ_min)`, where
/// `A + γI` is indefinite.
pub fn validate_shift(spectrum: &SpectralData, gamma: f64) -> Result<()> {
    let (lmin, lmax) = (spectrum.lambda_min(), spectrum.lambda_max());
    let slack = 1e-12 * spectrum.norm.max(1.0);
    if gamma > -lmax + slack && gamma < -lmin - slack {
        return Err(Error::Domain(format!(
            "shift {gamma} lies in the forbidden band ({}, {})",
            -lmax, -lmin
        )));
    }
    Ok(())
}

/// `(A_G + γ_G I) ⊗ (A_H + γ_H I) - γ_G γ_H I`, without shift validation.
pub fn product_matrix(
    a_g: &DenseSymMatrix,
    a_h: &DenseSymMatrix,
    gamma_g: f64,
    gamma_h: f64,
) -> DenseSymMatrix {
    a_g.shifted(gamma_g)
        .kron(&a_h.shifted(gamma_h))
        .shifted(-gamma_g * gamma_h)
}

/// Weighted adjacency matrix on `G ⊠ H` built from weighted adjacency
/// matrices of the factors.
pub fn product_adjacency(
    g: &WeightedAdjacency,
    h: &WeightedAdjacency,
    gamma_g: f64,
    gamma_h: f64,
) -> Result<WeightedAdjacency> {
    let (a_g, a_h) = (g.to_matrix(), h.to_matrix());
    validate_shift(&eig_sym(&a_g)?, gamma_g)?;
    validate_shift(&eig_sym(&a_h)?, gamma_h)?;
    let m = product_matrix(&a_g, &a_h, gamma_g, gamma_h);
    WeightedAdjacency::from_matrix(g.graph().strong_product(h.graph()), &m)
}

/// `(λ_j + γ_G)(μ_k + γ_H) - γ_G γ_H`, ascending.
pub fn product_eigenvalues(
    spec_g: &SpectralData,
    spec_h: &SpectralData,
    gamma_g: f64,
    gamma_h: f64,
) -> Vec<f64> {
    let mut out: Vec<f64> = spec_g
        .eigenvalues
        .iter()
        .flat_map(|&l| {
            spec_h
                .eigenvalues
                .iter()
                .map(move |&m| (l + gamma_g) * (m + gamma_h) - gamma_g * gamma_h)
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Relative gap `|W_prod(-1/(γ_G γ_H)) - W_G(-1/γ_G) W_H(-1/γ_H)|`.
pub fn factorization_gap(
    a_g: &DenseSymMatrix,
    a_h: &DenseSymMatrix,
    gamma_g: f64,
    gamma_h: f64,
) -> Result<f64> {
    let w_g = WalkGenFunction::build(a_g)?;
    let w_h = WalkGenFunction::build(a_h)?;
    let w_p = WalkGenFunction::build(&product_matrix(a_g, a_h, gamma_g, gamma_h))?;
    let rhs = w_g.eval(-1.0 / gamma_g)? * w_h.eval(-1.0 / gamma_h)?;
    let lhs = w_p.eval(-1.0 / (gamma_g * gamma_h))?;
    Ok((lhs - rhs).abs() / (1.0 + rhs.abs()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubmultiplicativityReport {
    /// Smallest `min W` over the product constructions tried.
    pub lhs: f64,
    /// `min W_G * min W_H`.
    pub rhs: f64,
    pub factorization_max_gap: f64,
    pub factorization_checks: usize,
    pub ok: bool,
}

fn shift_grid(w: &WalkGenFunction, spectrum: &SpectralData) -> Vec<f64> {
    if w.is_zero() {
        return vec![1.0, -1.0];
    }
    let mut grid = Vec::new();
    if let Ok(m) = w.minimize_on_spectral_interval() {
        if let Some(x) = m.x_star.filter(|&x| x != 0.0) {
            grid.push(-1.0 / x);
        }
    }
    for f in GRID_FACTORS {
        grid.push(-spectrum.lambda_min() * f);
        grid.push(-spectrum.lambda_max() * f);
    }
    grid.retain(|&g| g != 0.0 && validate_shift(spectrum, g).is_ok());
    grid
}

/// Random valid shift strictly away from the forbidden band.
fn random_shift(rng: &mut ChaCha8Rng, spectrum: &SpectralData, zero: bool) -> f64 {
    let scale = spectrum.norm.max(1.0);
    let offset = rng.gen_range(0.05..3.0) * scale;
    match (zero, rng.gen_bool(0.5)) {
        (true, true) => offset,
        (true, false) => -offset,
        (false, true) => -spectrum.lambda_min() + offset,
        (false, false) => -spectrum.lambda_max() - offset,
    }
}

/// Compares the best product construction against `min W_G * min W_H` and
/// checks the factorization identity at random valid shifts.
pub fn submultiplicativity_check(
    g: &Graph,
    h: &Graph,
    seed: u64,
) -> Result<SubmultiplicativityReport> {
    let (a_g, a_h) = (g.adjacency(), h.adjacency());
    let (s_g, s_h) = (eig_sym(&a_g)?, eig_sym(&a_h)?);
    let (w_g, w_h) = (
        WalkGenFunction::from_spectral(&s_g),
        WalkGenFunction::from_spectral(&s_h),
    );
    let rhs =
        w_g.minimize_on_spectral_interval()?.value * w_h.minimize_on_spectral_interval()?.value;

    let mut lhs = f64::INFINITY;
    for &gg in &shift_grid(&w_g, &s_g) {
        for &gh in &shift_grid(&w_h, &s_h) {
            let p = product_matrix(&a_g, &a_h, gg, gh);
            let m = WalkGenFunction::build(&p)?.minimize_on_spectral_interval()?;
            lhs = lhs.min(m.value);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_gap: f64 = 0.0;
    for _ in 0..FACTORIZATION_SAMPLES {
        let gg = random_shift(&mut rng, &s_g, w_g.is_zero());
        let gh = random_shift(&mut rng, &s_h, w_h.is_zero());
        max_gap = max_gap.max(factorization_gap(&a_g, &a_h, gg, gh)?);
    }
    Ok(SubmultiplicativityReport {
        lhs,
        rhs,
        factorization_max_gap: max_gap,
        factorization_checks: FACTORIZATION_SAMPLES,
        ok: lhs <= rhs + SUBMULT_TOL * (1.0 + rhs) && max_gap <= FACTORIZATION_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::generate_named;

    #[test]
    fn c5_strong_square_reaches_five() {
        let c5 = generate_named("cycle", &[5]).unwrap();
        let r = submultiplicativity_check(&c5, &c5, 1).unwrap();
        assert!((r.rhs - 5.0).abs() < 1e-8);
        assert!(r.lhs <= 5.0 + 1e-6, "{}", r.lhs);
        assert!(r.ok);
    }

    #[test]
    fn forbidden_band_is_rejected() {
        let c5 = WeightedAdjacency::unweighted(generate_named("cycle", &[5]).unwrap());
        assert!(matches!(
            product_adjacency(&c5, &c5, 0.0, 2.0),
            Err(Error::Domain(_))
        ));
        let p = product_adjacency(&c5, &c5, 1.618034, 2.0).unwrap();
        assert_eq!(p.graph().order(), 25);
    }

    #[test]
    fn zero_factors_give_zero_product() {
        let e2 = WeightedAdjacency::unweighted(Graph::empty(2));
        let e3 = WeightedAdjacency::unweighted(Graph::empty(3));
        let p = product_adjacency(&e2, &e3, 0.7, -3.0).unwrap();
        assert!(p.weights().iter().all(|&w| w == 0.0));
        assert_eq!(p.to_matrix().max_abs(), 0.0);
    }

    #[test]
    fn empty_pair_and_k2_pair() {
        let r = submultiplicativity_check(&Graph::empty(2), &Graph::empty(3), 0).unwrap();
        assert_eq!(r.rhs, 6.0);
        assert!(r.ok);
        let k2 = generate_named("complete", &[2]).unwrap();
        let r = submultiplicativity_check(&k2, &k2, 0).unwrap();
        assert!(r.lhs <= 1.0 + 1e-6 && r.ok);
    }

    #[test]
    fn eigenvalue_formula_matches_dense() {
        let a = generate_named("path", &[3]).unwrap().adjacency();
        let b = generate_named("cycle", &[4]).unwrap().adjacency();
        let (sa, sb) = (eig_sym(&a).unwrap(), eig_sym(&b).unwrap());
        let formula = product_eigenvalues(&sa, &sb, 1.5, 2.5);
        let dense = eig_sym(&product_matrix(&a, &b, 1.5, 2.5)).unwrap();
        for (x, y) in formula.iter().zip(&dense.eigenvalues) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}
