//! Closed-form results: the small-nonlinearity population formula in γ,
//! the four-band ordering classifier, and the soft-excitation oscillator's
//! confluent-hypergeometric generating function.

use crate::error::{Error, Result};
use crate::recurrence::PopulationVector;

/// Ordering bands of the three lowest populations as a function of
/// γ = ε₂/(2ε₁), separated by γ = 1/6, 1/3, 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    /// γ ≤ 1/6: ρ₀ ≥ ρ₁ ≥ ρ₂
    A,
    /// 1/6 ≤ γ ≤ 1/3: ρ₀ ≥ ρ₂ ≥ ρ₁
    B,
    /// 1/3 ≤ γ ≤ 1/2: ρ₂ ≥ ρ₀ ≥ ρ₁
    C,
    /// γ ≥ 1/2: ρ₂ ≥ ρ₁ ≥ ρ₀
    D,
}

impl Band {
    pub fn letter(&self) -> char {
        match self {
            Band::A => 'A',
            Band::B => 'B',
            Band::C => 'C',
            Band::D => 'D',
        }
    }

    /// Level indices from most to least populated inside the open band.
    pub fn canonical_ordering(&self) -> [usize; 3] {
        match self {
            Band::A => [0, 1, 2],
            Band::B => [0, 2, 1],
            Band::C => [2, 0, 1],
            Band::D => [2, 1, 0],
        }
    }
}

/// Classification of one γ value. The band intervals share their
/// endpoints; a boundary value is assigned to the lower band with the
/// tied pair reported explicitly instead of forcing a unique band.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeLabel {
    pub band: Band,
    /// Level indices from largest to smallest population.
    pub ordering: [usize; 3],
    /// Adjacent level pairs with equal populations.
    pub ties: Vec<(usize, usize)>,
}

/// Small-nonlinearity stationary populations
/// (ρ₀, ρ₁, ρ₂) = (1, 2γ, 6γ²+γ) / (6γ²+3γ+1).
pub fn populations_gamma(gamma: f64) -> [f64; 3] {
    let denom = 6.0 * gamma * gamma + 3.0 * gamma + 1.0;
    [
        1.0 / denom,
        2.0 * gamma / denom,
        (6.0 * gamma * gamma + gamma) / denom,
    ]
}

const BAND_EDGES: [f64; 3] = [1.0 / 6.0, 1.0 / 3.0, 0.5];
const TIE_TOL: f64 = 1e-12;

pub fn classify(gamma: f64) -> RegimeLabel {
    let band = if gamma <= BAND_EDGES[0] {
        Band::A
    } else if gamma <= BAND_EDGES[1] {
        Band::B
    } else if gamma <= BAND_EDGES[2] {
        Band::C
    } else {
        Band::D
    };
    let rho = populations_gamma(gamma);
    let mut ordering = band.canonical_ordering();
    ordering.sort_by(|&i, &j| rho[j].partial_cmp(&rho[i]).unwrap());
    let mut ties = Vec::new();
    for w in 0..2 {
        let (i, j) = (ordering[w], ordering[w + 1]);
        if (rho[i] - rho[j]).abs() <= TIE_TOL {
            ties.push((i.min(j), i.max(j)));
        }
    }
    RegimeLabel {
        band,
        ordering,
        ties,
    }
}

/// Confluent hypergeometric series F(1, b, x) = Σ_k x^k / (b)_k,
/// terminated when a term falls below 1e−16 relative.
pub fn kummer_unit_a(b: f64, x: f64) -> Result<f64> {
    const MAX_TERMS: usize = 1_000_000;
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for k in 0..MAX_TERMS {
        term *= x / (b + k as f64);
        sum += term;
        if term.abs() <= 1e-16 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { terms: MAX_TERMS })
}

/// Soft-oscillator generating function G(u) = F(1, ν, ν(1+u)) / F(1, ν, 2ν).
pub fn soft_generating(nu: f64, u: f64) -> Result<f64> {
    if nu <= 0.0 {
        return Err(Error::InvalidParameter("nu must be > 0".into()));
    }
    Ok(kummer_unit_a(nu, nu * (1.0 + u))? / kummer_unit_a(nu, 2.0 * nu)?)
}

/// Taylor coefficients of the soft generating function around u = 0:
/// ρₙ ∝ Σ_{m≥n} (νᵐ/(ν)_m)·C(m,n), normalized to unit sum.
pub fn soft_populations(nu: f64, n_max: usize) -> Result<PopulationVector> {
    if nu <= 0.0 {
        return Err(Error::InvalidParameter("nu must be > 0".into()));
    }
    if n_max < 2 {
        return Err(Error::InvalidParameter("n_max must be >= 2".into()));
    }
    const MAX_TERMS: usize = 1_000_000;
    let denom = kummer_unit_a(nu, 2.0 * nu)?;
    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        // weight = nu^m / (nu)_m, binom = C(m, n), both updated as m grows
        let mut weight = 1.0f64;
        for m in 0..n {
            weight *= nu / (nu + m as f64);
        }
        let mut binom = 1.0f64;
        let mut sum = 0.0f64;
        let mut converged = false;
        for m in n..MAX_TERMS {
            let term = weight * binom;
            sum += term;
            if m > n + 5 && term.abs() <= 1e-18 * sum.abs() {
                converged = true;
                break;
            }
            weight *= nu / (nu + m as f64);
            binom *= (m + 1) as f64 / (m + 1 - n) as f64;
        }
        if !converged {
            return Err(Error::NonConvergence { terms: MAX_TERMS });
        }
        values.push(sum / denom);
    }
    let total: f64 = values.iter().sum();
    PopulationVector::new(values.iter().map(|v| v / total).collect(), true)
}

/// Maximum absolute residual of the soft-oscillator stationary ODE
/// (1+u)G'' − νuG' − νG over the given points, using a truncated
/// population vector for G.
pub fn soft_ode_residual(pop: &PopulationVector, nu: f64, u_points: &[f64]) -> f64 {
    let rho = pop.values();
    let mut worst = 0.0f64;
    for &u in u_points {
        let mut g = 0.0;
        let mut g1 = 0.0;
        let mut g2 = 0.0;
        for (k, &r) in rho.iter().enumerate() {
            let kf = k as f64;
            g += r * u.powi(k as i32);
            if k >= 1 {
                g1 += r * kf * u.powi(k as i32 - 1);
            }
            if k >= 2 {
                g2 += r * kf * (kf - 1.0) * u.powi(k as i32 - 2);
            }
        }
        worst = worst.max(((1.0 + u) * g2 - nu * u * g1 - nu * g).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn population_formula_values() {
        assert_eq!(populations_gamma(0.0), [1.0, 0.0, 0.0]);
        let at_sixth = populations_gamma(1.0 / 6.0);
        assert!((at_sixth[0] - 0.6).abs() < 1e-15);
        assert!((at_sixth[1] - 0.2).abs() < 1e-15);
        assert!((at_sixth[2] - 0.2).abs() < 1e-15);
        let at_third = populations_gamma(1.0 / 3.0);
        assert!((at_third[0] - 0.375).abs() < 1e-15);
        assert!((at_third[1] - 0.25).abs() < 1e-15);
        assert!((at_third[2] - 0.375).abs() < 1e-15);
        let at_half = populations_gamma(0.5);
        assert!((at_half[0] - 0.25).abs() < 1e-15);
        assert!((at_half[1] - 0.25).abs() < 1e-15);
        assert!((at_half[2] - 0.5).abs() < 1e-15);
        // large-gamma asymptote (0, 0, 1)
        let far = populations_gamma(1e8);
        assert!(far[0] < 1e-15 && far[1] < 1e-7 && (far[2] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn populations_sum_to_one() {
        let mut gamma = 0.0;
        while gamma <= 1000.0 {
            let p = populations_gamma(gamma);
            assert!((p[0] + p[1] + p[2] - 1.0).abs() <= 1e-15);
            gamma += 0.37;
        }
    }

    #[test]
    fn monotonicity_in_gamma() {
        let mut prev = populations_gamma(0.0);
        for k in 1..=5000 {
            let p = populations_gamma(k as f64 * 1e-3);
            assert!(p[0] < prev[0], "rho0 must decrease");
            assert!(p[2] > prev[2], "rho2 must increase");
            prev = p;
        }
    }

    #[test]
    fn classify_bands_and_ties() {
        assert_eq!(classify(0.1).band, Band::A);
        assert!(classify(0.1).ties.is_empty());
        let c = classify(0.4);
        assert_eq!(c.band, Band::C);
        assert_eq!(c.ordering, [2, 0, 1]);
        let boundary = classify(1.0 / 6.0);
        assert_eq!(boundary.band, Band::A);
        assert_eq!(boundary.ties, vec![(1, 2)]);
        assert_eq!(classify(10.0).band, Band::D);
    }

    #[test]
    fn classify_matches_ordering_on_grid() {
        for k in 0..10_000usize {
            let gamma = k as f64 * 1e-4;
            let label = classify(gamma);
            let rho = populations_gamma(gamma);
            for w in 0..2 {
                assert!(
                    rho[label.ordering[w]] >= rho[label.ordering[w + 1]] - 1e-15,
                    "ordering violated at gamma={gamma}"
                );
            }
            if label.ties.is_empty() {
                assert_eq!(label.ordering, label.band.canonical_ordering());
            }
        }
    }

    #[test]
    fn soft_generating_normalization_point() {
        for nu in [1e-6, 0.3, 2.0] {
            assert!((soft_generating(nu, 1.0).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn soft_generating_small_nu_limit() {
        // G0(u) = (2+u)/3 as nu -> 0
        let g0 = soft_generating(1e-6, 0.0).unwrap();
        assert!((g0 - 2.0 / 3.0).abs() < 1e-5);
        let gm1 = soft_generating(1e-6, -1.0).unwrap();
        assert!((gm1 - 1.0 / 3.0).abs() < 1e-5);
    }

    #[test]
    fn soft_populations_two_level_limit() {
        let pop = soft_populations(1e-6, 10).unwrap();
        assert!((pop.values()[0] - 2.0 / 3.0).abs() < 1e-4);
        assert!((pop.values()[1] - 1.0 / 3.0).abs() < 1e-4);
        for &v in &pop.values()[2..] {
            assert!(v <= 1e-5);
        }
    }

    #[test]
    fn soft_populations_solve_the_ode() {
        for nu in [0.01, 0.1, 1.0, 5.0] {
            let pop = soft_populations(nu, 60).unwrap();
            let sum: f64 = pop.values().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
            let res = soft_ode_residual(&pop, nu, &[-0.5, 0.0, 0.5]);
            assert!(res <= 1e-10, "nu={nu}: residual {res}");
        }
    }

    #[test]
    fn soft_rejects_bad_parameters() {
        assert!(soft_populations(0.0, 10).is_err());
        assert!(soft_populations(0.5, 1).is_err());
        assert!(soft_generating(-1.0, 0.0).is_err());
    }
}
