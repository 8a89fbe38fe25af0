//! Direct solution of the stationary population recurrence.
//!
//! Restricting the master equation to diagonal density matrices gives a
//! linear difference equation for the populations ρₙ. The coefficients
//! used here are the ones read off the population-sector generator
//! ([`crate::liouvillian::diagonal_generator`]):
//!
//! ```text
//! 2ε₁[(n+1)ρₙ₊₁ − nρₙ]
//!   + ε₂[n(n−1)ρₙ₋₂ − (n+1)(n+2)ρₙ]
//!   + (2c/3)[(n+3)(n+2)(n+1)ρₙ₊₃ − n(n−1)(n−2)ρₙ] = 0
//! ```
//!
//! An alternate coefficient set with pump loss weight (n+2)(n−1) and unit
//! cubic weight is kept behind [`Coefficients::Alternate`]; it fails the
//! generator audit and is retained only to demonstrate the inconsistency.

use ndarray::{Array1, Array2};
use ndarray_linalg::Solve;

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::model::HardParams;

/// Stationary populations ρ₀…ρ_{d−1}.
#[derive(Debug, Clone)]
pub struct PopulationVector {
    values: Vec<f64>,
    normalized: bool,
}

impl PopulationVector {
    pub fn new(values: Vec<f64>, normalized: bool) -> Result<Self> {
        if values.iter().any(|v| *v < -1e-12 || !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "populations must be finite and nonnegative within 1e-12".into(),
            ));
        }
        if normalized {
            let sum: f64 = values.iter().sum();
            if (sum - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidParameter(format!(
                    "normalized populations sum to {sum}, not 1"
                )));
            }
        }
        Ok(Self { values, normalized })
    }

    /// Skip the nonnegativity and normalization checks; used for the
    /// diagnostic coefficient set, whose solutions need not be physical.
    pub fn unchecked(values: Vec<f64>) -> Self {
        Self {
            values,
            normalized: false,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }
}

/// Which coefficient set to assemble the truncated linear system with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    /// Weights read off the population-sector generator: pump loss
    /// (n+1)(n+2), cubic weight 2c/3. These agree with the full kernel
    /// solve to roundoff.
    FromGenerator,
    /// Pump loss (n+2)(n−1) and unit cubic weight. Inconsistent with the
    /// generator; diagnostic use only.
    Alternate,
}

/// Solve the truncated stationary recurrence with the generator
/// coefficients; one equation is replaced by the normalization Σρₙ = 1.
pub fn stationary_recurrence(p: &HardParams, space: FockSpace) -> Result<PopulationVector> {
    stationary_recurrence_with(p, space, Coefficients::FromGenerator)
}

pub fn stationary_recurrence_with(
    p: &HardParams,
    space: FockSpace,
    coefficients: Coefficients,
) -> Result<PopulationVector> {
    if p.eps1 <= 0.0 && p.eps2 <= 0.0 {
        return Err(Error::InvalidParameter(
            "stationary recurrence needs eps1 > 0 or eps2 > 0".into(),
        ));
    }
    let d = space.dim();
    let mut a = Array2::<f64>::zeros((d, d));
    let cubic = match coefficients {
        Coefficients::FromGenerator => 2.0 * p.c / 3.0,
        Coefficients::Alternate => p.c,
    };
    for n in 0..d {
        let nf = n as f64;
        // terms referencing indices >= d are dropped, matching the
        // physical decay of the population tail
        if n + 1 < d {
            a[(n, n + 1)] += 2.0 * p.eps1 * (nf + 1.0);
        }
        a[(n, n)] -= 2.0 * p.eps1 * nf;
        if n >= 2 {
            a[(n, n - 2)] += p.eps2 * nf * (nf - 1.0);
        }
        let pump_loss = match coefficients {
            Coefficients::FromGenerator => (nf + 1.0) * (nf + 2.0),
            Coefficients::Alternate => (nf + 2.0) * (nf - 1.0),
        };
        a[(n, n)] -= p.eps2 * pump_loss;
        if n + 3 < d {
            a[(n, n + 3)] += cubic * (nf + 3.0) * (nf + 2.0) * (nf + 1.0);
        }
        a[(n, n)] -= cubic * nf * (nf - 1.0) * (nf - 2.0);
    }
    // normalization replaces the last (redundant) balance equation
    for col in 0..d {
        a[(d - 1, col)] = 1.0;
    }
    let mut b = Array1::<f64>::zeros(d);
    b[d - 1] = 1.0;
    let x = a.solve(&b).map_err(|_| Error::SingularSystem)?;
    let sum: f64 = x.sum();
    if !sum.is_finite() || sum.abs() < 1e-14 {
        return Err(Error::SingularSystem);
    }
    let values: Vec<f64> = x.iter().map(|v| v / sum).collect();
    match coefficients {
        Coefficients::FromGenerator => PopulationVector::new(values, true),
        Coefficients::Alternate => Ok(PopulationVector::unchecked(values)),
    }
}

/// Maximum absolute residual of the stationary generating-function ODE
///
/// ```text
/// (2c/3)(1−u³)G''' + ε₂(u²−1) d²(u²G)/du² + 2ε₁(1−u)G' = 0
/// ```
///
/// evaluated at the given points with G(u) = Σ ρₙuⁿ as a truncated
/// polynomial, differentiated term-wise. The cubic weight matches the
/// recurrence above, so the residual of a converged solution is limited
/// only by truncation.
pub fn generating_residual(pop: &PopulationVector, p: &HardParams, u_points: &[f64]) -> f64 {
    let rho = pop.values();
    let d = rho.len();
    let mut worst = 0.0f64;
    for &u in u_points {
        let mut g1 = 0.0;
        let mut g3 = 0.0;
        let mut w2 = 0.0; // (u^2 G)'' = sum rho_k (k+2)(k+1) u^k
        for (k, &r) in rho.iter().enumerate().take(d) {
            let kf = k as f64;
            if k >= 1 {
                g1 += r * kf * u.powi(k as i32 - 1);
            }
            if k >= 3 {
                g3 += r * kf * (kf - 1.0) * (kf - 2.0) * u.powi(k as i32 - 3);
            }
            w2 += r * (kf + 2.0) * (kf + 1.0) * u.powi(k as i32);
        }
        let residual = (2.0 * p.c / 3.0) * (1.0 - u.powi(3)) * g3
            + p.eps2 * (u * u - 1.0) * w2
            + 2.0 * p.eps1 * (1.0 - u) * g1;
        worst = worst.max(residual.abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liouvillian::{steady_state, Superoperator};

    fn space(d: usize) -> FockSpace {
        FockSpace::new(d).unwrap()
    }

    #[test]
    fn decay_only_gives_vacuum() {
        let p = HardParams::new(0.0, 0.3, 0.0, 1.0).unwrap();
        let pop = stationary_recurrence(&p, space(12)).unwrap();
        assert!((pop.values()[0] - 1.0).abs() < 1e-13);
        for n in 1..12 {
            assert!(pop.values()[n].abs() < 1e-13);
        }
    }

    #[test]
    fn matches_full_kernel_solve() {
        // primary oracle: the recurrence and the full Liouvillian kernel
        // solve the same population sector
        for (eps1, gamma) in [(1e-3, 0.25), (1e-2, 0.5), (1e-2, 3.0)] {
            let p = HardParams::from_gamma(0.4, eps1, gamma, 1.0).unwrap();
            let s = space(20);
            let kernel = steady_state(&Superoperator::for_model(&p, s).unwrap()).unwrap();
            let pop = stationary_recurrence(&p, s).unwrap();
            for n in 0..20 {
                assert!(
                    (pop.values()[n] - kernel.populations[n]).abs() <= 1e-10,
                    "eps1={eps1}, gamma={gamma}, n={n}"
                );
            }
        }
    }

    #[test]
    fn alternate_coefficients_disagree_with_kernel() {
        let p = HardParams::from_gamma(0.0, 1e-3, 0.25, 1.0).unwrap();
        let s = space(20);
        let kernel = steady_state(&Superoperator::for_model(&p, s).unwrap()).unwrap();
        let pop = stationary_recurrence_with(&p, s, Coefficients::Alternate).unwrap();
        let diff = (0..3)
            .map(|n| (pop.values()[n] - kernel.populations[n]).abs())
            .fold(0.0f64, f64::max);
        assert!(diff > 1e-4, "alternate set unexpectedly consistent: {diff}");
    }

    #[test]
    fn populations_nonnegative() {
        for gamma in [0.05, 1.0 / 6.0, 0.25, 1.0 / 3.0, 0.4, 0.5, 1.0, 3.0] {
            let p = HardParams::from_gamma(0.0, 1e-2, gamma, 1.0).unwrap();
            let pop = stationary_recurrence(&p, space(20)).unwrap();
            for &v in pop.values() {
                assert!(v >= -1e-12);
            }
            let sum: f64 = pop.values().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn generating_residual_of_converged_solution() {
        let p = HardParams::from_gamma(0.0, 1e-3, 0.25, 1.0).unwrap();
        let pop = stationary_recurrence(&p, space(30)).unwrap();
        let residual = generating_residual(&pop, &p, &[-0.5, 0.0, 0.5]);
        assert!(residual <= 1e-9, "residual {residual}");
    }

    #[test]
    fn generating_residual_vacuum_without_pump() {
        let p = HardParams::new(0.0, 0.3, 0.0, 1.0).unwrap();
        let mut values = vec![0.0; 8];
        values[0] = 1.0;
        let pop = PopulationVector::new(values, true).unwrap();
        // constant G: every derivative term vanishes identically
        assert_eq!(generating_residual(&pop, &p, &[-0.5, 0.0, 0.5]), 0.0);
    }

    #[test]
    fn rejects_rateless_model() {
        let p = HardParams::new(0.0, 0.0, 0.0, 1.0).unwrap();
        assert!(stationary_recurrence(&p, space(8)).is_err());
    }
}
