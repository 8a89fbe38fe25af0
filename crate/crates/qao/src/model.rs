//! The two oscillator models.
//!
//! The hard-excitation oscillator is the classical flow
//!
//! ```text
//! ż = −iωz − ε₁z + ε₂z|z|² − cz|z|⁴
//! ```
//!
//! which admits a decomposition into a Hamiltonian part H = ωz*z and three
//! channel functions R₁ = √ε₁ z, R₂ = √(ε₂/2) z*², R₃ = √(c/3) z³. The
//! quantum model is obtained by the substitution z → â, z* → â⁺; the same
//! channel functions become the Lindblad operators. The soft-excitation
//! comparison oscillator carries a single nonlinearity parameter ν.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{annihilation, creation, number, FockOperator, FockSpace};

/// Physical constants of the hard-excitation oscillator.
///
/// `c` defaults to 1 (always reachable by rescaling time) but is kept
/// general so the classical bistability thresholds can be exhibited
/// cleanly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardParams {
    pub omega: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub c: f64,
}

impl HardParams {
    pub fn new(omega: f64, eps1: f64, eps2: f64, c: f64) -> Result<Self> {
        if !(omega.is_finite() && eps1.is_finite() && eps2.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if omega < 0.0 {
            return Err(Error::InvalidParameter("omega must be >= 0".into()));
        }
        // channel prefactors sqrt(eps1), sqrt(eps2/2), sqrt(c/3) must be real
        if eps1 < 0.0 || eps2 < 0.0 {
            return Err(Error::InvalidParameter("eps1, eps2 must be >= 0".into()));
        }
        if c <= 0.0 {
            return Err(Error::InvalidParameter("c must be > 0".into()));
        }
        Ok(Self {
            omega,
            eps1,
            eps2,
            c,
        })
    }

    /// Rates chosen from the control ratio γ: ε₂ = 2γε₁.
    pub fn from_gamma(omega: f64, eps1: f64, gamma: f64, c: f64) -> Result<Self> {
        if gamma < 0.0 {
            return Err(Error::InvalidParameter("gamma must be >= 0".into()));
        }
        Self::new(omega, eps1, 2.0 * gamma * eps1, c)
    }
}

/// Single nonlinearity parameter of the soft-excitation oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoftParams {
    pub nu: f64,
}

impl SoftParams {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::InvalidParameter("nu must be > 0".into()));
        }
        Ok(Self { nu })
    }
}

/// The control ratio γ = ε₂ / (2ε₁).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRatio {
    gamma: f64,
}

impl GammaRatio {
    /// Fails loudly at ε₁ = 0, where the ratio is undefined.
    pub fn from_params(p: &HardParams) -> Result<Self> {
        if p.eps1 <= 0.0 {
            return Err(Error::InvalidParameter(
                "gamma = eps2/(2 eps1) requires eps1 > 0".into(),
            ));
        }
        Ok(Self {
            gamma: p.eps2 / (2.0 * p.eps1),
        })
    }

    pub fn value(&self) -> f64 {
        self.gamma
    }
}

/// Hamiltonian ω n̂ on the truncated space.
pub fn hamiltonian(p: &HardParams, space: FockSpace) -> FockOperator {
    number(space).scaled(Complex64::new(p.omega, 0.0))
}

/// The three Lindblad channels [√ε₁ a, √(ε₂/2) a†², √(c/3) a³].
pub fn channels(p: &HardParams, space: FockSpace) -> Vec<FockOperator> {
    let a = annihilation(space);
    let ad = creation(space);
    let r1 = a.scaled(Complex64::new(p.eps1.sqrt(), 0.0));
    let r2 = ad
        .mul(&ad)
        .expect("same space")
        .scaled(Complex64::new((p.eps2 / 2.0).sqrt(), 0.0));
    let r3 = a
        .mul(&a)
        .and_then(|aa| aa.mul(&a))
        .expect("same space")
        .scaled(Complex64::new((p.c / 3.0).sqrt(), 0.0));
    vec![r1, r2, r3]
}

/// Right-hand side of the classical equation of motion.
pub fn classical_rhs(p: &HardParams, z: Complex64) -> Complex64 {
    let r2 = z.norm_sqr();
    -Complex64::i() * p.omega * z - p.eps1 * z + p.eps2 * z * r2 - p.c * z * r2 * r2
}

/// The same vector field evaluated through the channel decomposition,
/// term by term: −i ∂H/∂z* + Σⱼ (R̄ⱼ ∂Rⱼ/∂z* − Rⱼ ∂R̄ⱼ/∂z*).
///
/// Agreement with [`classical_rhs`] is the identity that makes the
/// quantization recipe applicable to this flow.
pub fn faq_rhs(p: &HardParams, z: Complex64) -> Complex64 {
    let zc = z.conj();

    // -i dH/dz* with H = w z* z
    let ham = -Complex64::i() * p.omega * z;

    // R1 = sqrt(e1) z:  dR1/dz* = 0, dR1bar/dz* = sqrt(e1)
    let s1 = p.eps1.sqrt();
    let ch1 = -(s1 * z) * s1;

    // R2 = sqrt(e2/2) z*^2:  dR2/dz* = sqrt(2 e2) z*, dR2bar/dz* = 0
    let s2 = (p.eps2 / 2.0).sqrt();
    let ch2 = (s2 * z * z) * (2.0 * s2 * zc);

    // R3 = sqrt(c/3) z^3:  dR3/dz* = 0, dR3bar/dz* = 3 sqrt(c/3) z*^2
    let s3 = (p.c / 3.0).sqrt();
    let ch3 = -(s3 * z * z * z) * (3.0 * s3 * zc * zc);

    ham + ch1 + ch2 + ch3
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn hamiltonian_is_omega_number() {
        let s = FockSpace::new(4).unwrap();
        let p = HardParams::new(2.0, 0.1, 0.1, 1.0).unwrap();
        let h = hamiltonian(&p, s);
        assert_eq!(h.entries()[(0, 0)].re, 0.0);
        assert_eq!(h.entries()[(1, 1)].re, 2.0);
        assert_eq!(h.entries()[(2, 2)].re, 4.0);
        let zero = hamiltonian(&HardParams::new(0.0, 0.1, 0.1, 1.0).unwrap(), s);
        assert!(zero.max_abs() < 1e-15);
    }

    #[test]
    fn channel_matrix_elements() {
        let s = FockSpace::new(5).unwrap();
        // eps2 = 2: R2 entry (2,0) = sqrt(2/2) * sqrt(1) * sqrt(2) = sqrt(2)
        let p = HardParams::new(0.0, 0.0, 2.0, 1.0).unwrap();
        let rs = channels(&p, s);
        assert!((rs[1].entries()[(2, 0)].re - 2f64.sqrt()).abs() < 1e-14);
        // c = 3: R3 entry (0,3) = sqrt(3*2*1) = sqrt(6)
        let p = HardParams::new(0.0, 0.0, 0.0, 3.0).unwrap();
        let rs = channels(&p, s);
        assert!((rs[2].entries()[(0, 3)].re - 6f64.sqrt()).abs() < 1e-14);
        assert!(rs[0].max_abs() < 1e-15);
        assert!(rs[1].max_abs() < 1e-15);
    }

    #[test]
    fn channels_vanish_at_zero_rates() {
        // c cannot be zero, but the cubic channel scales with sqrt(c/3);
        // check the two rate channels vanish and spot-check R3 against
        // the classical function with z -> a.
        let s = FockSpace::new(6).unwrap();
        let p = HardParams::new(0.0, 0.0, 0.0, 1.0).unwrap();
        let rs = channels(&p, s);
        assert!(rs[0].max_abs() < 1e-15);
        assert!(rs[1].max_abs() < 1e-15);
        // sqrt(1/3) a^3 |5> = sqrt(1/3) sqrt(5*4*3) |2>
        let expected = (60.0f64 / 3.0).sqrt();
        assert!((rs[2].entries()[(2, 5)].re - expected).abs() < 1e-13);
    }

    #[test]
    fn classical_rhs_values() {
        let p = HardParams::new(1.0, 0.1, 0.5, 1.0).unwrap();
        let z = Complex64::new(1.0, 0.0);
        let got = classical_rhs(&p, z);
        // -i - 0.1 + 0.5 - 1 = -0.6 - i
        assert!((got - Complex64::new(-0.6, -1.0)).norm() < 1e-15);
        assert_eq!(
            classical_rhs(&p, Complex64::new(0.0, 0.0)),
            Complex64::new(0.0, 0.0)
        );
        let quintic = HardParams::new(0.0, 0.0, 0.0, 1.0).unwrap();
        assert!((classical_rhs(&quintic, z) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn decay_only_channel_term() {
        // with only the decay channel active the decomposition gives -eps1 z
        let p = HardParams::new(0.0, 1.0, 0.0, 1e-300).unwrap();
        let z = Complex64::new(1.0, 0.0);
        assert!((faq_rhs(&p, z) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn decomposition_matches_vector_field() {
        // 1000 random (z, params) draws with |z| <= 3
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            let p = HardParams::new(
                rng.gen_range(0.0..5.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.01..3.0),
            )
            .unwrap();
            let r = rng.gen_range(0.0..3.0);
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = Complex64::from_polar(r, phi);
            let lhs = classical_rhs(&p, z);
            let rhs = faq_rhs(&p, z);
            assert!(
                (lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()),
                "mismatch at z={z}, p={p:?}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn gamma_ratio() {
        let p = HardParams::new(0.0, 1e-3, 5e-4, 1.0).unwrap();
        assert!((GammaRatio::from_params(&p).unwrap().value() - 0.25).abs() < 1e-15);
        let undamped = HardParams::new(0.0, 0.0, 5e-4, 1.0).unwrap();
        assert!(GammaRatio::from_params(&undamped).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(HardParams::new(0.0, -0.1, 0.0, 1.0).is_err());
        assert!(HardParams::new(0.0, 0.0, -0.1, 1.0).is_err());
        assert!(HardParams::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(SoftParams::new(0.0).is_err());
        assert!(SoftParams::new(0.5).is_ok());
    }
}
