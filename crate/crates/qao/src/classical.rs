//! Classical limit: trajectory integration of the complex amplitude
//! equation and the bistability structure of its stationary cycles.
//!
//! The amplitude r = |z|² obeys dr/dt = 2r(−ε₁ + ε₂r − cr²), so the
//! stationary cycles are the roots of cr² − ε₂r + ε₁ = 0. Hard excitation
//! means both roots are real: the origin and the outer cycle r₊ are
//! stable, separated by the unstable cycle r₋.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{classical_rhs, HardParams};

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub z_values: Vec<Complex64>,
    pub params: HardParams,
}

impl Trajectory {
    pub fn final_z(&self) -> Complex64 {
        *self.z_values.last().expect("trajectory is never empty")
    }
}

/// Stationary values of r = |z|², when they exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeFixedPoints {
    pub r_minus: Option<f64>,
    pub r_plus: Option<f64>,
    pub origin_stable: bool,
}

/// Real roots of cr² − ε₂r + ε₁ = 0.
pub fn fixed_points(p: &HardParams) -> AmplitudeFixedPoints {
    let disc = p.eps2 * p.eps2 - 4.0 * p.eps1 * p.c;
    if disc < 0.0 {
        return AmplitudeFixedPoints {
            r_minus: None,
            r_plus: None,
            origin_stable: p.eps1 > 0.0,
        };
    }
    let sq = disc.sqrt();
    AmplitudeFixedPoints {
        r_minus: Some((p.eps2 - sq) / (2.0 * p.c)),
        r_plus: Some((p.eps2 + sq) / (2.0 * p.c)),
        origin_stable: p.eps1 > 0.0,
    }
}

/// Step size used when the caller does not supply one.
pub fn default_step(p: &HardParams) -> f64 {
    (0.01f64).min(0.1 / p.eps1.max(p.eps2).max(p.c))
}

/// Fixed-step RK4 integration of ż = −iωz − ε₁z + ε₂z|z|² − cz|z|⁴.
pub fn integrate(p: &HardParams, z0: Complex64, t_final: f64, dt: f64) -> Result<Trajectory> {
    if dt <= 0.0 || t_final < 0.0 {
        return Err(Error::InvalidParameter(
            "dt must be > 0 and t_final >= 0".into(),
        ));
    }
    // the true flow is bounded; runaway amplitude means the step is
    // resolving nothing
    let guard = 10.0 * (p.eps2 / p.c).sqrt().max(z0.norm()).max(1.0);
    let steps = (t_final / dt).ceil() as usize;
    let h = if steps > 0 {
        t_final / steps as f64
    } else {
        dt
    };
    let mut times = Vec::with_capacity(steps + 1);
    let mut z_values = Vec::with_capacity(steps + 1);
    let mut z = z0;
    times.push(0.0);
    z_values.push(z);
    for k in 0..steps {
        let k1 = classical_rhs(p, z);
        let k2 = classical_rhs(p, z + k1 * (h / 2.0));
        let k3 = classical_rhs(p, z + k2 * (h / 2.0));
        let k4 = classical_rhs(p, z + k3 * h);
        z += (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);
        let t = (k + 1) as f64 * h;
        if z.norm() > guard {
            return Err(Error::Diverged {
                t,
                amplitude: z.norm(),
            });
        }
        times.push(t);
        z_values.push(z);
    }
    Ok(Trajectory {
        times,
        z_values,
        params: *p,
    })
}

/// Amplitude value the trajectory settled on, if it stayed within
/// 1e−8 of it for the last 100 steps.
pub fn converged_amplitude(traj: &Trajectory) -> Option<f64> {
    const WINDOW: usize = 100;
    const TOL: f64 = 1e-8;
    if traj.z_values.len() < WINDOW + 1 {
        return None;
    }
    let target = traj.final_z().norm_sqr();
    let settled = traj.z_values[traj.z_values.len() - WINDOW..]
        .iter()
        .all(|z| (z.norm_sqr() - target).abs() < TOL);
    settled.then_some(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hard() -> HardParams {
        HardParams::new(1.0, 0.1, 1.0, 1.0).unwrap()
    }

    #[test]
    fn fixed_point_roots() {
        let fp = fixed_points(&hard());
        let r_minus = fp.r_minus.unwrap();
        let r_plus = fp.r_plus.unwrap();
        assert!((r_minus - (1.0 - 0.6f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((r_plus - (1.0 + 0.6f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(r_minus <= r_plus);
        for r in [r_minus, r_plus] {
            assert!((-0.1 + r - r * r).abs() < 1e-12);
        }
        assert!(fp.origin_stable);
    }

    #[test]
    fn no_cycles_below_discriminant() {
        let p = HardParams::new(0.0, 1.0, 0.5, 1.0).unwrap();
        let fp = fixed_points(&p);
        assert_eq!(fp.r_minus, None);
        assert_eq!(fp.r_plus, None);
        // origin globally attracting
        for amp in [0.3, 1.0, 2.0] {
            let traj = integrate(&p, Complex64::new(amp, 0.0), 50.0, 0.01).unwrap();
            assert!(traj.final_z().norm_sqr() < 1e-8);
        }
    }

    #[test]
    fn undamped_roots() {
        let p = HardParams::new(0.0, 0.0, 0.8, 2.0).unwrap();
        let fp = fixed_points(&p);
        assert!((fp.r_minus.unwrap() - 0.0).abs() < 1e-15);
        assert!((fp.r_plus.unwrap() - 0.4).abs() < 1e-15);
        assert!(!fp.origin_stable);
    }

    #[test]
    fn zero_start_stays_at_rest() {
        let traj = integrate(&hard(), Complex64::new(0.0, 0.0), 10.0, 0.01).unwrap();
        assert!(traj.z_values.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn bistability_two_basins() {
        let p = hard();
        let fp = fixed_points(&p);
        let r_plus = fp.r_plus.unwrap();
        // below the unstable cycle: decay to rest
        let low = integrate(&p, Complex64::new(0.05f64.sqrt(), 0.0), 300.0, 0.01).unwrap();
        assert!(low.final_z().norm_sqr() < 1e-8);
        // above it: lock onto the outer cycle
        let high = integrate(&p, Complex64::new(0.5f64.sqrt(), 0.0), 300.0, 0.01).unwrap();
        assert!((high.final_z().norm_sqr() - r_plus).abs() < 1e-6);
        assert_eq!(converged_amplitude(&high).is_some(), true);
    }

    #[test]
    fn frequency_only_rotates_the_phase() {
        let z0 = Complex64::new(0.9, 0.0);
        let mut amplitudes = Vec::new();
        for omega in [0.0, 1.0, 10.0] {
            let p = HardParams::new(omega, 0.1, 1.0, 1.0).unwrap();
            let traj = integrate(&p, z0, 20.0, 2e-4).unwrap();
            amplitudes.push(traj.z_values.iter().map(|z| z.norm()).collect::<Vec<_>>());
        }
        for k in 0..amplitudes[0].len() {
            assert!((amplitudes[0][k] - amplitudes[1][k]).abs() < 1e-10);
            assert!((amplitudes[0][k] - amplitudes[2][k]).abs() < 1e-10);
        }
    }

    #[test]
    fn amplitude_decouples_from_phase() {
        // |z(t)|^2 from the 2d integration matches RK4 on the scalar
        // amplitude equation dr/dt = 2r(-e1 + e2 r - c r^2)
        let p = hard();
        let z0 = Complex64::new(0.8, 0.3);
        let dt = 0.005;
        let traj = integrate(&p, z0, 10.0, dt).unwrap();
        let mut r = z0.norm_sqr();
        let rhs = |r: f64| 2.0 * r * (-p.eps1 + p.eps2 * r - p.c * r * r);
        for (k, z) in traj.z_values.iter().enumerate() {
            assert!((z.norm_sqr() - r).abs() < 1e-8, "step {k}");
            let k1 = rhs(r);
            let k2 = rhs(r + 0.5 * dt * k1);
            let k3 = rhs(r + 0.5 * dt * k2);
            let k4 = rhs(r + dt * k3);
            r += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }

    #[test]
    fn blow_up_guard_fires_on_coarse_step() {
        let p = HardParams::new(0.0, 0.0, 40.0, 0.01).unwrap();
        let out = integrate(&p, Complex64::new(5.0, 0.0), 10.0, 0.5);
        assert!(matches!(out, Err(Error::Diverged { .. })));
    }
}
