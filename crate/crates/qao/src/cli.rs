//! Command implementations behind the `qao` executable: parameter sweeps,
//! stationary solves, time evolution, soft-model populations, and
//! classical trajectories, all emitted as CSV for external plotting.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::analytic::{classify, populations_gamma};
use crate::classical;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::fock::{CMatrix, DensityMatrix, DensityTolerances, FockOperator, FockSpace};
use crate::liouvillian::{evolve, steady_state, steady_state_adaptive, Superoperator};
use crate::model::HardParams;

/// One γ grid point of a sweep.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub gamma: f64,
    pub analytic: [f64; 3],
    pub numeric: Option<[f64; 3]>,
    pub band: char,
    pub max_err: Option<f64>,
}

/// 17 significant digits: round-trips f64 exactly.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn open_out(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Analytic (and optionally numeric) populations over a γ grid.
pub fn run_sweep(
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
    eps1: f64,
    with_numeric: bool,
) -> Result<Vec<SweepRecord>> {
    if !(gamma_min >= 0.0 && gamma_min < gamma_max) {
        return Err(Error::InvalidParameter(
            "need 0 <= gamma_min < gamma_max".into(),
        ));
    }
    if steps < 2 {
        return Err(Error::InvalidParameter("steps must be >= 2".into()));
    }
    let mut records = Vec::with_capacity(steps);
    for k in 0..steps {
        let gamma = gamma_min + (gamma_max - gamma_min) * k as f64 / (steps - 1) as f64;
        let analytic = populations_gamma(gamma);
        let band = classify(gamma).band.letter();
        let (numeric, max_err) = if with_numeric {
            let p = HardParams::from_gamma(0.0, eps1, gamma, 1.0)?;
            let result = steady_state_adaptive(&p, None)?;
            let numeric = [
                result.populations[0],
                result.populations[1],
                result.populations[2],
            ];
            let err = (0..3)
                .map(|n| (numeric[n] - analytic[n]).abs())
                .fold(0.0f64, f64::max);
            (Some(numeric), Some(err))
        } else {
            (None, None)
        };
        records.push(SweepRecord {
            gamma,
            analytic,
            numeric,
            band,
            max_err,
        });
    }
    Ok(records)
}

pub fn cmd_sweep(
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
    eps1: f64,
    with_numeric: bool,
    out: &Path,
) -> Result<()> {
    let records = run_sweep(gamma_min, gamma_max, steps, eps1, with_numeric)?;
    let mut w = open_out(out)?;
    writeln!(
        w,
        "gamma,rho0_a,rho1_a,rho2_a,rho0_n,rho1_n,rho2_n,band,max_err"
    )?;
    for r in &records {
        let numeric = match r.numeric {
            Some(n) => format!("{},{},{}", fmt(n[0]), fmt(n[1]), fmt(n[2])),
            None => ",,".to_string(),
        };
        let err = r.max_err.map(fmt).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            fmt(r.gamma),
            fmt(r.analytic[0]),
            fmt(r.analytic[1]),
            fmt(r.analytic[2]),
            numeric,
            r.band,
            err
        )?;
    }
    Ok(())
}

/// Stationary populations with solver diagnostics in a comment header.
pub fn cmd_steady(config_path: &Path, cutoff: Option<usize>, out: &Path) -> Result<()> {
    let cfg = Config::load(config_path)?;
    let p = cfg.hard_params()?;
    let cutoff = cutoff.or(cfg.cutoff()?);
    let result = match cutoff {
        Some(d) => steady_state(&Superoperator::for_model(&p, FockSpace::new(d)?)?)?,
        None => steady_state_adaptive(&p, None)?,
    };
    let mut w = open_out(out)?;
    writeln!(w, "# residual={}", fmt(result.residual))?;
    writeln!(w, "# kernel_gap={}", fmt(result.kernel_gap))?;
    writeln!(w, "# cutoff_used={}", result.cutoff_used)?;
    writeln!(w, "n,population")?;
    for (n, rho) in result.populations.iter().enumerate() {
        writeln!(w, "{n},{}", fmt(*rho))?;
    }
    Ok(())
}

/// Soft-oscillator populations from the hypergeometric series.
pub fn cmd_soft(nu: f64, n_max: usize, out: &Path) -> Result<()> {
    let pop = crate::analytic::soft_populations(nu, n_max)?;
    let mut w = open_out(out)?;
    writeln!(w, "n,population")?;
    for (n, rho) in pop.values().iter().enumerate() {
        writeln!(w, "{n},{}", fmt(*rho))?;
    }
    Ok(())
}

/// Classical trajectory from z0.
pub fn cmd_classical(config_path: &Path, z0: Complex64, t_final: f64, out: &Path) -> Result<()> {
    let cfg = Config::load(config_path)?;
    let p = cfg.hard_params()?;
    let traj = classical::integrate(&p, z0, t_final, classical::default_step(&p))?;
    let mut w = open_out(out)?;
    writeln!(w, "t,re_z,im_z,abs2_z")?;
    for (t, z) in traj.times.iter().zip(&traj.z_values) {
        writeln!(
            w,
            "{},{},{},{}",
            fmt(*t),
            fmt(z.re),
            fmt(z.im),
            fmt(z.norm_sqr())
        )?;
    }
    Ok(())
}

/// Master-equation relaxation of a low-lying mixed state, sampled on a
/// coarse output grid.
pub fn cmd_evolve(
    config_path: &Path,
    t_final: f64,
    cutoff: Option<usize>,
    out: &Path,
) -> Result<()> {
    let cfg = Config::load(config_path)?;
    let p = cfg.hard_params()?;
    let dim = match cutoff.or(cfg.cutoff()?) {
        Some(d) => d,
        None => steady_state_adaptive(&p, None)?.cutoff_used,
    };
    let space = FockSpace::new(dim)?;
    let l = Superoperator::for_model(&p, space)?;
    let dt = 0.09 / l.inf_norm().max(1e-12);

    // start from an even mixture of the three lowest levels
    let mut m = CMatrix::zeros((dim, dim));
    for n in 0..3 {
        m[(n, n)] = Complex64::new(1.0 / 3.0, 0.0);
    }
    let mut rho = DensityMatrix::new(FockOperator::new(space, m)?, DensityTolerances::default())?;

    let samples = 200usize;
    let segment = t_final / samples as f64;
    let mut w = open_out(out)?;
    writeln!(w, "t,rho0,rho1,rho2,trace")?;
    let write_row = |w: &mut BufWriter<File>, t: f64, rho: &DensityMatrix| -> Result<()> {
        let pops = rho.populations();
        let trace = rho.operator().trace().re;
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt(t),
            fmt(pops[0]),
            fmt(pops[1]),
            fmt(pops[2]),
            fmt(trace)
        )?;
        Ok(())
    };
    write_row(&mut w, 0.0, &rho)?;
    for k in 1..=samples {
        rho = evolve(&l, &rho, segment, dt)?;
        write_row(&mut w, k as f64 * segment, &rho)?;
    }
    Ok(())
}

/// `re,im` pair for the classical initial condition.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let (re, im) = text.split_once(',').ok_or_else(|| Error::Parse {
        line: 0,
        message: format!("expected re,im pair, got \"{text}\""),
    })?;
    let parse = |s: &str| -> Result<f64> {
        s.trim().parse().map_err(|_| Error::Parse {
            line: 0,
            message: format!("invalid number \"{s}\""),
        })
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_analytic_rows() {
        let records = run_sweep(0.0, 1.0, 5, 1e-3, false).unwrap();
        assert_eq!(records.len(), 5);
        assert_eq!(records[0].analytic, [1.0, 0.0, 0.0]);
        assert_eq!(records[0].band, 'A');
        // gamma = 0.5 row
        let half = &records[2];
        assert!((half.gamma - 0.5).abs() < 1e-15);
        assert!((half.analytic[0] - 0.25).abs() < 1e-15);
        assert!((half.analytic[1] - 0.25).abs() < 1e-15);
        assert!((half.analytic[2] - 0.5).abs() < 1e-15);
        assert!(half.numeric.is_none());
    }

    #[test]
    fn sweep_rejects_bad_grid() {
        assert!(run_sweep(0.5, 0.5, 5, 1e-3, false).is_err());
        assert!(run_sweep(0.0, 1.0, 1, 1e-3, false).is_err());
        assert!(run_sweep(-0.1, 1.0, 5, 1e-3, false).is_err());
    }

    #[test]
    fn complex_pairs() {
        assert_eq!(
            parse_complex("0.5,-1.25").unwrap(),
            Complex64::new(0.5, -1.25)
        );
        assert!(parse_complex("1.0").is_err());
        assert!(parse_complex("a,b").is_err());
    }

    #[test]
    fn float_formatting_round_trips() {
        for x in [0.1, 2.0 / 3.0, 1e-12, 6543.123456789, f64::MIN_POSITIVE] {
            let text = fmt(x);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back, x);
        }
    }
}
