//! Relax a mixed low-lying state under the master equation and watch the
//! populations approach the stationary state computed from the kernel.

use num_complex::Complex64;
use qao::fock::{CMatrix, DensityTolerances};
use qao::liouvillian::{evolve, steady_state, Superoperator};
use qao::model::HardParams;
use qao::{DensityMatrix, FockOperator, FockSpace};

fn main() -> qao::Result<()> {
    let p = HardParams::new(0.0, 0.25, 0.25, 1.0)?;
    let space = FockSpace::new(8)?;
    let l = Superoperator::for_model(&p, space)?;
    let stationary = steady_state(&l)?;

    // even mixture of the three lowest levels
    let mut m = CMatrix::zeros((8, 8));
    for n in 0..3 {
        m[(n, n)] = Complex64::new(1.0 / 3.0, 0.0);
    }
    let mut rho = DensityMatrix::new(FockOperator::new(space, m)?, DensityTolerances::default())?;

    let dt = 0.09 / l.inf_norm();
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>14}",
        "t", "rho0", "rho1", "rho2", "trace-1"
    );
    let mut t = 0.0;
    for _ in 0..12 {
        let pops = rho.populations();
        let trace = rho.operator().trace().re;
        println!(
            "{t:>8.1} {:>12.8} {:>12.8} {:>12.8} {:>14.2e}",
            pops[0],
            pops[1],
            pops[2],
            trace - 1.0
        );
        rho = evolve(&l, &rho, 10.0, dt)?;
        t += 10.0;
    }

    println!("\nstationary populations from the kernel:");
    println!(
        "{:>8} {:>12.8} {:>12.8} {:>12.8}",
        "", stationary.populations[0], stationary.populations[1], stationary.populations[2]
    );
    Ok(())
}
