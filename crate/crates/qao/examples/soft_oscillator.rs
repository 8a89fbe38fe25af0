//! Soft-excitation oscillator: populations from the confluent
//! hypergeometric generating function, from the two-level limit at small
//! ν up to broad distributions at large ν.

use qao::analytic::{soft_ode_residual, soft_populations};

fn main() -> qao::Result<()> {
    for nu in [1e-6, 0.01, 0.1, 1.0, 5.0] {
        let pop = soft_populations(nu, 40)?;
        let residual = soft_ode_residual(&pop, nu, &[-0.5, 0.0, 0.5]);
        let mean: f64 = pop
            .values()
            .iter()
            .enumerate()
            .map(|(n, r)| n as f64 * r)
            .sum();
        print!("nu = {nu:>8.0e}: ");
        for &v in pop.values().iter().take(5) {
            print!("{v:>10.6} ");
        }
        println!("...  <n> = {mean:.4}, ODE residual = {residual:.1e}");
    }
    println!("\nnu -> 0 limit is the two-level distribution (2/3, 1/3).");
    Ok(())
}
