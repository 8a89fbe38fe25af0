//! Compute the stationary populations three independent ways — full
//! Liouvillian kernel, diagonal recurrence, closed-form small-rate
//! formula — and print them side by side.

use qao::analytic::populations_gamma;
use qao::liouvillian::steady_state_adaptive;
use qao::model::HardParams;
use qao::recurrence::stationary_recurrence;
use qao::FockSpace;

fn main() -> qao::Result<()> {
    let eps1 = 1e-3;
    let gamma = 0.25;
    let p = HardParams::from_gamma(0.0, eps1, gamma, 1.0)?;

    let kernel = steady_state_adaptive(&p, None)?;
    let space = FockSpace::new(kernel.cutoff_used)?;
    let rec = stationary_recurrence(&p, space)?;
    let closed = populations_gamma(gamma);

    println!(
        "eps1 = {eps1}, gamma = {gamma}, cutoff = {}",
        kernel.cutoff_used
    );
    println!(
        "kernel residual = {:.2e}, kernel gap = {:.2e}\n",
        kernel.residual, kernel.kernel_gap
    );
    println!(
        "{:>3} {:>22} {:>22} {:>14}",
        "n", "kernel", "recurrence", "closed form"
    );
    for n in 0..6 {
        let c = if n < 3 {
            format!("{:>14.10}", closed[n])
        } else {
            format!("{:>14}", "-")
        };
        println!(
            "{n:>3} {:>22.16e} {:>22.16e} {c}",
            kernel.populations[n],
            rec.values()[n]
        );
    }

    let route_diff = (0..kernel.cutoff_used)
        .map(|n| (kernel.populations[n] - rec.values()[n]).abs())
        .fold(0.0f64, f64::max);
    println!("\nmax |kernel - recurrence| = {route_diff:.2e}");
    println!(
        "max |kernel - closed form| on n<3 = {:.2e}",
        (0..3)
            .map(|n| (kernel.populations[n] - closed[n]).abs())
            .fold(0.0f64, f64::max)
    );
    Ok(())
}
