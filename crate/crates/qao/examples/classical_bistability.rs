//! Classical amplitude equation in the hard excitation regime: two
//! stable attractors separated by an unstable limit cycle.

use num_complex::Complex64;
use qao::classical::{converged_amplitude, fixed_points, integrate};
use qao::model::HardParams;

fn main() -> qao::Result<()> {
    let p = HardParams::new(0.0, 0.1, 1.0, 1.0)?;
    let fp = fixed_points(&p);
    let r_minus = fp.r_minus.expect("hard regime has two cycles");
    let r_plus = fp.r_plus.expect("hard regime has two cycles");
    println!("stationary |z|^2: origin (stable), r- = {r_minus:.6} (unstable), r+ = {r_plus:.6} (stable)\n");

    for r0 in [0.05f64, 0.10, 0.15, 0.5, 2.0] {
        let z0 = Complex64::new(r0.sqrt(), 0.0);
        let traj = integrate(&p, z0, 400.0, 0.01)?;
        let settled = converged_amplitude(&traj)
            .map(|r| format!("{r:.6}"))
            .unwrap_or_else(|| "not settled".to_string());
        let side = if r0 < r_minus { "below r-" } else { "above r-" };
        println!("|z0|^2 = {r0:>5.2} ({side:>8}) -> |z|^2 = {settled}");
    }
    Ok(())
}
