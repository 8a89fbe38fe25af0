//! Sweep the closed-form populations over γ and print the ordering band
//! at each grid point, plus the bisected band boundaries.

use qao::analytic::{classify, populations_gamma};

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn main() {
    println!(
        "{:>8} {:>10} {:>10} {:>10}  band",
        "gamma", "rho0", "rho1", "rho2"
    );
    for k in 0..=20 {
        let gamma = k as f64 * 0.05;
        let p = populations_gamma(gamma);
        let label = classify(gamma);
        println!(
            "{gamma:>8.3} {:>10.6} {:>10.6} {:>10.6}  {}{}",
            p[0],
            p[1],
            p[2],
            label.band.letter(),
            if label.ties.is_empty() { "" } else { " (tie)" }
        );
    }

    let t1 = bisect(0.05, 0.3, |g| {
        let p = populations_gamma(g);
        p[1] - p[2]
    });
    let t2 = bisect(0.2, 0.45, |g| {
        let p = populations_gamma(g);
        p[0] - p[2]
    });
    let t3 = bisect(0.35, 0.7, |g| {
        let p = populations_gamma(g);
        p[0] - p[1]
    });
    println!("\nband boundaries: {t1:.12}, {t2:.12}, {t3:.12}");
    println!(
        "exact values:    {:.12}, {:.12}, {:.12}",
        1.0 / 6.0,
        1.0 / 3.0,
        0.5
    );
}
