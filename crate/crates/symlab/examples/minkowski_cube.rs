//! One randomized Minkowski symmetrization process: start from the cube,
//! apply one Haar-random orthogonal symmetrization per round, and watch
//! the ball-closeness certificate decay geometrically while the mean
//! width stays put. Finishes with the fitted per-round decay factor.
//!
//! Run with: cargo run --release --example minkowski_cube

use symlab::experiments::{fit_rate, run_minkowski_process, MinkowskiRunConfig, RateFit, SeedBody};

fn main() {
    let mut cfg = MinkowskiRunConfig::new(3, SeedBody::Cube, 42);
    cfg.rounds = 30;
    let records = run_minkowski_process(&cfg).unwrap();

    println!("round count      eps        M*       r_in      r_out       E_2");
    for r in &records {
        println!(
            "{:>5} {:>5} {:>9.2e} {:>9.6} {:>9.6} {:>9.6} {:>9.2e}",
            r.round, r.count, r.eps, r.mean_width_half, r.r_in, r.r_out, r.energies[0]
        );
    }

    let eps: Vec<f64> = records.iter().map(|r| r.eps).collect();
    match fit_rate(&eps, &[1e-1, 1e-2, 1e-3], 1e-6).unwrap() {
        RateFit::Fitted { rho_hat, rho_ci, r_squared, rounds_to_eps, .. } => {
            println!("\nper-round decay factor {rho_hat:.3} (CI {:.3}..{:.3}, R^2 {r_squared:.3})", rho_ci.0, rho_ci.1);
            for r in rounds_to_eps {
                match r.observed {
                    Some(t) => println!("  eps < {:>6}: round {t} (model {:.1})", r.eps, r.extrapolated),
                    None => println!("  eps < {:>6}: not reached (model {:.1})", r.eps, r.extrapolated),
                }
            }
        }
        RateFit::Degenerate { reason } => println!("no fit: {reason}"),
    }
}
