//! Exact 2D Steiner symmetrization process: a 4:1 rectangle normalized to
//! the disk area, two random directions per round. The area column stays
//! constant to rounding while the circumradius contracts monotonically
//! toward 1.
//!
//! Run with: cargo run --release --example steiner_rectangle

use symlab::experiments::{run_steiner_process, SteinerRunConfig, SteinerSeed};

fn main() {
    let mut cfg = SteinerRunConfig::new(SteinerSeed::Rectangle { aspect: 4.0 }, 7);
    cfg.target_eps = 0.05;
    cfg.max_rounds = 100;
    let outcome = run_steiner_process(&cfg).unwrap();

    println!("round count      eps      r_in     r_out          area drift");
    let v0 = outcome.records[0].volume.unwrap();
    for r in &outcome.records {
        let drift = (r.volume.unwrap() - v0).abs() / v0;
        println!(
            "{:>5} {:>5} {:>9.4} {:>9.5} {:>9.5} {:>13.3e}",
            r.round, r.count, r.eps, r.r_in, r.r_out, drift
        );
    }
    println!(
        "\nreached eps < {}: {} (phase 1 ended at round {:?})",
        cfg.target_eps, outcome.reached_target, outcome.phase1_rounds
    );
    if !outcome.small_cap_checks.is_empty() {
        println!("inner-ball checks fired at rounds: {:?}", outcome.small_cap_checks);
    }
}
