//! The inequality checkers: combinatorial sweeps in log space with the
//! constants c1 = c2 = 10, and the geometric volume/mean-width/radius
//! inequalities on random polygons.
//!
//! Run with: cargo run --release --example verify_inequalities

use symlab::bodies::{
    bokowski_heil_residual, mean_width_contraction_check, unit_ball_volume, urysohn_check,
    BallGauge, PolygonBody,
};
use symlab::geom::RngStream;
use symlab::harmonics::{decay_dominates_dimension, dimension_power_inequality};

fn main() {
    // combinatorial sweeps
    let mut checked = 0usize;
    for n in 3..=50 {
        for k in (2..=200).step_by(2) {
            for eps in [0.5, 0.1, 0.01] {
                assert!(dimension_power_inequality(n, k, eps, 10.0).unwrap());
                checked += 1;
            }
            assert!(decay_dominates_dimension(n, k, 10.0).unwrap());
            checked += 1;
        }
    }
    println!("combinatorial sweeps: {checked} instances hold with c1 = c2 = 10");
    // a too-small constant fails, which is the point of the sweep
    assert!(!dimension_power_inequality(3, 2, 0.5, 1.0).unwrap());
    println!("with c1 = 1 the first sweep fails at n=3, k=2, eps=0.5 as expected");

    // the ball is the equality case of the volume/mean-width inequality
    let ball = BallGauge::new(1.0, 1.0, 1.0);
    println!("\nball residual: {:.2e}", bokowski_heil_residual(1.0, &ball, 2));

    let mut rng = RngStream::new(99);
    let mut worst = f64::INFINITY;
    for _ in 0..500 {
        let poly = PolygonBody::random_convex(&mut rng, 12, 1.5).unwrap();
        let gauge = poly.gauges().unwrap();
        let residual = bokowski_heil_residual(poly.area() / unit_ball_volume(2), &gauge, 2);
        worst = worst.min(residual);
        let scaled = poly.normalized_to_area(std::f64::consts::PI).unwrap();
        let g = scaled.gauges().unwrap();
        let dev = (scaled.area() / std::f64::consts::PI - 1.0).abs();
        assert!(urysohn_check(dev, &g, 1e-9).unwrap());
        let cap = mean_width_contraction_check(dev, &g, 2, 1e-9).unwrap();
        assert!(cap.holds && cap.holds_sharp != Some(false));
    }
    println!("500 random polygons: smallest residual {worst:.4} (never negative)");
    println!("mean-width bounds and the volume-normalized lower bound hold on all of them");
}
