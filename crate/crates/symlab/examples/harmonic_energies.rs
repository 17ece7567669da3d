//! Degree projections on the sphere: sample a function on a quadrature
//! grid, project it onto each harmonic degree through the reproducing
//! kernel, and check that the energies add up to the squared norm.
//!
//! Run with: cargo run --example harmonic_energies

use symlab::geom::{RngStream, SphereGrid, UnitVector};
use symlab::harmonics::{spectrum, SphereFn, ZonalHarmonic, ZonalMixture};

fn main() {
    let grid = SphereGrid::product3(24).unwrap();
    println!("grid: {} nodes, measured tolerance {:.2e}", grid.len(), grid.tolerance());

    // a zonal harmonic concentrates all of its energy in its own degree
    let pole = UnitVector::normalize(&[1.0, -2.0, 0.5]).unwrap();
    let zonal = ZonalHarmonic::new(3, 3, pole).unwrap();
    let spec = spectrum(&zonal.values_on(&grid), 6, &grid).unwrap();
    println!("\nunit-norm degree-3 zonal:");
    for (k, e) in spec.energies.iter().enumerate() {
        println!("  E_{k} = {e:.3e}");
    }

    // a random mixture spreads energy; the spectrum satisfies Parseval
    let mut rng = RngStream::new(7);
    let mixture = ZonalMixture::random(3, &[0, 1, 2, 3, 4], &mut rng).unwrap();
    let values = mixture.values_on(&grid);
    let spec = spectrum(&values, 6, &grid).unwrap();
    let norm2 = grid.norm_l2(&values).powi(2);
    println!("\nrandom mixture of degrees 0..4:");
    for (k, e) in spec.energies.iter().enumerate() {
        println!("  E_{k} = {e:.6}");
    }
    println!("  sum = {:.6} vs |f|^2 = {:.6}", spec.total(), norm2);
    assert!((spec.total() - norm2).abs() <= 1e-6 * norm2.max(1.0));
}
