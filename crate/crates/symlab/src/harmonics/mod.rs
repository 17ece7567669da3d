//! Spherical-harmonics engine: Gegenbauer polynomials, dimension formulas
//! with brute-force oracles, zonal harmonics, degree projections, and
//! Monte Carlo verifiers for the decay identities used by the
//! symmetrization experiments.

mod dims;
mod gegenbauer;
mod inequalities;
mod verify;
mod zonal;

pub use dims::{
    binomial_u128, brute_force_harmonic_dim, brute_force_invariant_dim, harmonic_dim,
    invariant_dim, ln_binomial, ln_harmonic_dim, ln_invariant_dim, HarmonicPolynomialBasis,
};
pub use gegenbauer::{gegenbauer, GegenbauerEvaluator};
pub use inequalities::{
    decay_dominates_dimension, dimension_power_inequality, single_direction_ratio_exact,
    symmetrization_ratio_exact, symmetrization_ratio_upper_bound,
};
pub use verify::{
    basis_symmetrization_ratio, rotation_average_kernel, rotation_average_projection,
    single_direction_ratio, sup_norm_check, zero_mean_norm_contraction, BasisDecayReport,
    McEstimate, SupNormReport,
};
pub use zonal::{
    project_degree, sign_average, spectrum, symmetrize_on_grid, CoordinateFn, DegreeSpectrum,
    SignFlipAverager, SphereFn, ZonalHarmonic, ZonalMixture,
};
