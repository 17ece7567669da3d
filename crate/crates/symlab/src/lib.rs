//! Numerical laboratory for geometric symmetrization of convex bodies.
//!
//! The crate provides three layers:
//!
//! * [`geom`] — Euclidean primitives: reflections, Haar-random orthonormal
//!   bases, uniform sphere sampling and quadrature grids on `S^{n-1}`.
//! * [`harmonics`] — a spherical-harmonics engine: Gegenbauer polynomials,
//!   dimension formulas with brute-force oracles, zonal harmonics, degree
//!   projections, and Monte Carlo verifiers for the exact decay identities
//!   that govern symmetrization of functions on the sphere.
//! * [`bodies`] / [`experiments`] — convex bodies represented by their
//!   support functions, Minkowski/orthogonal/Steiner symmetrization
//!   operators, geometric functionals (mean width, in/out radii, volume),
//!   and randomized process drivers that measure convergence rates toward
//!   the Euclidean ball.
//!
//! Every randomized routine takes an explicit [`geom::RngStream`]; equal
//! seeds reproduce equal outputs, independent of thread count.
//!
//! The `examples/` directory contains one runnable example per major
//! capability; `symlab` also ships a thin command-line binary (see
//! [`cli`]) wrapping the experiment drivers.

pub mod bodies;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod geom;
pub mod harmonics;
pub mod tol;

pub use error::{Error, Result};
