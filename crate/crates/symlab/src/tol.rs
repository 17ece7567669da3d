//! Numeric tolerances and size guards, kept in one place.
//!
//! Double precision carries ~15.9 significant digits; the exact-identity
//! tolerances below leave a few digits of headroom for accumulated
//! rounding. Grid-dependent tolerances are not listed here: every
//! [`crate::geom::SphereGrid`] measures its own `tolerance()` at
//! construction time.

/// Acceptance band for unit-norm sphere vectors.
pub const UNIT_NORM: f64 = 1e-12;

/// Pairwise orthogonality acceptance for orthonormal-basis columns.
pub const ORTHOGONALITY: f64 = 1e-10;

/// Exact float identities (reflection involution, isometry).
pub const ISOMETRY: f64 = 1e-12;

/// Relative area preservation for one exact 2D Steiner step.
pub const STEINER_AREA_REL: f64 = 1e-9;

/// Cross products below this count consecutive polygon vertices as collinear.
pub const COLLINEAR_CROSS: f64 = 1e-12;

/// Distances below this count consecutive polygon vertices as duplicates.
pub const DUPLICATE_VERTEX: f64 = 1e-12;

/// Polygon areas below this are degenerate.
pub const DEGENERATE_AREA: f64 = 1e-12;

/// Projection energies above `-ENERGY_CLAMP` but below zero are quadrature
/// noise: clamped to zero and counted.
pub const ENERGY_CLAMP: f64 = 1e-9;

/// Slack for support-function subadditivity and inclusion checks.
pub const SUPPORT_SLACK: f64 = 1e-9;

/// Relative pivot threshold for floating-point rank decisions.
pub const RANK_REL: f64 = 1e-9;

/// Exact sign enumeration covers 2^n flips per point up to this dimension.
pub const SIGN_ENUM_MAX_DIM: usize = 12;

/// Sign vectors drawn per point by the sampled averager above the exact bound.
pub const SIGN_MC_SAMPLES: usize = 4096;

/// Node cap for O(m^2) kernel double sums (degree projections).
pub const ENERGY_NODE_CAP: usize = 4096;

/// Smallest admissible grid resolution parameter.
pub const MIN_GRID_RESOLUTION: usize = 16;
