//! Exact decay ratios and the combinatorial inequalities behind them,
//! evaluated in log space so that huge dimensions never overflow.

use crate::error::{Error, Result};
use crate::harmonics::dims::{harmonic_dim, invariant_dim, ln_harmonic_dim, ln_invariant_dim};

/// Exact expected one-round decay of the squared L2 norm of a degree-`k`
/// harmonic under orthogonal symmetrization with a Haar-random basis:
/// `dim(invariant subspace) / dim(full space)`. Zero for odd `k`.
pub fn symmetrization_ratio_exact(n: usize, k: usize) -> Result<f64> {
    if k % 2 == 1 {
        return Ok(0.0);
    }
    match (invariant_dim(n, k), harmonic_dim(n, k)) {
        (Ok(num), Ok(den)) => Ok(num as f64 / den as f64),
        _ => {
            if k == 0 {
                return Ok(1.0);
            }
            Ok((ln_invariant_dim(n, k) - ln_harmonic_dim(n, k)).exp())
        }
    }
}

/// Closed-form upper bound `(k / (n - 2 + k))^(k/2)` for the even-degree
/// decay ratio. Equals 1 when n = 2, where the ratio is exactly 1/2.
pub fn symmetrization_ratio_upper_bound(n: usize, k: usize) -> f64 {
    debug_assert!(k >= 2 && k % 2 == 0);
    let base = k as f64 / (n as f64 - 2.0 + k as f64);
    (0.5 * k as f64 * base.ln()).exp()
}

/// Exact expected decay of the squared L2 norm of a degree-`k` harmonic
/// under one Minkowski symmetrization in a uniform random direction:
/// `(n - 2 + k) / (n - 2 + 2k)`, with the constant case `k = 0` fixed at 1.
pub fn single_direction_ratio_exact(n: usize, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    (n as f64 - 2.0 + k as f64) / (n as f64 - 2.0 + 2.0 * k as f64)
}

/// Check `N_k^(c1 (1 + log(1 + 2/eps)) / (1 + log(1 + k/n))) > n / eps^3`
/// in log space. The constant `c1 = 10` must make this hold everywhere.
pub fn dimension_power_inequality(n: usize, k: usize, eps: f64, c1: f64) -> Result<bool> {
    if n < 3 || k < 2 {
        return Err(Error::InvalidArgument(
            "dimension power inequality needs n >= 3 and k >= 2".into(),
        ));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let exponent = c1 * (1.0 + (1.0 + 2.0 / eps).ln()) / (1.0 + (1.0 + k as f64 / n as f64).ln());
    let lhs = exponent * ln_harmonic_dim(n, k);
    let rhs = (n as f64).ln() - 3.0 * eps.ln();
    Ok(lhs > rhs)
}

/// Check `(N_k^0 / N_k)^T < 1 / N_k` with `T = c2 (1 + log(1 + k/n))`,
/// in log space. The constant `c2 = 10` must make this hold everywhere.
pub fn decay_dominates_dimension(n: usize, k: usize, c2: f64) -> Result<bool> {
    if n < 3 || k < 2 || k % 2 == 1 {
        return Err(Error::InvalidArgument(
            "decay-dominates-dimension check needs n >= 3 and even k >= 2".into(),
        ));
    }
    let t = c2 * (1.0 + (1.0 + k as f64 / n as f64).ln());
    let ln_n_k = ln_harmonic_dim(n, k);
    let ln_ratio = ln_invariant_dim(n, k) - ln_n_k;
    Ok(t * ln_ratio < -ln_n_k)
}
