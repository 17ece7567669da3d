//! Monte Carlo verifiers for the exact identities governing
//! symmetrization of spherical harmonics.
//!
//! Each verifier draws its randomness from per-trial derived streams, so
//! results are deterministic for a given seed and independent of the rayon
//! thread count; trial outputs are merged in index order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{
    dot, reflect_in_place, sample_haar_basis, sample_unit_sphere, RngStream, SphereGrid,
    UnitVector,
};
use crate::harmonics::dims::harmonic_dim;
use crate::harmonics::gegenbauer::GegenbauerEvaluator;
use crate::harmonics::inequalities::{
    symmetrization_ratio_exact, symmetrization_ratio_upper_bound,
};
use crate::harmonics::zonal::{SignFlipAverager, SphereFn, ZonalHarmonic};

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

impl McEstimate {
    pub fn from_samples(samples: &[f64]) -> Self {
        let m = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / m;
        let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (m - 1.0).max(1.0);
        Self {
            mean,
            std_error: (var / m).sqrt(),
            trials: samples.len(),
        }
    }

    /// |mean - reference| within `sigmas` standard errors plus `slack`.
    pub fn agrees_with(&self, reference: f64, sigmas: f64, slack: f64) -> bool {
        (self.mean - reference).abs() <= sigmas * self.std_error + slack
    }
}

fn require_trials(trials: usize, min: usize) -> Result<()> {
    if trials < min {
        return Err(Error::InvalidArgument(format!(
            "need at least {min} trials, got {trials}"
        )));
    }
    Ok(())
}

/// Monte Carlo check of the rotation-average kernel identity: for a
/// unit-norm degree-`k` zonal `g`, the Haar average of
/// `g(U^-1 x) g(U^-1 y)` equals `G_k(<x, y>)`.
pub fn rotation_average_kernel(
    n: usize,
    k: usize,
    x: &UnitVector,
    y: &UnitVector,
    pole: &UnitVector,
    trials: usize,
    rng: &mut RngStream,
) -> Result<McEstimate> {
    require_trials(trials, 100)?;
    let nk = harmonic_dim(n, k)? as f64;
    let eval = GegenbauerEvaluator::new(n, k)?;
    let stream = rng.trial_family();
    let samples: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(i);
            let basis = sample_haar_basis(&mut rng, n).expect("n >= 1");
            // g(U^-1 x) = sqrt(N_k) G_k(<x, U pole>)
            let moved = basis.apply(pole.coords());
            let gx = eval.eval_unchecked(k, dot(x.coords(), &moved).clamp(-1.0, 1.0));
            let gy = eval.eval_unchecked(k, dot(y.coords(), &moved).clamp(-1.0, 1.0));
            nk * gx * gy
        })
        .collect();
    Ok(McEstimate::from_samples(&samples))
}

/// Monte Carlo check of the projection-energy identity: the Haar average
/// of `(int f(Ux) g(x) dsigma)^2` equals `E_k / N_k` for unit-norm
/// `g` of degree `k`. Returns the estimate and the quadrature reference.
pub fn rotation_average_projection(
    f: &(impl SphereFn + Sync),
    k: usize,
    pole: &UnitVector,
    trials: usize,
    rng: &mut RngStream,
    grid: &SphereGrid,
) -> Result<(McEstimate, f64)> {
    require_trials(trials, 100)?;
    let n = grid.dim();
    let zonal = ZonalHarmonic::new(n, k, pole.clone())?;
    let zonal_values = zonal.values_on(grid);
    let f_values = f.values_on(grid);
    let (_, energy) = crate::harmonics::zonal::project_degree(&f_values, k, grid)?;
    let reference = energy / harmonic_dim(n, k)? as f64;

    let weights = grid.weights();
    let stream = rng.trial_family();
    let samples: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(i);
            let basis = sample_haar_basis(&mut rng, n).expect("n >= 1");
            let mut acc = 0.0;
            for idx in 0..grid.len() {
                let moved = basis.apply(grid.node(idx));
                acc += weights[idx] * f.eval(&moved) * zonal_values[idx];
            }
            acc * acc
        })
        .collect();
    Ok((McEstimate::from_samples(&samples), reference))
}

/// Empirical vs exact one-round decay under orthogonal symmetrization.
#[derive(Clone, Copy, Debug)]
pub struct BasisDecayReport {
    pub empirical: McEstimate,
    pub exact: f64,
    pub upper_bound: f64,
}

/// Monte Carlo mean of `|g'|^2 / |g|^2` over Haar bases, where `g'` is the
/// orthogonal symmetrization of a degree-`k` zonal computed by exact sign
/// enumeration at the grid nodes. The mean must match
/// `dim(invariant)/dim(full)`, strictly below `(k/(n-2+k))^(k/2)`.
pub fn basis_symmetrization_ratio(
    n: usize,
    k: usize,
    trials: usize,
    rng: &mut RngStream,
    grid: &SphereGrid,
) -> Result<BasisDecayReport> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidArgument(
            "basis symmetrization decay needs even k >= 2".into(),
        ));
    }
    require_trials(trials, 500)?;
    let exact = symmetrization_ratio_exact(n, k)?;
    let upper_bound = symmetrization_ratio_upper_bound(n, k);
    debug_assert!(exact < upper_bound);

    let stream = rng.trial_family();
    let samples: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(i);
            let pole = sample_unit_sphere(&mut rng, n).expect("n >= 2");
            let g = ZonalHarmonic::new(n, k, pole).expect("valid zonal");
            let basis = sample_haar_basis(&mut rng, n).expect("n >= 1");
            let averager = SignFlipAverager::exact(&basis).expect("n <= enumeration cap");
            let mut norm_g = 0.0;
            let mut norm_sym = 0.0;
            for idx in 0..grid.len() {
                let x = grid.node(idx);
                let w = grid.weights()[idx];
                let v = g.eval(x);
                let s = averager.average(&g, x);
                norm_g += w * v * v;
                norm_sym += w * s * s;
            }
            norm_sym / norm_g
        })
        .collect();
    Ok(BasisDecayReport {
        empirical: McEstimate::from_samples(&samples),
        exact,
        upper_bound,
    })
}

/// Monte Carlo mean of `|f'|_2 / |f|_2` over Haar bases for a zero-mean
/// `f`; bounded by `sqrt(2/n)` in expectation.
pub fn zero_mean_norm_contraction(
    f: &(impl SphereFn + Sync),
    trials: usize,
    rng: &mut RngStream,
    grid: &SphereGrid,
) -> Result<McEstimate> {
    require_trials(trials, 500)?;
    let n = grid.dim();
    let values = f.values_on(grid);
    let mean = grid.integrate_values(&values);
    if mean.abs() > grid.tolerance() {
        return Err(Error::InvalidArgument(format!(
            "f is not zero-mean: integral {mean:.3e} exceeds the grid tolerance"
        )));
    }
    let norm_f = grid.norm_l2(&values);
    let stream = rng.trial_family();
    let samples: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(i);
            let basis = sample_haar_basis(&mut rng, n).expect("n >= 1");
            let averager = SignFlipAverager::exact(&basis).expect("n <= enumeration cap");
            let mut norm_sym = 0.0;
            for idx in 0..grid.len() {
                let s = averager.average(f, grid.node(idx));
                norm_sym += grid.weights()[idx] * s * s;
            }
            norm_sym.max(0.0).sqrt() / norm_f
        })
        .collect();
    Ok(McEstimate::from_samples(&samples))
}

/// Empirical vs exact decay under a single Minkowski symmetrization in a
/// uniform random direction: mean of `|t_u g|^2 / |g|^2` against
/// `(n - 2 + k) / (n - 2 + 2k)`.
pub fn single_direction_ratio(
    n: usize,
    k: usize,
    trials: usize,
    rng: &mut RngStream,
    grid: &SphereGrid,
) -> Result<(McEstimate, f64)> {
    require_trials(trials, 500)?;
    let exact = crate::harmonics::inequalities::single_direction_ratio_exact(n, k);
    let stream = rng.trial_family();
    let samples: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(i);
            let pole = sample_unit_sphere(&mut rng, n).expect("n >= 2");
            let g = ZonalHarmonic::new(n, k, pole).expect("valid zonal");
            let u = sample_unit_sphere(&mut rng, n).expect("n >= 2");
            let mut norm_g = 0.0;
            let mut norm_avg = 0.0;
            let mut reflected = vec![0.0; n];
            for idx in 0..grid.len() {
                let x = grid.node(idx);
                let w = grid.weights()[idx];
                reflected.copy_from_slice(x);
                reflect_in_place(&mut reflected, u.coords());
                let v = g.eval(x);
                let avg = 0.5 * (v + g.eval(&reflected));
                norm_g += w * v * v;
                norm_avg += w * avg * avg;
            }
            norm_avg / norm_g
        })
        .collect();
    Ok((McEstimate::from_samples(&samples), exact))
}

/// Sup-norm bound report for a degree-`k` harmonic.
#[derive(Clone, Copy, Debug)]
pub struct SupNormReport {
    pub sup: f64,
    pub l2: f64,
    pub dim_sqrt: f64,
    pub holds: bool,
}

/// Check `sup |g| <= sqrt(N_k) |g|_2 (1 + tau)` over the grid nodes.
pub fn sup_norm_check(
    n: usize,
    k: usize,
    g: &(impl SphereFn + Sync),
    grid: &SphereGrid,
) -> Result<SupNormReport> {
    let values = g.values_on(grid);
    if !values.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("harmonic values"));
    }
    let sup = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let l2 = grid.norm_l2(&values);
    let dim_sqrt = (harmonic_dim(n, k)? as f64).sqrt();
    let holds = sup <= dim_sqrt * l2 * (1.0 + grid.tolerance());
    Ok(SupNormReport { sup, l2, dim_sqrt, holds })
}
