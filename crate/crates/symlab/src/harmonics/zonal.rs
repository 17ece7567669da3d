//! Zonal harmonics, sign-flip averaging, and degree projections.
//!
//! A zonal harmonic of degree `k` with pole `a` is `x -> sqrt(N_k) G_k(<x,a>)`,
//! normalized to unit quadrature L2 norm by the reproducing-kernel identity
//! `int G_k(<a,x>)^2 dsigma = 1/N_k`. Zonal combinations are the test
//! functions for every Monte Carlo verifier: the identities being checked
//! are basis-free, so spanning S_k with an explicit solid-harmonic basis is
//! unnecessary.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{dot, OrthonormalBasis, RngStream, SphereGrid, UnitVector};
use crate::harmonics::dims::harmonic_dim;
use crate::harmonics::gegenbauer::GegenbauerEvaluator;
use crate::tol;

/// A real function on the sphere, evaluable at arbitrary unit vectors.
pub trait SphereFn: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[f64]) -> f64;

    fn values_on(&self, grid: &SphereGrid) -> Vec<f64> {
        (0..grid.len()).map(|i| self.eval(grid.node(i))).collect()
    }
}

/// Unit-norm zonal harmonic `x -> sqrt(N_k) G_k(<x, pole>)`.
#[derive(Clone, Debug)]
pub struct ZonalHarmonic {
    dim: usize,
    degree: usize,
    pole: UnitVector,
    scale: f64,
    eval: GegenbauerEvaluator,
}

impl ZonalHarmonic {
    pub fn new(n: usize, k: usize, pole: UnitVector) -> Result<Self> {
        if pole.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: pole.dim() });
        }
        let nk = harmonic_dim(n, k)? as f64;
        Ok(Self {
            dim: n,
            degree: k,
            pole,
            scale: nk.sqrt(),
            eval: GegenbauerEvaluator::new(n, k)?,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn pole(&self) -> &UnitVector {
        &self.pole
    }

    /// Value at the pole: `sqrt(N_k)` since `G_k(1) = 1`.
    pub fn pole_value(&self) -> f64 {
        self.scale
    }
}

impl SphereFn for ZonalHarmonic {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let t = dot(x, self.pole.coords()).clamp(-1.0, 1.0);
        self.scale * self.eval.eval_unchecked(self.degree, t)
    }
}

/// Linear combination of zonal harmonics plus an optional constant.
#[derive(Clone, Debug)]
pub struct ZonalMixture {
    dim: usize,
    pub terms: Vec<(f64, ZonalHarmonic)>,
    pub constant: f64,
}

impl ZonalMixture {
    pub fn new(dim: usize, terms: Vec<(f64, ZonalHarmonic)>, constant: f64) -> Self {
        Self { dim, terms, constant }
    }

    /// Random mixture: one zonal per entry of `degrees`, standard-normal
    /// coefficient, independent uniform pole.
    pub fn random(n: usize, degrees: &[usize], rng: &mut RngStream) -> Result<Self> {
        let mut terms = Vec::with_capacity(degrees.len());
        for &k in degrees {
            let pole = crate::geom::sample_unit_sphere(rng, n)?;
            let coeff = rng.normal();
            terms.push((coeff, ZonalHarmonic::new(n, k, pole)?));
        }
        Ok(Self { dim: n, terms, constant: 0.0 })
    }

    /// Random combination of `count` zonals all of one degree.
    pub fn random_single_degree(
        n: usize,
        k: usize,
        count: usize,
        rng: &mut RngStream,
    ) -> Result<Self> {
        Self::random(n, &vec![k; count], rng)
    }
}

impl SphereFn for ZonalMixture {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|(c, z)| c * z.eval(x))
                .sum::<f64>()
    }
}

/// The coordinate function `x -> x_i` restricted to the sphere.
#[derive(Clone, Copy, Debug)]
pub struct CoordinateFn {
    pub dim: usize,
    pub index: usize,
}

impl SphereFn for CoordinateFn {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> f64 {
        x[self.index]
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> SphereFn for (usize, F) {
    fn dim(&self) -> usize {
        self.0
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (self.1)(x)
    }
}

/// Averages a sphere function over coordinate sign flips in a basis.
///
/// Antipodal sign pairs are enumerated together, so odd functions cancel
/// exactly (to the last bit) and the 2^n flips cost 2^(n-1) pair terms.
pub enum SignFlipAverager<'a> {
    Exact { basis: &'a OrthonormalBasis },
    Sampled { basis: &'a OrthonormalBasis, signs: Vec<u64> },
}

impl<'a> SignFlipAverager<'a> {
    /// Exact enumeration; dimension capped by [`tol::SIGN_ENUM_MAX_DIM`].
    pub fn exact(basis: &'a OrthonormalBasis) -> Result<Self> {
        if basis.dim() > tol::SIGN_ENUM_MAX_DIM {
            return Err(Error::SignBudget {
                got: basis.dim(),
                max: tol::SIGN_ENUM_MAX_DIM,
            });
        }
        Ok(SignFlipAverager::Exact { basis })
    }

    /// Monte Carlo sign draws for dimensions beyond the exact budget.
    pub fn sampled(basis: &'a OrthonormalBasis, samples: usize, rng: &mut RngStream) -> Self {
        let signs = (0..samples).map(|_| rng.bits()).collect();
        SignFlipAverager::Sampled { basis, signs }
    }

    pub fn basis(&self) -> &OrthonormalBasis {
        match self {
            SignFlipAverager::Exact { basis } => basis,
            SignFlipAverager::Sampled { basis, .. } => basis,
        }
    }

    /// `E_eps f(sum_i eps_i <x, v_i> v_i)` at one point.
    pub fn average<F: SphereFn + ?Sized>(&self, f: &F, x: &[f64]) -> f64 {
        self.average_with_se(f, x).0
    }

    /// Average plus the Monte Carlo standard error (zero in exact mode).
    pub fn average_with_se<F: SphereFn + ?Sized>(&self, f: &F, x: &[f64]) -> (f64, f64) {
        let basis = self.basis();
        let n = basis.dim();
        let coords = basis.coords_in_basis(x);
        let mut flipped = vec![0.0; n];
        let mut point = vec![0.0; n];
        match self {
            SignFlipAverager::Exact { .. } => {
                let pairs: u64 = 1 << (n - 1);
                let mut acc = 0.0;
                for mask in 0..pairs {
                    // coordinate 0 fixed positive; antipode handled in-pair
                    flipped[0] = coords[0];
                    for i in 1..n {
                        let sign = if mask >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 };
                        flipped[i] = sign * coords[i];
                    }
                    signed_point(basis, &flipped, &mut point);
                    let plus = f.eval(&point);
                    for p in point.iter_mut() {
                        *p = -*p;
                    }
                    let minus = f.eval(&point);
                    acc += 0.5 * (plus + minus);
                }
                (acc / pairs as f64, 0.0)
            }
            SignFlipAverager::Sampled { signs, .. } => {
                let mut sum = 0.0;
                let mut sumsq = 0.0;
                for word in signs {
                    for i in 0..n {
                        let sign = if word >> (i % 64) & 1 == 1 { -1.0 } else { 1.0 };
                        flipped[i] = sign * coords[i];
                    }
                    signed_point(basis, &flipped, &mut point);
                    let plus = f.eval(&point);
                    for p in point.iter_mut() {
                        *p = -*p;
                    }
                    let v = 0.5 * (plus + f.eval(&point));
                    sum += v;
                    sumsq += v * v;
                }
                let m = signs.len() as f64;
                let mean = sum / m;
                let var = (sumsq / m - mean * mean).max(0.0);
                (mean, (var / m).sqrt())
            }
        }
    }
}

fn signed_point(basis: &OrthonormalBasis, coords: &[f64], out: &mut [f64]) {
    out.fill(0.0);
    for (c, v) in coords.iter().zip(basis.columns()) {
        for (o, vi) in out.iter_mut().zip(v.coords()) {
            *o += c * vi;
        }
    }
}

/// Convenience wrapper: one exact sign average at one point.
pub fn sign_average(f: &dyn SphereFn, basis: &OrthonormalBasis, x: &[f64]) -> Result<f64> {
    Ok(SignFlipAverager::exact(basis)?.average(f, x))
}

/// Sign-average `f` at every grid node: the orthogonal symmetrization of
/// `f` with respect to `basis`, sampled on `grid`.
pub fn symmetrize_on_grid<F: SphereFn + ?Sized>(
    f: &F,
    basis: &OrthonormalBasis,
    grid: &SphereGrid,
) -> Result<Vec<f64>> {
    let averager = SignFlipAverager::exact(basis)?;
    Ok((0..grid.len())
        .into_par_iter()
        .map(|i| averager.average(f, grid.node(i)))
        .collect())
}

/// Per-degree quadrature energies `E_k` of a grid-sampled function.
#[derive(Clone, Debug)]
pub struct DegreeSpectrum {
    pub energies: Vec<f64>,
    pub k_max: usize,
    /// Count of small negative energies clamped to zero (quadrature noise).
    pub clamped: usize,
}

impl DegreeSpectrum {
    pub fn total(&self) -> f64 {
        self.energies.iter().sum()
    }
}

fn check_values(values: &[f64], grid: &SphereGrid) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), got: values.len() });
    }
    if !values.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("grid samples"));
    }
    if grid.len() > tol::ENERGY_NODE_CAP {
        return Err(Error::SizeGuard(format!(
            "kernel double sums are capped at {} nodes, grid has {}; use a coarser grid for projections",
            tol::ENERGY_NODE_CAP,
            grid.len()
        )));
    }
    Ok(())
}

/// Kernel double sums on Monte Carlo grids exclude the diagonal `i = j`
/// (whose `G_k(1) = 1` terms would bias every energy up by about
/// `N_k |f|^2 / m`) and rescale by the pair count, the standard unbiased
/// pair-average. Tensor-product rules integrate the smooth kernel exactly
/// and keep the full sum.
fn diagonal_correction(grid: &SphereGrid) -> (bool, f64) {
    match grid.scheme() {
        crate::geom::GridScheme::MonteCarlo => {
            let m = grid.len() as f64;
            (true, m / (m - 1.0))
        }
        _ => (false, 1.0),
    }
}

/// Kernel projection onto degree `k`:
/// `(Proj f)(x) = N_k int G_k(<x,y>) f(y) dsigma(y)` by quadrature,
/// returning the projected node values and the energy `E_k`.
pub fn project_degree(
    values: &[f64],
    k: usize,
    grid: &SphereGrid,
) -> Result<(Vec<f64>, f64)> {
    check_values(values, grid)?;
    let n = grid.dim();
    let nk = harmonic_dim(n, k)? as f64;
    let eval = GegenbauerEvaluator::new(n, k)?;
    let weights = grid.weights();
    let (skip_diagonal, pair_scale) = diagonal_correction(grid);
    let projected: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let xi = grid.node(i);
            let mut acc = 0.0;
            for j in 0..grid.len() {
                if skip_diagonal && j == i {
                    continue;
                }
                let t = dot(xi, grid.node(j)).clamp(-1.0, 1.0);
                acc += weights[j] * values[j] * eval.eval_unchecked(k, t);
            }
            nk * pair_scale * acc
        })
        .collect();
    let energy: f64 = weights
        .iter()
        .zip(values)
        .zip(&projected)
        .map(|((w, f), p)| w * f * p)
        .sum();
    Ok((projected, energy.max(0.0)))
}

/// All energies `E_0 .. E_kmax` in one kernel pass.
pub fn spectrum(values: &[f64], k_max: usize, grid: &SphereGrid) -> Result<DegreeSpectrum> {
    check_values(values, grid)?;
    let n = grid.dim();
    let eval = GegenbauerEvaluator::new(n, k_max.max(1))?;
    let weights = grid.weights();
    let (skip_diagonal, pair_scale) = diagonal_correction(grid);
    let partials: Vec<Vec<f64>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let xi = grid.node(i);
            let mut g = vec![0.0; k_max + 1];
            let mut acc = vec![0.0; k_max + 1];
            for j in 0..grid.len() {
                if skip_diagonal && j == i {
                    continue;
                }
                let t = dot(xi, grid.node(j)).clamp(-1.0, 1.0);
                eval.eval_all(t, &mut g);
                let scale = weights[j] * values[j];
                for (a, gk) in acc.iter_mut().zip(&g) {
                    *a += scale * gk;
                }
            }
            let scale = pair_scale * weights[i] * values[i];
            for a in acc.iter_mut() {
                *a *= scale;
            }
            acc
        })
        .collect();
    let mut energies = vec![0.0; k_max + 1];
    for p in &partials {
        for (e, v) in energies.iter_mut().zip(p) {
            *e += v;
        }
    }
    let mut clamped = 0;
    for (k, e) in energies.iter_mut().enumerate() {
        *e *= harmonic_dim(n, k)? as f64;
        if *e < 0.0 {
            // Monte Carlo pair averages legitimately fluctuate below zero;
            // exact product rules may only do so at rounding level
            debug_assert!(
                skip_diagonal || *e > -tol::ENERGY_CLAMP,
                "energy {e} below the clamp threshold"
            );
            *e = 0.0;
            clamped += 1;
        }
    }
    Ok(DegreeSpectrum { energies, k_max, clamped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::sample_unit_sphere;
    use approx::assert_abs_diff_eq;

    fn grid3() -> SphereGrid {
        SphereGrid::product3(24).unwrap()
    }

    #[test]
    fn zonal_norm_and_pole_values() {
        let mut rng = RngStream::new(1);
        for (n, k, grid) in [
            (2usize, 3usize, SphereGrid::angular(512).unwrap()),
            (3, 2, grid3()),
            (3, 5, grid3()),
            (4, 2, SphereGrid::product4(16).unwrap()),
        ] {
            let pole = sample_unit_sphere(&mut rng, n).unwrap();
            let z = ZonalHarmonic::new(n, k, pole.clone()).unwrap();
            let values = z.values_on(&grid);
            let norm = grid.norm_l2(&values);
            assert!(
                (norm - 1.0).abs() <= 2.0 * grid.tolerance(),
                "n={n} k={k}: norm {norm}, tau {}",
                grid.tolerance()
            );
            let nk = harmonic_dim(n, k).unwrap() as f64;
            assert_abs_diff_eq!(z.eval(pole.coords()), nk.sqrt(), epsilon = 1e-10);
            if k % 2 == 1 {
                assert_abs_diff_eq!(z.eval(pole.negated().coords()), -nk.sqrt(), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn monte_carlo_zonal_norm_within_tolerance() {
        let mut rng = RngStream::new(5);
        let grid = SphereGrid::monte_carlo(5, 4096, &mut rng).unwrap();
        let pole = sample_unit_sphere(&mut rng, 5).unwrap();
        let z = ZonalHarmonic::new(5, 2, pole).unwrap();
        let norm = grid.norm_l2(&z.values_on(&grid));
        assert!((norm - 1.0).abs() <= 2.0 * grid.tolerance());
    }

    #[test]
    fn projection_of_zonal_concentrates_energy() {
        let grid = grid3();
        let mut rng = RngStream::new(2);
        let pole = sample_unit_sphere(&mut rng, 3).unwrap();
        let k = 3;
        let z = ZonalHarmonic::new(3, k, pole).unwrap();
        let values = z.values_on(&grid);
        let spec = spectrum(&values, 6, &grid).unwrap();
        let tau = grid.tolerance();
        for (j, e) in spec.energies.iter().enumerate() {
            if j == k {
                assert!((e - 1.0).abs() <= 5.0 * tau.max(1e-10), "E_k = {e}");
            } else {
                assert!(*e <= 5.0 * tau.max(1e-10), "E_{j} = {e}");
            }
        }
    }

    #[test]
    fn constant_is_pure_degree_zero() {
        let grid = grid3();
        let values = vec![1.0; grid.len()];
        let spec = spectrum(&values, 4, &grid).unwrap();
        assert_abs_diff_eq!(spec.energies[0], 1.0, epsilon = 1e-10);
        for e in &spec.energies[1..] {
            assert!(*e <= 1e-10);
        }
    }

    #[test]
    fn coordinate_function_energy() {
        // f = x_1 has E_1 = 1/n
        let grid = grid3();
        let f = CoordinateFn { dim: 3, index: 0 };
        let values = f.values_on(&grid);
        let (_, e1) = project_degree(&values, 1, &grid).unwrap();
        assert!((e1 - 1.0 / 3.0).abs() <= 5.0 * grid.tolerance().max(1e-12));
    }

    #[test]
    fn projection_is_idempotent() {
        let grid = grid3();
        let mut rng = RngStream::new(3);
        let f = ZonalMixture::random(3, &[1, 2, 2, 4], &mut rng).unwrap();
        let values = f.values_on(&grid);
        let (proj, e) = project_degree(&values, 2, &grid).unwrap();
        let (proj2, e2) = project_degree(&proj, 2, &grid).unwrap();
        let tol = 100.0 * grid.tolerance().max(1e-12);
        assert!((e - e2).abs() <= tol * e.max(1.0));
        for (a, b) in proj.iter().zip(&proj2) {
            assert!((a - b).abs() <= tol);
        }
    }

    #[test]
    fn parseval_on_smooth_mixture() {
        let grid = grid3();
        let mut rng = RngStream::new(4);
        let f = ZonalMixture::random(3, &[0, 1, 2, 3, 4], &mut rng).unwrap();
        let values = f.values_on(&grid);
        let spec = spectrum(&values, 5, &grid).unwrap();
        let norm2 = grid.norm_l2(&values).powi(2);
        assert!(
            (spec.total() - norm2).abs() <= 10.0 * grid.tolerance().max(1e-10) * norm2.max(1.0),
            "sum {} vs norm^2 {}",
            spec.total(),
            norm2
        );
    }

    #[test]
    fn sign_average_annihilates_odd_harmonics_exactly() {
        let mut rng = RngStream::new(6);
        for n in [3usize, 4, 5] {
            let pole = sample_unit_sphere(&mut rng, n).unwrap();
            for k in [1usize, 3] {
                let z = ZonalHarmonic::new(n, k, pole.clone()).unwrap();
                let basis = crate::geom::sample_haar_basis(&mut rng, n).unwrap();
                for _ in 0..16 {
                    let x = sample_unit_sphere(&mut rng, n).unwrap();
                    let avg = sign_average(&z, &basis, x.coords()).unwrap();
                    assert!(avg.abs() <= 1e-12, "odd degree leak {avg}");
                }
            }
        }
    }

    #[test]
    fn sign_average_fixes_invariant_functions() {
        // f(x) = sum x_i^4 is invariant under coordinate sign flips of the
        // standard basis
        let n = 4;
        let basis = OrthonormalBasis::standard(n);
        let f = (n, |x: &[f64]| x.iter().map(|v| v.powi(4)).sum::<f64>());
        let mut rng = RngStream::new(7);
        for _ in 0..8 {
            let x = sample_unit_sphere(&mut rng, n).unwrap();
            let avg = sign_average(&f, &basis, x.coords()).unwrap();
            assert_abs_diff_eq!(avg, f.eval(x.coords()), epsilon = 1e-12);
        }
    }

    #[test]
    fn sampled_averager_matches_exact() {
        let n = 5;
        let mut rng = RngStream::new(8);
        let basis = crate::geom::sample_haar_basis(&mut rng, n).unwrap();
        let pole = sample_unit_sphere(&mut rng, n).unwrap();
        let z = ZonalHarmonic::new(n, 2, pole).unwrap();
        let exact = SignFlipAverager::exact(&basis).unwrap();
        let sampled = SignFlipAverager::sampled(&basis, 4096, &mut rng);
        let x = sample_unit_sphere(&mut rng, n).unwrap();
        let (e, _) = exact.average_with_se(&z, x.coords());
        let (s, se) = sampled.average_with_se(&z, x.coords());
        assert!(se > 0.0);
        assert!((e - s).abs() <= 4.0 * se + 1e-12, "exact {e}, sampled {s}, se {se}");
    }

    #[test]
    fn exact_averager_rejects_large_dimensions() {
        let basis = OrthonormalBasis::standard(13);
        assert!(matches!(
            SignFlipAverager::exact(&basis),
            Err(Error::SignBudget { .. })
        ));
    }

    #[test]
    fn degree_is_preserved_by_symmetrization() {
        // orthogonal symmetrization of a degree-k harmonic keeps only degree k
        let grid = grid3();
        let mut rng = RngStream::new(9);
        let k = 4;
        let z = ZonalHarmonic::new(3, k, sample_unit_sphere(&mut rng, 3).unwrap()).unwrap();
        let basis = crate::geom::sample_haar_basis(&mut rng, 3).unwrap();
        let values = symmetrize_on_grid(&z, &basis, &grid).unwrap();
        let spec = spectrum(&values, 6, &grid).unwrap();
        for (j, e) in spec.energies.iter().enumerate() {
            if j != k {
                assert!(*e <= 5.0 * grid.tolerance().max(1e-10), "E_{j} = {e}");
            }
        }
    }

    #[test]
    fn energy_cap_guard() {
        let grid = SphereGrid::angular(8192).unwrap();
        let values = vec![1.0; grid.len()];
        assert!(matches!(
            project_degree(&values, 2, &grid),
            Err(Error::SizeGuard(_))
        ));
    }
}
