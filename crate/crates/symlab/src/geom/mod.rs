//! Euclidean primitives: points, unit vectors, reflections, Haar-random
//! orthonormal bases, uniform sphere sampling and quadrature grids.

mod grid;
mod rng;

pub use grid::{gauss_legendre, GridScheme, SphereGrid};
pub use rng::{mix64, RngStream};

use crate::error::{Error, Result};
use crate::tol;

/// Point of `R^n`, `n >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "points need dimension >= 2, got {}",
                coords.len()
            )));
        }
        if !coords.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite("point coordinates"));
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }
}

/// Unit vector of `S^{n-1}`; the constructor enforces `| |x| - 1 | <= 1e-12`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector {
    coords: Vec<f64>,
}

impl UnitVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 1 {
            return Err(Error::InvalidArgument("empty unit vector".into()));
        }
        if !coords.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite("unit vector coordinates"));
        }
        let n = norm(&coords);
        if (n - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::InvalidArgument(format!(
                "vector norm {n} is not 1 within {:.0e}",
                tol::UNIT_NORM
            )));
        }
        Ok(Self { coords })
    }

    /// Rescale an arbitrary nonzero vector onto the sphere.
    pub fn normalize(coords: &[f64]) -> Result<Self> {
        let n = norm(coords);
        if !n.is_finite() || n < 1e-300 {
            return Err(Error::InvalidArgument(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        let coords = coords.iter().map(|c| c / n).collect();
        Ok(Self { coords })
    }

    /// Standard basis vector `e_i`.
    pub fn axis(dim: usize, i: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn negated(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Reflection `x - 2 <x,u> u` across the hyperplane through the origin
/// orthogonal to `u`. An involution and an isometry.
pub fn reflect(x: &Point, u: &UnitVector) -> Result<Point> {
    if x.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: x.dim(),
        });
    }
    let mut coords = x.coords.clone();
    reflect_in_place(&mut coords, u.coords());
    Ok(Point { coords })
}

/// Same reflection on a unit vector; the image stays on the sphere.
pub fn reflect_unit(x: &UnitVector, u: &UnitVector) -> Result<UnitVector> {
    if x.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: x.dim(),
        });
    }
    let mut coords = x.coords.clone();
    reflect_in_place(&mut coords, u.coords());
    Ok(UnitVector { coords })
}

pub(crate) fn reflect_in_place(x: &mut [f64], u: &[f64]) {
    let s = 2.0 * dot(x, u);
    for (xi, ui) in x.iter_mut().zip(u) {
        *xi -= s * ui;
    }
}

/// Orthonormal basis `{v_1, .., v_n}` of `R^n`, stored column-wise.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis {
    columns: Vec<UnitVector>,
}

impl OrthonormalBasis {
    pub fn new(columns: Vec<UnitVector>) -> Result<Self> {
        let n = columns.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty basis".into()));
        }
        for c in &columns {
            if c.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.dim(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let d = dot(columns[i].coords(), columns[j].coords());
                if d.abs() > tol::ORTHOGONALITY {
                    return Err(Error::InvalidArgument(format!(
                        "columns {i} and {j} are not orthogonal: <v_i,v_j> = {d:.3e}"
                    )));
                }
            }
        }
        Ok(Self { columns })
    }

    /// Standard basis of `R^n`.
    pub fn standard(n: usize) -> Self {
        Self {
            columns: (0..n).map(|i| UnitVector::axis(n, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, i: usize) -> &UnitVector {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[UnitVector] {
        &self.columns
    }

    /// Coordinates of `x` in this basis: `(<x,v_1>, .., <x,v_n>)`,
    /// i.e. `U^T x` for the matrix `U` with columns `v_i`.
    pub fn coords_in_basis(&self, x: &[f64]) -> Vec<f64> {
        self.columns.iter().map(|v| dot(x, v.coords())).collect()
    }

    /// `U c = sum_i c_i v_i`, the inverse of [`Self::coords_in_basis`].
    pub fn from_coords(&self, c: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for (ci, v) in c.iter().zip(&self.columns) {
            for (o, vi) in out.iter_mut().zip(v.coords()) {
                *o += ci * vi;
            }
        }
        out
    }

    /// Apply the orthogonal matrix `U` (columns `v_i`) to `x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.from_coords(x)
    }

    /// Max absolute deviation of `U^T U` from the identity.
    pub fn gram_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = dot(self.columns[i].coords(), self.columns[j].coords());
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d - target).abs());
            }
        }
        worst
    }
}

/// Haar-distributed orthonormal basis: Gram-Schmidt orthonormalization of
/// i.i.d. standard Gaussian columns. This is the QR factorization with the
/// positive-diagonal sign convention on R, whose Q factor is exactly
/// Haar-distributed on O(n). `n = 1` is permitted and yields `+1` or `-1`
/// with equal probability.
pub fn sample_haar_basis(rng: &mut RngStream, n: usize) -> Result<OrthonormalBasis> {
    if n == 0 {
        return Err(Error::InvalidArgument("basis dimension must be >= 1".into()));
    }
    loop {
        let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut degenerate = false;
        for _ in 0..n {
            let mut v: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            for q in &columns {
                let c = dot(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
            let len = norm(&v);
            if len < 1e-8 {
                degenerate = true;
                break;
            }
            for vi in v.iter_mut() {
                *vi /= len;
            }
            columns.push(v);
        }
        if degenerate {
            continue; // resample; probability ~ 0
        }
        let columns = columns
            .into_iter()
            .map(|c| UnitVector { coords: c })
            .collect();
        return Ok(OrthonormalBasis { columns });
    }
}

/// Uniform point of `S^{n-1}` (normalized Gaussian vector), `n >= 2`.
pub fn sample_unit_sphere(rng: &mut RngStream, n: usize) -> Result<UnitVector> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "sphere sampling needs dimension >= 2".into(),
        ));
    }
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let len = norm(&v);
        if len > 1e-8 {
            return Ok(UnitVector {
                coords: v.into_iter().map(|c| c / len).collect(),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reflect_coordinate_axis() {
        let x = Point::new(vec![3.0, 4.0]).unwrap();
        let u = UnitVector::axis(2, 1);
        let r = reflect(&x, &u).unwrap();
        assert_eq!(r.coords(), &[3.0, -4.0]);
    }

    #[test]
    fn reflect_fixes_the_hyperplane() {
        // x orthogonal to u stays put
        let x = Point::new(vec![1.0, 2.0, 0.0]).unwrap();
        let u = UnitVector::axis(3, 2);
        let r = reflect(&x, &u).unwrap();
        assert_eq!(r.coords(), x.coords());
    }

    #[test]
    fn reflect_negates_the_axis() {
        let u = UnitVector::normalize(&[1.0, 1.0]).unwrap();
        let x = Point::new(u.coords().to_vec()).unwrap();
        let r = reflect(&x, &u).unwrap();
        for (ri, ui) in r.coords().iter().zip(u.coords()) {
            assert_abs_diff_eq!(*ri, -ui, epsilon = 1e-15);
        }
    }

    #[test]
    fn reflect_dimension_mismatch() {
        let x = Point::new(vec![1.0, 0.0, 0.0]).unwrap();
        let u = UnitVector::axis(2, 0);
        assert!(reflect(&x, &u).is_err());
    }

    #[test]
    fn reflect_involution_and_isometry() {
        let mut rng = RngStream::new(7);
        for n in 2..=6 {
            for _ in 0..50 {
                let u = sample_unit_sphere(&mut rng, n).unwrap();
                let x = Point::new((0..n).map(|_| 3.0 * rng.normal()).collect()).unwrap();
                let r = reflect(&x, &u).unwrap();
                assert_abs_diff_eq!(r.norm(), x.norm(), epsilon = crate::tol::ISOMETRY);
                let back = reflect(&r, &u).unwrap();
                for (a, b) in back.coords().iter().zip(x.coords()) {
                    assert_abs_diff_eq!(*a, *b, epsilon = crate::tol::ISOMETRY);
                }
            }
        }
    }

    #[test]
    fn haar_basis_is_orthonormal() {
        let mut rng = RngStream::new(1);
        for n in 1..=8 {
            let b = sample_haar_basis(&mut rng, n).unwrap();
            assert!(b.gram_defect() <= crate::tol::ORTHOGONALITY);
        }
    }

    #[test]
    fn haar_dimension_one_is_a_fair_sign() {
        let mut rng = RngStream::new(2);
        let mut plus = 0usize;
        let draws = 10_000;
        for _ in 0..draws {
            let b = sample_haar_basis(&mut rng, 1).unwrap();
            let v = b.column(0).coords()[0];
            assert!((v.abs() - 1.0).abs() <= 1e-12);
            if v > 0.0 {
                plus += 1;
            }
        }
        let freq = plus as f64 / draws as f64;
        assert!((freq - 0.5).abs() <= 0.02, "sign frequency {freq}");
    }

    #[test]
    fn haar_first_column_second_moment() {
        // E <v_1, e_1>^2 = 1/n by rotation invariance.
        let mut rng = RngStream::new(3);
        for n in [2usize, 3, 5] {
            let draws = 10_000;
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for _ in 0..draws {
                let b = sample_haar_basis(&mut rng, n).unwrap();
                let c = b.column(0).coords()[0];
                sum += c * c;
                sumsq += c * c * c * c;
            }
            let mean = sum / draws as f64;
            let var = (sumsq / draws as f64 - mean * mean).max(0.0);
            let se = (var / draws as f64).sqrt();
            assert!(
                (mean - 1.0 / n as f64).abs() <= 3.0 * se,
                "n={n}: mean {mean}, se {se}"
            );
        }
    }

    #[test]
    fn haar_rotation_invariance_two_sample() {
        // <v_1, w> and <v_1, w'> must be identically distributed for any
        // fixed w, w'. Two-sample Kolmogorov-Smirnov at significance 0.01.
        let n = 4;
        let draws = 10_000;
        let mut rng = RngStream::new(11);
        let w = UnitVector::axis(n, 0);
        let wp = UnitVector::normalize(&[0.3, -0.5, 0.7, 0.4]).unwrap();
        let mut a: Vec<f64> = Vec::with_capacity(draws);
        let mut b: Vec<f64> = Vec::with_capacity(draws);
        for _ in 0..draws {
            let basis = sample_haar_basis(&mut rng, n).unwrap();
            a.push(dot(basis.column(0).coords(), w.coords()));
            let basis = sample_haar_basis(&mut rng, n).unwrap();
            b.push(dot(basis.column(0).coords(), wp.coords()));
        }
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut d: f64 = 0.0;
        let (mut i, mut j) = (0usize, 0usize);
        while i < draws && j < draws {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            d = d.max((i as f64 / draws as f64 - j as f64 / draws as f64).abs());
        }
        // c(0.01) = 1.628 for the two-sample statistic
        let critical = 1.628 * (2.0 / draws as f64).sqrt();
        assert!(d <= critical, "KS statistic {d} exceeds {critical}");
    }

    #[test]
    fn sphere_sampler_norm_and_moments() {
        let mut rng = RngStream::new(4);
        for n in [2usize, 3, 5] {
            let draws = 10_000;
            let mut mean = vec![0.0; n];
            let mut sum_x1sq = 0.0;
            let mut sum_x1quad = 0.0;
            for _ in 0..draws {
                let v = sample_unit_sphere(&mut rng, n).unwrap();
                assert!((norm(v.coords()) - 1.0).abs() <= 1e-12);
                for (m, c) in mean.iter_mut().zip(v.coords()) {
                    *m += c;
                }
                let x1 = v.coords()[0];
                sum_x1sq += x1 * x1;
                sum_x1quad += x1 * x1 * x1 * x1;
            }
            for m in mean.iter_mut() {
                *m /= draws as f64;
            }
            assert!(norm(&mean) <= 0.05, "mean vector norm {}", norm(&mean));
            let m2 = sum_x1sq / draws as f64;
            let var = (sum_x1quad / draws as f64 - m2 * m2).max(0.0);
            let se = (var / draws as f64).sqrt();
            assert!((m2 - 1.0 / n as f64).abs() <= 3.0 * se);
        }
    }

    #[test]
    fn determinism_across_streams() {
        let mut a = RngStream::new(123);
        let mut b = RngStream::new(123);
        for n in [2usize, 5] {
            let ba = sample_haar_basis(&mut a, n).unwrap();
            let bb = sample_haar_basis(&mut b, n).unwrap();
            for (ca, cb) in ba.columns().iter().zip(bb.columns()) {
                for (x, y) in ca.coords().iter().zip(cb.coords()) {
                    assert_eq!(x.to_bits(), y.to_bits());
                }
            }
            let va = sample_unit_sphere(&mut a, n).unwrap();
            let vb = sample_unit_sphere(&mut b, n).unwrap();
            for (x, y) in va.coords().iter().zip(vb.coords()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        let mut rng = RngStream::new(0);
        assert!(sample_haar_basis(&mut rng, 0).is_err());
        assert!(sample_unit_sphere(&mut rng, 1).is_err());
    }
}
