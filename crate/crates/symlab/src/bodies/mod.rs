//! Convex bodies represented by their support functions, with Minkowski
//! and orthogonal symmetrization operators and the ball-gauge functionals
//! (inradius, circumradius, half mean width) used to certify closeness to
//! a Euclidean ball.
//!
//! Analytic variants (balls, segments, polytopes, zonotopes) evaluate
//! exactly everywhere. A Minkowski symmetrization wraps the body lazily,
//! keeping the average `(h(v) + h(reflected v))/2` exact at the price of
//! doubling evaluation cost, so short compositions stay exact; zonotopes
//! even stay zonotopes. Orthogonal symmetrization samples onto a grid:
//! iterating the exact form costs `2^n` evaluations per node per round and
//! compounds exponentially, which is why the process drivers hand bodies
//! over to grid representation after the first round.

mod checks;
mod polygon;
mod polytope;
mod textio;

pub use checks::{
    bokowski_heil_residual, mean_width_contraction_check, small_cap_check, unit_ball_volume,
    urysohn_check, CapCheck, CheckOutcome,
};
pub use polygon::PolygonBody;
pub use polytope::{PolytopeBody3, Steiner3Outcome};
pub use textio::{from_text, read_body_text, to_text, write_body_text, BodyRecord};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{
    dot, norm, reflect_in_place, OrthonormalBasis, RngStream, SphereGrid, UnitVector,
};
use crate::harmonics::{symmetrize_on_grid, SignFlipAverager, SphereFn};
use crate::tol;

/// Convex body given by its support function evaluator.
#[derive(Clone, Debug)]
pub struct SupportBody {
    dim: usize,
    variant: Variant,
    label: Option<String>,
}

#[derive(Clone, Debug)]
pub(crate) enum Variant {
    /// Centered ball: `h(v) = r |v|`.
    Ball { radius: f64 },
    /// Vertex hull: `h(v) = max_i <p_i, v>`.
    Polytope { vertices: Vec<Vec<f64>> },
    /// Centered zonotope, Minkowski sum of segments: `h(v) = sum_i |<g_i, v>|`.
    Zonotope { generators: Vec<Vec<f64>> },
    /// Node samples on a grid, interpolated off-node.
    GridSampled { grid: Arc<SphereGrid>, values: Arc<Vec<f64>> },
    /// Lazy Minkowski symmetrization: `h(v) = (h0(v) + h0(pi_u v)) / 2`.
    MinkowskiAverage { inner: Box<SupportBody>, direction: UnitVector },
    /// Translated body `K - c`: `h(v) = h0(v) - <c, v>`.
    Shifted { inner: Box<SupportBody>, center: Vec<f64> },
}

impl SupportBody {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim < 2 || !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(
                "ball needs dim >= 2 and a positive finite radius".into(),
            ));
        }
        Ok(Self { dim, variant: Variant::Ball { radius }, label: None })
    }

    /// Centered segment `[-endpoint, endpoint]`.
    pub fn segment(endpoint: Vec<f64>) -> Result<Self> {
        let dim = endpoint.len();
        if dim < 2 || norm(&endpoint) < 1e-12 {
            return Err(Error::InvalidArgument(
                "segment needs dim >= 2 and a nonzero endpoint".into(),
            ));
        }
        Ok(Self {
            dim,
            variant: Variant::Zonotope { generators: vec![endpoint] },
            label: None,
        })
    }

    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let dim = vertices.first().map(|v| v.len()).unwrap_or(0);
        if dim < 2 || vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidArgument(
                "polytope needs dim >= 2 and consistent vertex dimensions".into(),
            ));
        }
        Ok(Self { dim, variant: Variant::Polytope { vertices }, label: None })
    }

    pub fn zonotope(generators: Vec<Vec<f64>>) -> Result<Self> {
        let dim = generators.first().map(|v| v.len()).unwrap_or(0);
        if dim < 2 || generators.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidArgument(
                "zonotope needs dim >= 2 and consistent generator dimensions".into(),
            ));
        }
        Ok(Self { dim, variant: Variant::Zonotope { generators }, label: None })
    }

    /// Axis-aligned cube `[-half, half]^n` as a zonotope.
    pub fn cube(dim: usize, half: f64) -> Result<Self> {
        let generators = (0..dim)
            .map(|i| {
                let mut g = vec![0.0; dim];
                g[i] = half;
                g
            })
            .collect();
        Self::zonotope(generators).map(|b| b.labeled("cube"))
    }

    /// Regular simplex with unit circumradius, centered at the origin:
    /// the n+1 standard basis vectors of `R^(n+1)`, centered, expressed in
    /// an orthonormal basis of their hyperplane.
    pub fn simplex(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument("simplex needs dim >= 2".into()));
        }
        let n = dim;
        let centroid = 1.0 / (n + 1) as f64;
        // orthonormal basis of the hyperplane orthogonal to (1,..,1) in R^(n+1)
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = vec![-centroid; n + 1];
            v[j] += 1.0;
            for q in &basis {
                let c = dot(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
            let len = norm(&v);
            for vi in v.iter_mut() {
                *vi /= len;
            }
            basis.push(v);
        }
        let mut vertices = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut w = vec![-centroid; n + 1];
            w[i] += 1.0;
            let coords: Vec<f64> = basis.iter().map(|b| dot(&w, b)).collect();
            vertices.push(coords);
        }
        let r = norm(&vertices[0]);
        for v in vertices.iter_mut() {
            for x in v.iter_mut() {
                *x /= r;
            }
        }
        Self::polytope(vertices).map(|b| b.labeled("simplex"))
    }

    pub fn from_grid_values(grid: Arc<SphereGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), got: values.len() });
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("grid-sampled support values"));
        }
        Ok(Self {
            dim: grid.dim(),
            variant: Variant::GridSampled { grid, values: Arc::new(values) },
            label: None,
        })
    }

    /// Translated copy `K - center`.
    pub fn shifted(&self, center: Vec<f64>) -> Result<Self> {
        if center.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: center.len() });
        }
        Ok(Self {
            dim: self.dim,
            variant: Variant::Shifted { inner: Box::new(self.clone()), center },
            label: self.label.clone(),
        })
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn variant(&self) -> &Variant {
        &self.variant
    }

    pub fn kind(&self) -> &'static str {
        match &self.variant {
            Variant::Ball { .. } => "ball",
            Variant::Polytope { .. } => "polytope",
            Variant::Zonotope { generators } if generators.len() == 1 => "segment",
            Variant::Zonotope { .. } => "zonotope",
            Variant::GridSampled { .. } => "grid-sampled",
            Variant::MinkowskiAverage { .. } => "minkowski-average",
            Variant::Shifted { .. } => "shifted",
        }
    }

    /// Support function on arbitrary vectors (positively homogeneous).
    pub fn eval_raw(&self, v: &[f64]) -> f64 {
        debug_assert_eq!(v.len(), self.dim);
        match &self.variant {
            Variant::Ball { radius } => radius * norm(v),
            Variant::Polytope { vertices } => vertices
                .iter()
                .map(|p| dot(p, v))
                .fold(f64::NEG_INFINITY, f64::max),
            Variant::Zonotope { generators } => {
                generators.iter().map(|g| dot(g, v).abs()).sum()
            }
            Variant::GridSampled { grid, values } => {
                let len = norm(v);
                if len < 1e-300 {
                    return 0.0;
                }
                let unit: Vec<f64> = v.iter().map(|x| x / len).collect();
                len * grid.interpolate(values, &unit)
            }
            Variant::MinkowskiAverage { inner, direction } => {
                let mut reflected = v.to_vec();
                reflect_in_place(&mut reflected, direction.coords());
                0.5 * (inner.eval_raw(v) + inner.eval_raw(&reflected))
            }
            Variant::Shifted { inner, center } => inner.eval_raw(v) - dot(center, v),
        }
    }

    /// Support function at a unit direction.
    pub fn support_eval(&self, v: &UnitVector) -> Result<f64> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim() });
        }
        Ok(self.eval_raw(v.coords()))
    }

    /// Node samples on a grid (reused directly when the body already lives
    /// on this grid).
    pub fn values_on_grid(&self, grid: &SphereGrid) -> Vec<f64> {
        if let Variant::GridSampled { grid: own, values } = &self.variant {
            if std::ptr::eq(own.as_ref(), grid) {
                return values.as_ref().clone();
            }
        }
        (0..grid.len()).map(|i| self.eval_raw(grid.node(i))).collect()
    }

    /// Minkowski symmetrization with respect to `u`: the support function
    /// becomes the average of itself and its reflection. Balls are fixed,
    /// zonotopes stay zonotopes with generators split in two, every other
    /// variant wraps lazily (evaluation cost doubles per application).
    pub fn minkowski_symmetrize(&self, u: &UnitVector) -> Result<SupportBody> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: u.dim() });
        }
        let variant = match &self.variant {
            Variant::Ball { radius } => Variant::Ball { radius: *radius },
            Variant::Zonotope { generators } => {
                let mut out = Vec::with_capacity(2 * generators.len());
                for g in generators {
                    let half: Vec<f64> = g.iter().map(|x| 0.5 * x).collect();
                    let mut reflected = half.clone();
                    reflect_in_place(&mut reflected, u.coords());
                    out.push(half);
                    out.push(reflected);
                }
                Variant::Zonotope { generators: out }
            }
            _ => Variant::MinkowskiAverage {
                inner: Box::new(self.clone()),
                direction: u.clone(),
            },
        };
        Ok(SupportBody { dim: self.dim, variant, label: self.label.clone() })
    }

    /// Orthogonal symmetrization with respect to a basis: the exact sign
    /// average of the support function, sampled on `grid`. Dimensions above
    /// the exact enumeration budget must use
    /// [`Self::orthogonal_symmetrize_sampled`].
    pub fn orthogonal_symmetrize(
        &self,
        basis: &OrthonormalBasis,
        grid: &Arc<SphereGrid>,
    ) -> Result<SupportBody> {
        if basis.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: basis.dim() });
        }
        let values = symmetrize_on_grid(self, basis, grid)?;
        let body = SupportBody::from_grid_values(grid.clone(), values)?;
        Ok(match &self.label {
            Some(l) => body.labeled(l.clone()),
            None => body,
        })
    }

    /// Monte Carlo sign averaging for dimensions beyond the exact budget:
    /// returns the symmetrized body and the worst per-node standard error.
    pub fn orthogonal_symmetrize_sampled(
        &self,
        basis: &OrthonormalBasis,
        grid: &Arc<SphereGrid>,
        samples: usize,
        rng: &mut RngStream,
    ) -> Result<(SupportBody, f64)> {
        if basis.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: basis.dim() });
        }
        let averager = SignFlipAverager::sampled(basis, samples, rng);
        let mut worst_se = 0.0f64;
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.len() {
            let (mean, se) = averager.average_with_se(self, grid.node(i));
            worst_se = worst_se.max(se);
            values.push(mean);
        }
        Ok((SupportBody::from_grid_values(grid.clone(), values)?, worst_se))
    }

    /// Half mean width: quadrature of the support function over the sphere.
    pub fn mean_width_half(&self, grid: &SphereGrid) -> Result<f64> {
        let values = self.values_on_grid(grid);
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("support values"));
        }
        Ok(grid.integrate_values(&values))
    }

    /// In/out radii, half mean width and the ball-closeness certificate.
    ///
    /// `r_in = min h` and `r_out = max h` over nodes, valid because
    /// `rD inside K iff h >= r` pointwise and `K inside RD iff h <= R`.
    /// Lower-dimensional zonotopes report `r_in = 0` exactly via the rank
    /// of their generator matrix; small zonotopes get the exact circumradius
    /// by sign enumeration.
    pub fn ball_gauge(&self, grid: &SphereGrid) -> Result<BallGauge> {
        let values = self.values_on_grid(grid);
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("support values"));
        }
        let mut r_in = f64::INFINITY;
        let mut r_out = f64::NEG_INFINITY;
        for v in &values {
            r_in = r_in.min(*v);
            r_out = r_out.max(*v);
        }
        if let Variant::Zonotope { generators } = &self.variant {
            if matrix_rank(generators, self.dim) < self.dim {
                r_in = 0.0;
            }
            if generators.len() <= 20 {
                r_out = zonotope_circumradius(generators, self.dim);
            }
            if r_in < 0.0 {
                return Err(Error::OriginOutside);
            }
        } else if r_in <= 0.0 {
            return Err(Error::OriginOutside);
        }
        let mean_width_half = grid.integrate_values(&values);
        Ok(BallGauge::new(r_in, r_out, mean_width_half))
    }

    /// Steiner point approximation `n * int h(u) u dsigma(u)`.
    pub fn steiner_point(&self, grid: &SphereGrid) -> Result<Vec<f64>> {
        let values = self.values_on_grid(grid);
        let n = self.dim;
        let mut point = vec![0.0; n];
        for i in 0..grid.len() {
            let w = grid.weights()[i] * values[i];
            for (p, x) in point.iter_mut().zip(grid.node(i)) {
                *p += w * x;
            }
        }
        for p in point.iter_mut() {
            *p *= n as f64;
        }
        Ok(point)
    }

    /// Translate so the Steiner point sits at the origin.
    pub fn recentered(&self, grid: &SphereGrid) -> Result<SupportBody> {
        let center = self.steiner_point(grid)?;
        self.shifted(center)
    }
}

impl SphereFn for SupportBody {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.eval_raw(x)
    }
}

/// In/out radii and mean-width certificate for closeness to a ball:
/// `eps_distance` certifies `(1-eps) M* D  inside  K  inside  (1+eps) M* D`.
#[derive(Clone, Copy, Debug)]
pub struct BallGauge {
    pub r_in: f64,
    pub r_out: f64,
    pub mean_width_half: f64,
    pub eps_distance: f64,
}

impl BallGauge {
    pub fn new(r_in: f64, r_out: f64, mean_width_half: f64) -> Self {
        let eps_distance = (r_out / mean_width_half - 1.0).max(1.0 - r_in / mean_width_half);
        Self { r_in, r_out, mean_width_half, eps_distance: eps_distance.max(0.0) }
    }

    /// Certificate against a fixed reference ball radius instead of `M*`.
    pub fn eps_vs_radius(&self, radius: f64) -> f64 {
        (self.r_out / radius - 1.0).max(1.0 - self.r_in / radius).max(0.0)
    }
}

/// Rank of a set of row vectors, with a relative pivot threshold.
fn matrix_rank(rows: &[Vec<f64>], dim: usize) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, x| a.max(x.abs()))
        .max(1e-300);
    let threshold = scale * tol::RANK_REL;
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..m.len()).max_by(|&a, &b| {
            m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap()
        }) else {
            break;
        };
        if m[pivot][col].abs() <= threshold {
            continue;
        }
        m.swap(rank, pivot);
        for r in (rank + 1)..m.len() {
            let f = m[r][col] / m[rank][col];
            for c in col..dim {
                m[r][c] -= f * m[rank][c];
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Exact circumradius of a centered zonotope: the farthest vertex over all
/// sign choices (antipodal pairs halved).
fn zonotope_circumradius(generators: &[Vec<f64>], dim: usize) -> f64 {
    let m = generators.len();
    if m == 0 {
        return 0.0;
    }
    let mut best = 0.0f64;
    let mut acc = vec![0.0; dim];
    for mask in 0..(1u64 << (m - 1)) {
        acc.fill(0.0);
        for (i, g) in generators.iter().enumerate() {
            let sign = if i > 0 && (mask >> (i - 1)) & 1 == 1 { -1.0 } else { 1.0 };
            for (a, x) in acc.iter_mut().zip(g) {
                *a += sign * x;
            }
        }
        best = best.max(norm(&acc));
    }
    best
}

/// Random convex polytope body: vertices drawn in a spherical shell and
/// recentred on their centroid so the origin is interior.
pub fn random_polytope_body(
    n: usize,
    vertex_count: usize,
    rng: &mut RngStream,
) -> Result<SupportBody> {
    let mut vertices = Vec::with_capacity(vertex_count);
    for _ in 0..vertex_count {
        let dir = crate::geom::sample_unit_sphere(rng, n)?;
        let r = 0.5 + 0.5 * rng.uniform();
        vertices.push(dir.coords().iter().map(|c| c * r).collect::<Vec<f64>>());
    }
    let mut centroid = vec![0.0; n];
    for v in &vertices {
        for (c, x) in centroid.iter_mut().zip(v) {
            *c += x / vertex_count as f64;
        }
    }
    for v in vertices.iter_mut() {
        for (x, c) in v.iter_mut().zip(&centroid) {
            *x -= c;
        }
    }
    SupportBody::polytope(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{sample_haar_basis, sample_unit_sphere};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn grid2() -> Arc<SphereGrid> {
        Arc::new(SphereGrid::angular(2048).unwrap())
    }

    #[test]
    fn support_examples() {
        let ball = SupportBody::ball(3, 1.0).unwrap();
        let v = UnitVector::normalize(&[1.0, 2.0, -2.0]).unwrap();
        assert_abs_diff_eq!(ball.support_eval(&v).unwrap(), 1.0, epsilon = 1e-15);

        let seg = SupportBody::segment(vec![1.0, 0.0]).unwrap();
        let v = UnitVector::normalize(&[0.6, 0.8]).unwrap();
        assert_abs_diff_eq!(seg.support_eval(&v).unwrap(), 0.6, epsilon = 1e-15);

        let square = SupportBody::cube(2, 1.0).unwrap();
        let diag = UnitVector::normalize(&[1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(
            square.support_eval(&diag).unwrap(),
            2.0f64.sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn support_dimension_mismatch() {
        let ball = SupportBody::ball(3, 1.0).unwrap();
        let v = UnitVector::axis(2, 0);
        assert!(ball.support_eval(&v).is_err());
    }

    #[test]
    fn support_is_homogeneous_and_subadditive() {
        let mut rng = RngStream::new(21);
        let bodies = vec![
            SupportBody::ball(3, 1.7).unwrap(),
            SupportBody::cube(3, 0.8).unwrap(),
            SupportBody::simplex(3).unwrap(),
            random_polytope_body(3, 12, &mut rng).unwrap(),
            SupportBody::zonotope(vec![
                vec![0.5, 0.1, 0.0],
                vec![-0.2, 0.7, 0.3],
                vec![0.0, 0.2, 0.9],
            ])
            .unwrap(),
        ];
        for body in &bodies {
            for _ in 0..50 {
                let v: Vec<f64> = (0..3).map(|_| rng.normal()).collect();
                let w: Vec<f64> = (0..3).map(|_| rng.normal()).collect();
                let lambda = rng.uniform() * 3.0 + 0.1;
                let scaled: Vec<f64> = v.iter().map(|x| lambda * x).collect();
                assert_abs_diff_eq!(
                    body.eval_raw(&scaled),
                    lambda * body.eval_raw(&v),
                    epsilon = 1e-9
                );
                let sum: Vec<f64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
                assert!(
                    body.eval_raw(&sum)
                        <= body.eval_raw(&v) + body.eval_raw(&w) + tol::SUPPORT_SLACK
                );
            }
        }
    }

    #[test]
    fn grid_sampled_body_is_homogeneous_and_subadditive() {
        let grid = grid2();
        let mut rng = RngStream::new(22);
        let seed = random_polytope_body(2, 9, &mut rng).unwrap();
        let basis = sample_haar_basis(&mut rng, 2).unwrap();
        let body = seed.orthogonal_symmetrize(&basis, &grid).unwrap();
        for _ in 0..50 {
            let v: Vec<f64> = (0..2).map(|_| rng.normal()).collect();
            let lambda = rng.uniform() * 2.0 + 0.1;
            let scaled: Vec<f64> = v.iter().map(|x| lambda * x).collect();
            assert_abs_diff_eq!(
                body.eval_raw(&scaled),
                lambda * body.eval_raw(&v),
                epsilon = 1e-9
            );
            let w: Vec<f64> = (0..2).map(|_| rng.normal()).collect();
            let sum: Vec<f64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            // interpolation introduces its own tolerance on top of the slack
            assert!(
                body.eval_raw(&sum)
                    <= body.eval_raw(&v) + body.eval_raw(&w) + 10.0 * grid.interp_tolerance()
            );
        }
    }

    #[test]
    fn minkowski_fixes_balls_and_averages_segments() {
        let grid = grid2();
        let ball = SupportBody::ball(2, 0.7).unwrap();
        let u = UnitVector::normalize(&[1.0, 1.0]).unwrap();
        let after = ball.minkowski_symmetrize(&u).unwrap();
        for i in 0..grid.len() {
            assert_abs_diff_eq!(
                after.eval_raw(grid.node(i)),
                ball.eval_raw(grid.node(i)),
                epsilon = 1e-15
            );
        }

        // h'(e_1) = (h(e_1) + h(pi_u e_1))/2 = (1 + 0)/2 for the segment
        let seg = SupportBody::segment(vec![1.0, 0.0]).unwrap();
        let after = seg.minkowski_symmetrize(&u).unwrap();
        let e1 = UnitVector::axis(2, 0);
        assert_abs_diff_eq!(after.support_eval(&e1).unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn minkowski_preserves_mean_width() {
        let mut rng = RngStream::new(5);
        for n in [2usize, 3, 4, 5] {
            let grid = match n {
                2 => SphereGrid::angular(1024).unwrap(),
                3 => SphereGrid::product3(32).unwrap(),
                4 => SphereGrid::product4(16).unwrap(),
                _ => SphereGrid::monte_carlo(n, 4096, &mut rng).unwrap(),
            };
            for _ in 0..25 {
                let body = random_polytope_body(n, 10, &mut rng).unwrap();
                let u = sample_unit_sphere(&mut rng, n).unwrap();
                let before = body.mean_width_half(&grid).unwrap();
                let after = body
                    .minkowski_symmetrize(&u)
                    .unwrap()
                    .mean_width_half(&grid)
                    .unwrap();
                assert!(
                    (before - after).abs() <= 5.0 * grid.tolerance() * before.max(1.0),
                    "n={n}: {before} vs {after}"
                );
            }
        }
    }

    #[test]
    fn orthogonal_symmetrization_fixes_aligned_cube() {
        let grid = grid2();
        let cube = SupportBody::cube(2, 1.0).unwrap();
        let basis = OrthonormalBasis::standard(2);
        let after = cube.orthogonal_symmetrize(&basis, &grid).unwrap();
        for i in 0..grid.len() {
            assert_abs_diff_eq!(
                after.eval_raw(grid.node(i)),
                cube.eval_raw(grid.node(i)),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn orthogonal_symmetrization_kills_odd_part() {
        // h(x) = 1 + delta x_1 loses its odd part under any basis containing e_1
        let grid = grid2();
        let delta = 0.05;
        let body = SupportBody::ball(2, 1.0)
            .unwrap()
            .shifted(vec![-delta, 0.0])
            .unwrap();
        let basis = OrthonormalBasis::standard(2);
        let after = body.orthogonal_symmetrize(&basis, &grid).unwrap();
        for i in 0..grid.len() {
            assert_abs_diff_eq!(after.eval_raw(grid.node(i)), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn orthogonal_symmetrization_of_segment_hand_value() {
        // segment along e_1 against the diagonal basis: the four-term sign
        // average works out to (|cos t| + |sin t|)/2
        let grid = grid2();
        let seg = SupportBody::segment(vec![1.0, 0.0]).unwrap();
        let basis = OrthonormalBasis::new(vec![
            UnitVector::normalize(&[1.0, 1.0]).unwrap(),
            UnitVector::normalize(&[1.0, -1.0]).unwrap(),
        ])
        .unwrap();
        let after = seg.orthogonal_symmetrize(&basis, &grid).unwrap();
        for i in (0..grid.len()).step_by(37) {
            let x = grid.node(i);
            let expected = 0.5 * (x[0].abs() + x[1].abs());
            assert_abs_diff_eq!(after.eval_raw(x), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn orthogonal_equals_minkowski_composition() {
        let mut rng = RngStream::new(31);
        for n in [2usize, 3] {
            let grid = match n {
                2 => Arc::new(SphereGrid::angular(256).unwrap()),
                _ => Arc::new(SphereGrid::product3(16).unwrap()),
            };
            for _ in 0..5 {
                let body = random_polytope_body(n, 8, &mut rng).unwrap();
                let basis = sample_haar_basis(&mut rng, n).unwrap();
                let direct = body.orthogonal_symmetrize(&basis, &grid).unwrap();
                let mut composed = body.clone();
                for i in 0..n {
                    composed = composed.minkowski_symmetrize(basis.column(i)).unwrap();
                }
                for i in 0..grid.len() {
                    let a = direct.eval_raw(grid.node(i));
                    let b = composed.eval_raw(grid.node(i));
                    assert!((a - b).abs() <= 1e-10, "node {i}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn mean_width_examples() {
        let grid = grid2();
        let ball = SupportBody::ball(2, 1.0).unwrap();
        assert_abs_diff_eq!(ball.mean_width_half(&grid).unwrap(), 1.0, epsilon = 1e-12);

        let seg = SupportBody::segment(vec![1.0, 0.0]).unwrap();
        let mw = seg.mean_width_half(&grid).unwrap();
        assert!((mw - 2.0 / PI).abs() <= grid.tolerance());

        let square = SupportBody::cube(2, 1.0).unwrap();
        let mw = square.mean_width_half(&grid).unwrap();
        assert!((mw - 4.0 / PI).abs() <= 2.0 * grid.tolerance());
    }

    #[test]
    fn ball_gauge_examples() {
        let grid = grid2();
        let ball = SupportBody::ball(2, 1.0).unwrap();
        let g = ball.ball_gauge(&grid).unwrap();
        assert_abs_diff_eq!(g.r_in, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.r_out, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.eps_distance, 0.0, epsilon = 1e-12);

        // zonotope circumradius is exact; the inradius comes from the grid
        // minimum, resolved only to the node spacing
        let square = SupportBody::cube(2, 1.0).unwrap();
        let g = square.ball_gauge(&grid).unwrap();
        assert!((g.r_in - 1.0).abs() <= 2e-3);
        assert!((g.r_out - 2.0f64.sqrt()).abs() <= 1e-12);

        // segment after one orthogonal symmetrization: extremes of
        // (|cos| + |sin|)/2 are 1/2 and sqrt(2)/2, half mean width stays
        // 2/pi, so the certificate equals 1 - pi/4
        let seg = SupportBody::segment(vec![1.0, 0.0]).unwrap();
        let basis = OrthonormalBasis::new(vec![
            UnitVector::normalize(&[1.0, 1.0]).unwrap(),
            UnitVector::normalize(&[1.0, -1.0]).unwrap(),
        ])
        .unwrap();
        let after = seg.orthogonal_symmetrize(&basis, &grid).unwrap();
        let g = after.ball_gauge(&grid).unwrap();
        // the node minimum sits first-order off the kink at theta = 0
        assert!((g.r_in - 0.5).abs() <= 2e-3);
        assert!((g.r_out - 0.5 * 2.0f64.sqrt()).abs() <= 1e-5);
        assert!((g.eps_distance - (1.0 - PI / 4.0)).abs() <= 2e-3);
    }

    #[test]
    fn lower_dimensional_zonotope_has_zero_inradius() {
        let mut rng = RngStream::new(8);
        let grid = SphereGrid::product3(24).unwrap();
        let seg = SupportBody::segment(vec![0.3, 0.7, -0.2]).unwrap();
        let u = sample_unit_sphere(&mut rng, 3).unwrap();
        let after = seg.minkowski_symmetrize(&u).unwrap();
        // two generators span at most a plane in R^3
        let g = after.ball_gauge(&grid).unwrap();
        assert_eq!(g.r_in, 0.0);
        assert!(g.r_out > 0.0);
    }

    #[test]
    fn gauge_rejects_outside_origin() {
        let grid = grid2();
        let body = SupportBody::ball(2, 1.0)
            .unwrap()
            .shifted(vec![5.0, 0.0])
            .unwrap();
        assert!(matches!(body.ball_gauge(&grid), Err(Error::OriginOutside)));
    }

    #[test]
    fn steiner_point_recenters() {
        let grid = grid2();
        let off_center = SupportBody::ball(2, 1.0)
            .unwrap()
            .shifted(vec![-0.4, 0.2])
            .unwrap();
        let s = off_center.steiner_point(&grid).unwrap();
        assert!((s[0] - 0.4).abs() <= 1e-6 && (s[1] + 0.2).abs() <= 1e-6);
        let centered = off_center.recentered(&grid).unwrap();
        let g = centered.ball_gauge(&grid).unwrap();
        assert!(g.eps_distance <= 1e-6);
    }

    #[test]
    fn simplex_has_expected_gauges() {
        for n in [2usize, 3, 4] {
            let simplex = SupportBody::simplex(n).unwrap();
            let mut rng = RngStream::new(2);
            let grid = match n {
                2 => SphereGrid::angular(4096).unwrap(),
                3 => SphereGrid::product3(48).unwrap(),
                _ => SphereGrid::monte_carlo(n, 4096, &mut rng).unwrap(),
            };
            let g = simplex.ball_gauge(&grid).unwrap();
            // regular simplex with unit circumradius has inradius 1/n
            assert!((g.r_in - 1.0 / n as f64).abs() <= 0.05, "n={n}: r_in {}", g.r_in);
            assert!(g.r_out <= 1.0 + 1e-9 && g.r_out >= 0.95);
        }
    }

    #[test]
    fn sampled_sign_averaging_tracks_exact() {
        let mut rng = RngStream::new(77);
        let n = 5;
        let grid = Arc::new(SphereGrid::monte_carlo(n, 512, &mut rng).unwrap());
        let body = random_polytope_body(n, 10, &mut rng).unwrap();
        let basis = sample_haar_basis(&mut rng, n).unwrap();
        let exact = body.orthogonal_symmetrize(&basis, &grid).unwrap();
        let (sampled, se) = body
            .orthogonal_symmetrize_sampled(&basis, &grid, 2048, &mut rng)
            .unwrap();
        assert!(se > 0.0);
        let ve = exact.values_on_grid(&grid);
        let vs = sampled.values_on_grid(&grid);
        for (a, b) in ve.iter().zip(&vs) {
            assert!((a - b).abs() <= 6.0 * se + 1e-12);
        }
    }
}
