//! Quadrature grids on `S^{n-1}`.
//!
//! Every integral against the rotation-invariant probability measure flows
//! through a [`SphereGrid`]: nodes plus probability weights. Product rules
//! with exact symmetry are used for n = 2 and 3 (and optionally n = 4),
//! equal-weight Monte Carlo otherwise.
//!
//! Each grid measures its own tolerance at construction: moment errors
//! (first and second), quadrature error on kinked witness integrands
//! `x -> |<x,d>|` (the shape of support functions of segments), and the
//! reconstruction error of the grid's interpolation rule. Downstream
//! tolerances are stated as multiples of this measured value.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{dot, sample_unit_sphere, RngStream, UnitVector};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridScheme {
    /// n = 2: uniform midpoint rule in the angle.
    Angular,
    /// n = 3: Gauss-Legendre in the polar cosine x uniform azimuth.
    Product3,
    /// n = 4: Gauss-Chebyshev(2nd) x Gauss-Legendre x uniform azimuth.
    Product4,
    /// n >= 4: equal-weight Monte Carlo nodes.
    MonteCarlo,
}

impl GridScheme {
    pub fn label(self) -> &'static str {
        match self {
            GridScheme::Angular => "angular",
            GridScheme::Product3 => "product3",
            GridScheme::Product4 => "product4",
            GridScheme::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Debug)]
enum InterpData {
    Angular,
    Product3 { polar_c: Vec<f64>, azimuth: usize },
    Product4 { theta1_count: usize, polar2_c: Vec<f64>, azimuth: usize },
    MonteCarlo,
}

/// Quadrature nodes and probability weights on `S^{n-1}`.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    dim: usize,
    m: usize,
    nodes: Vec<f64>, // m * dim, row-major
    weights: Vec<f64>,
    scheme: GridScheme,
    tolerance: f64,
    interp_tolerance: f64,
    cell_diameter: f64,
    interp: InterpData,
}

impl SphereGrid {
    /// Default scheme for dimension `n`: angular (n=2), product (n=3),
    /// Monte Carlo (n>=4, `resolution` = node count).
    pub fn build(n: usize, resolution: usize, rng: &mut RngStream) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("grids need dimension >= 2".into()));
        }
        if resolution < tol::MIN_GRID_RESOLUTION {
            return Err(Error::ResolutionTooLow {
                got: resolution,
                min: tol::MIN_GRID_RESOLUTION,
            });
        }
        match n {
            2 => Self::angular(resolution),
            3 => Self::product3(resolution),
            _ => Self::monte_carlo(n, resolution, rng),
        }
    }

    /// Uniform angular grid on the circle, `m` midpoints.
    pub fn angular(m: usize) -> Result<Self> {
        if m < tol::MIN_GRID_RESOLUTION {
            return Err(Error::ResolutionTooLow {
                got: m,
                min: tol::MIN_GRID_RESOLUTION,
            });
        }
        let mut nodes = Vec::with_capacity(2 * m);
        let step = 2.0 * PI / m as f64;
        for j in 0..m {
            let theta = (j as f64 + 0.5) * step;
            nodes.push(theta.cos());
            nodes.push(theta.sin());
        }
        let weights = vec![1.0 / m as f64; m];
        Ok(Self::finish(2, nodes, weights, GridScheme::Angular, InterpData::Angular))
    }

    /// Product grid on `S^2`: `polar` Gauss-Legendre rings x `2*polar`
    /// azimuth midpoints.
    pub fn product3(polar: usize) -> Result<Self> {
        if polar < tol::MIN_GRID_RESOLUTION {
            return Err(Error::ResolutionTooLow {
                got: polar,
                min: tol::MIN_GRID_RESOLUTION,
            });
        }
        let azimuth = 2 * polar;
        let (gl_nodes, gl_weights) = gauss_legendre(polar);
        let mut nodes = Vec::with_capacity(3 * polar * azimuth);
        let mut weights = Vec::with_capacity(polar * azimuth);
        let dphi = 2.0 * PI / azimuth as f64;
        for (c, gw) in gl_nodes.iter().zip(&gl_weights) {
            let s = (1.0 - c * c).max(0.0).sqrt();
            for l in 0..azimuth {
                let phi = (l as f64 + 0.5) * dphi;
                nodes.push(s * phi.cos());
                nodes.push(s * phi.sin());
                nodes.push(*c);
                weights.push(gw / 2.0 / azimuth as f64);
            }
        }
        Ok(Self::finish(
            3,
            nodes,
            weights,
            GridScheme::Product3,
            InterpData::Product3 { polar_c: gl_nodes, azimuth },
        ))
    }

    /// Product grid on `S^3`: Gauss-Chebyshev (2nd kind) in the first polar
    /// cosine, Gauss-Legendre in the second, uniform azimuth.
    pub fn product4(res: usize) -> Result<Self> {
        if res < tol::MIN_GRID_RESOLUTION {
            return Err(Error::ResolutionTooLow {
                got: res,
                min: tol::MIN_GRID_RESOLUTION,
            });
        }
        let p1 = res;
        let p2 = res;
        let azimuth = 2 * res;
        let (gl_nodes, gl_weights) = gauss_legendre(p2);
        let h1 = PI / (p1 as f64 + 1.0);
        let dphi = 2.0 * PI / azimuth as f64;
        let mut nodes = Vec::with_capacity(4 * p1 * p2 * azimuth);
        let mut weights = Vec::with_capacity(p1 * p2 * azimuth);
        // theta1 descending in cos => c1 ascending after reversal below
        for j in 0..p1 {
            let theta1 = (j as f64 + 1.0) * h1;
            let c1 = theta1.cos();
            let s1 = theta1.sin();
            let w1 = h1 * s1 * s1; // Chebyshev-2 rule for weight sqrt(1 - c^2)
            for (c2, g2) in gl_nodes.iter().zip(&gl_weights) {
                let s2 = (1.0 - c2 * c2).max(0.0).sqrt();
                for l in 0..azimuth {
                    let phi = (l as f64 + 0.5) * dphi;
                    nodes.push(c1);
                    nodes.push(s1 * c2);
                    nodes.push(s1 * s2 * phi.cos());
                    nodes.push(s1 * s2 * phi.sin());
                    // dsigma = sin^2(t1) sin(t2) dt1 dt2 dphi / (2 pi^2)
                    weights.push(w1 * g2 * dphi / (2.0 * PI * PI));
                }
            }
        }
        Ok(Self::finish(
            4,
            nodes,
            weights,
            GridScheme::Product4,
            InterpData::Product4 { theta1_count: p1, polar2_c: gl_nodes, azimuth },
        ))
    }

    /// Grid over an explicit node list (equal weights, nearest-node
    /// interpolation). Used when reloading grid-sampled data.
    pub fn from_nodes(n: usize, node_list: Vec<Vec<f64>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("grids need dimension >= 2".into()));
        }
        if node_list.is_empty() {
            return Err(Error::InvalidArgument("empty node list".into()));
        }
        let mut nodes = Vec::with_capacity(n * node_list.len());
        for v in &node_list {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
            let len = crate::geom::norm(v);
            if (len - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "node norm {len} is not 1"
                )));
            }
            nodes.extend_from_slice(v);
        }
        let weights = vec![1.0 / node_list.len() as f64; node_list.len()];
        Ok(Self::finish(n, nodes, weights, GridScheme::MonteCarlo, InterpData::MonteCarlo))
    }

    /// Equal-weight Monte Carlo node set, any `n >= 2`.
    pub fn monte_carlo(n: usize, m: usize, rng: &mut RngStream) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("grids need dimension >= 2".into()));
        }
        if m < tol::MIN_GRID_RESOLUTION {
            return Err(Error::ResolutionTooLow {
                got: m,
                min: tol::MIN_GRID_RESOLUTION,
            });
        }
        let mut nodes = Vec::with_capacity(n * m);
        for _ in 0..m {
            let v = sample_unit_sphere(rng, n)?;
            nodes.extend_from_slice(v.coords());
        }
        let weights = vec![1.0 / m as f64; m];
        Ok(Self::finish(n, nodes, weights, GridScheme::MonteCarlo, InterpData::MonteCarlo))
    }

    fn finish(
        dim: usize,
        nodes: Vec<f64>,
        mut weights: Vec<f64>,
        scheme: GridScheme,
        interp: InterpData,
    ) -> Self {
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
        let m = weights.len();
        let mut grid = Self {
            dim,
            m,
            nodes,
            weights,
            scheme,
            tolerance: 0.0,
            interp_tolerance: 0.0,
            cell_diameter: 0.0,
            interp,
        };
        grid.self_check();
        grid
    }

    /// Measure the quadrature tolerance (moments, kinked witness integrals,
    /// zonal-norm witnesses) and the interpolation tolerance (worst
    /// reconstruction error of a kinked witness at probe points).
    fn self_check(&mut self) {
        let n = self.dim;
        let mut worst: f64 = 1e-15;

        // moments: 1, x_i, x_i x_j, x_i^2
        let one: f64 = self.weights.iter().sum();
        worst = worst.max((one - 1.0).abs());
        for i in 0..n {
            let mut first = 0.0;
            let mut second = 0.0;
            for (idx, w) in self.weights.iter().enumerate() {
                let xi = self.nodes[idx * n + i];
                first += w * xi;
                second += w * xi * xi;
            }
            worst = worst.max(first.abs());
            worst = worst.max((second - 1.0 / n as f64).abs());
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let mut cross = 0.0;
                for (idx, w) in self.weights.iter().enumerate() {
                    cross += w * self.nodes[idx * n + i] * self.nodes[idx * n + j];
                }
                worst = worst.max(cross.abs());
            }
        }

        // kinked witnesses |<x,d>|: the shape of segment support functions
        let exact = abs_coordinate_mean(n);
        for d in witness_directions(n) {
            let mut acc = 0.0;
            for (idx, w) in self.weights.iter().enumerate() {
                acc += w * dot(self.node(idx), d.coords()).abs();
            }
            worst = worst.max((acc - exact).abs());
        }

        // unit-norm zonal witnesses: int N_k G_k(<x,d>)^2 dsigma = 1, so the
        // measured tolerance honestly covers harmonic-norm quadrature noise
        for k in [2usize, 4] {
            if let (Ok(eval), Ok(nk)) = (
                crate::harmonics::GegenbauerEvaluator::new(n, k),
                crate::harmonics::harmonic_dim(n, k),
            ) {
                for d in witness_directions(n) {
                    let mut acc = 0.0;
                    for (idx, w) in self.weights.iter().enumerate() {
                        let t = dot(self.node(idx), d.coords()).clamp(-1.0, 1.0);
                        let g = eval.eval_unchecked(k, t);
                        acc += w * g * g;
                    }
                    worst = worst.max((nk as f64 * acc - 1.0).abs());
                }
            }
        }
        self.tolerance = worst;

        // interpolation reconstruction of the diagonal kinked witness,
        // floored by the a-priori cell bound for 1-Lipschitz functions
        // (random probes can miss the cells straddling the kink)
        let d = witness_directions(n).pop().expect("witnesses nonempty");
        let values: Vec<f64> = (0..self.m)
            .map(|idx| dot(self.node(idx), d.coords()).abs())
            .collect();
        let mut probe_rng = RngStream::new(0x5eed_c0de);
        let mut worst_interp: f64 = self.lipschitz_cell_bound();
        let mut cell: f64 = 0.0;
        for _ in 0..256 {
            let p = sample_unit_sphere(&mut probe_rng, n).expect("n >= 2");
            let est = self.interpolate(&values, p.coords());
            let truth = dot(p.coords(), d.coords()).abs();
            worst_interp = worst_interp.max((est - truth).abs());
            let nearest = self.nearest_node(p.coords()).1;
            cell = cell.max(nearest);
        }
        self.interp_tolerance = worst_interp;
        self.cell_diameter = cell;
    }

    /// Worst-case interpolation error for a 1-Lipschitz function: half the
    /// largest angular gap between interpolation neighbors (full nearest
    /// node distance for Monte Carlo grids).
    fn lipschitz_cell_bound(&self) -> f64 {
        match &self.interp {
            InterpData::Angular => PI / self.m as f64,
            InterpData::Product3 { polar_c, azimuth } => {
                let max_polar_gap = polar_c
                    .windows(2)
                    .map(|w| w[1].acos() - w[0].acos())
                    .fold(0.0f64, |m, g| m.max(g.abs()));
                0.5 * max_polar_gap.max(2.0 * PI / *azimuth as f64)
            }
            InterpData::Product4 { theta1_count, polar2_c, azimuth } => {
                let gap1 = PI / (*theta1_count as f64 + 1.0);
                let gap2 = polar2_c
                    .windows(2)
                    .map(|w| w[1].acos() - w[0].acos())
                    .fold(0.0f64, |m, g| m.max(g.abs()));
                0.5 * gap1.max(gap2).max(2.0 * PI / *azimuth as f64)
            }
            InterpData::MonteCarlo => {
                // measured afterwards via probe nearest distances; start from
                // the covering-radius scaling of m uniform points
                (1.0 / self.m as f64).powf(1.0 / (self.dim as f64 - 1.0)) * 2.0
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn node(&self, idx: usize) -> &[f64] {
        &self.nodes[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    /// Measured quadrature tolerance (see [`Self::self_check`]).
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Measured worst-case interpolation error on a kinked (Lipschitz)
    /// witness. Smooth functions interpolate considerably better.
    pub fn interp_tolerance(&self) -> f64 {
        self.interp_tolerance
    }

    /// Largest observed distance from a probe point to its nearest node.
    pub fn cell_diameter(&self) -> f64 {
        self.cell_diameter
    }

    /// Quadrature of `f` over the sphere. Errors if `f` is non-finite at a node.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for idx in 0..self.m {
            let v = f(self.node(idx));
            if !v.is_finite() {
                return Err(Error::NonFinite("integrand value at a grid node"));
            }
            acc += self.weights[idx] * v;
        }
        Ok(acc)
    }

    /// Quadrature of pre-sampled node values.
    pub fn integrate_values(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.m);
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// Quadrature L2 norm of pre-sampled node values.
    pub fn norm_l2(&self, values: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(values)
            .map(|(w, v)| w * v * v)
            .sum::<f64>()
            .max(0.0)
            .sqrt()
    }

    /// Evaluate node samples at an arbitrary unit vector.
    ///
    /// Angular grids interpolate linearly in the angle, product grids
    /// bi/tri-linearly in their angular coordinates, Monte Carlo grids use
    /// the nearest node (cell diameter recorded at construction).
    pub fn interpolate(&self, values: &[f64], x: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.m);
        debug_assert_eq!(x.len(), self.dim);
        match &self.interp {
            InterpData::Angular => {
                let m = self.m as f64;
                let step = 2.0 * PI / m;
                let theta = x[1].atan2(x[0]).rem_euclid(2.0 * PI);
                let u = theta / step - 0.5;
                let j0 = u.floor();
                let frac = u - j0;
                let j0 = (j0.rem_euclid(m)) as usize % self.m;
                let j1 = (j0 + 1) % self.m;
                values[j0] * (1.0 - frac) + values[j1] * frac
            }
            InterpData::Product3 { polar_c, azimuth } => {
                let a = *azimuth;
                let c = x[2].clamp(-1.0, 1.0);
                let (i0, i1, tc) = bracket(polar_c, c);
                let phi = x[1].atan2(x[0]).rem_euclid(2.0 * PI);
                let (l0, l1, tp) = bracket_uniform_angle(phi, a);
                let v = |i: usize, l: usize| values[i * a + l];
                let low = v(i0, l0) * (1.0 - tp) + v(i0, l1) * tp;
                let high = v(i1, l0) * (1.0 - tp) + v(i1, l1) * tp;
                low * (1.0 - tc) + high * tc
            }
            InterpData::Product4 { theta1_count, polar2_c, azimuth } => {
                let p1 = *theta1_count;
                let p2 = polar2_c.len();
                let a = *azimuth;
                let h1 = PI / (p1 as f64 + 1.0);
                let theta1 = x[0].clamp(-1.0, 1.0).acos();
                let u = theta1 / h1 - 1.0;
                let j0 = u.floor().clamp(0.0, (p1 - 1) as f64) as usize;
                let j1 = (j0 + 1).min(p1 - 1);
                let t1 = if j1 == j0 { 0.0 } else { (u - j0 as f64).clamp(0.0, 1.0) };
                let s1 = (1.0 - x[0] * x[0]).max(0.0).sqrt();
                let (c2, phi) = if s1 < 1e-12 {
                    (0.0, 0.0)
                } else {
                    let c2 = (x[1] / s1).clamp(-1.0, 1.0);
                    (c2, x[3].atan2(x[2]).rem_euclid(2.0 * PI))
                };
                let (q0, q1, t2) = bracket(polar2_c, c2);
                let (l0, l1, tp) = bracket_uniform_angle(phi, a);
                let v = |j: usize, q: usize, l: usize| values[(j * p2 + q) * a + l];
                let mut acc = 0.0;
                for (j, wj) in [(j0, 1.0 - t1), (j1, t1)] {
                    for (q, wq) in [(q0, 1.0 - t2), (q1, t2)] {
                        for (l, wl) in [(l0, 1.0 - tp), (l1, tp)] {
                            acc += wj * wq * wl * v(j, q, l);
                        }
                    }
                }
                acc
            }
            InterpData::MonteCarlo => values[self.nearest_node(x).0],
        }
    }

    fn nearest_node(&self, x: &[f64]) -> (usize, f64) {
        let n = self.dim;
        let mut best = (0usize, f64::INFINITY);
        for idx in 0..self.m {
            let node = &self.nodes[idx * n..(idx + 1) * n];
            let d2: f64 = node
                .iter()
                .zip(x)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if d2 < best.1 {
                best = (idx, d2);
            }
        }
        (best.0, best.1.sqrt())
    }
}

fn bracket(sorted: &[f64], v: f64) -> (usize, usize, f64) {
    let last = sorted.len() - 1;
    if v <= sorted[0] {
        return (0, 0, 0.0);
    }
    if v >= sorted[last] {
        return (last, last, 0.0);
    }
    let mut lo = 0usize;
    let mut hi = last;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if sorted[mid] <= v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (v - sorted[lo]) / (sorted[hi] - sorted[lo]);
    (lo, hi, t)
}

fn bracket_uniform_angle(phi: f64, count: usize) -> (usize, usize, f64) {
    let step = 2.0 * PI / count as f64;
    let u = phi / step - 0.5;
    let l0 = u.floor();
    let frac = u - l0;
    let l0 = (l0.rem_euclid(count as f64)) as usize % count;
    ((l0) % count, (l0 + 1) % count, frac)
}

/// Exact sphere average of `|x_1|`: 2/pi, 1/2, 4/(3 pi), 3/8, ...
fn abs_coordinate_mean(n: usize) -> f64 {
    let mut values = vec![0.0; n + 1];
    if n >= 2 {
        values[2] = 2.0 / PI;
    }
    if n >= 3 {
        values[3] = 0.5;
    }
    for m in 4..=n {
        values[m] = values[m - 2] * (m as f64 - 2.0) / (m as f64 - 1.0);
    }
    values[n]
}

fn witness_directions(n: usize) -> Vec<UnitVector> {
    let mut dirs = vec![UnitVector::axis(n, 0)];
    let skew: Vec<f64> = (0..n).map(|i| 1.0 + 0.618_033_988_749_894 * i as f64).collect();
    dirs.push(UnitVector::normalize(&skew).expect("nonzero"));
    let diag = vec![1.0; n];
    dirs.push(UnitVector::normalize(&diag).expect("nonzero"));
    dirs
}

/// Gauss-Legendre nodes (ascending) and weights on `[-1, 1]`.
pub fn gauss_legendre(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; count];
    let mut weights = vec![0.0; count];
    let m = (count + 1) / 2;
    for i in 0..m {
        // Newton iteration from the Chebyshev initial guess
        let mut x = (PI * (i as f64 + 0.75) / (count as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(count, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(count, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[count - 1 - i] = x;
        weights[i] = w;
        weights[count - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(count: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..count {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = count as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::norm;
    use approx::assert_abs_diff_eq;

    fn schemes() -> Vec<SphereGrid> {
        let mut rng = RngStream::new(77);
        vec![
            SphereGrid::angular(512).unwrap(),
            SphereGrid::product3(32).unwrap(),
            SphereGrid::product4(16).unwrap(),
            SphereGrid::monte_carlo(4, 4096, &mut rng).unwrap(),
            SphereGrid::monte_carlo(5, 4096, &mut rng).unwrap(),
        ]
    }

    #[test]
    fn weights_are_normalized_and_positive() {
        for g in schemes() {
            assert!(g.weights().iter().all(|w| *w > 0.0));
            let total: f64 = g.weights().iter().sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-13);
            let c = g.integrate(|_| 5.0).unwrap();
            assert_abs_diff_eq!(c, 5.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn nodes_are_unit_vectors() {
        for g in schemes() {
            for idx in 0..g.len() {
                assert_abs_diff_eq!(norm(g.node(idx)), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn moment_checks_hold_within_tolerance() {
        for g in schemes() {
            let n = g.dim();
            let tau = g.tolerance();
            for i in 0..n {
                let first = g.integrate(|x| x[i]).unwrap();
                assert!(first.abs() <= tau, "{} first moment {first}", g.scheme().label());
                let second = g.integrate(|x| x[i] * x[i]).unwrap();
                assert!(
                    (second - 1.0 / n as f64).abs() <= tau,
                    "{} second moment {second}",
                    g.scheme().label()
                );
            }
            let cross = g.integrate(|x| x[0] * x[1]).unwrap();
            assert!(cross.abs() <= tau);
        }
    }

    #[test]
    fn angular_closed_form_integral() {
        // f = cos^2(theta) integrates to 1/2 on the circle
        let g = SphereGrid::angular(2048).unwrap();
        let v = g.integrate(|x| x[0] * x[0]).unwrap();
        assert!((v - 0.5).abs() <= g.tolerance());
    }

    #[test]
    fn product_grids_are_polynomially_exact() {
        let g3 = SphereGrid::product3(24).unwrap();
        // x3^4 integrates to 3/(n(n+2)) = 1/5 on S^2
        let v = g3.integrate(|x| x[2].powi(4)).unwrap();
        assert_abs_diff_eq!(v, 0.2, epsilon = 1e-12);
        let g4 = SphereGrid::product4(16).unwrap();
        // x1^4 on S^3: 3/(4*6) = 1/8
        let v = g4.integrate(|x| x[0].powi(4)).unwrap();
        assert_abs_diff_eq!(v, 0.125, epsilon = 1e-12);
        let v = g4.integrate(|x| x[1].powi(4)).unwrap();
        assert_abs_diff_eq!(v, 0.125, epsilon = 1e-10);
    }

    #[test]
    fn tolerance_reflects_scheme_quality() {
        let mut rng = RngStream::new(3);
        let fine = SphereGrid::angular(2048).unwrap();
        assert!(fine.tolerance() < 1e-5, "angular tau {}", fine.tolerance());
        let product = SphereGrid::product3(64).unwrap();
        assert!(product.tolerance() < 1e-3, "product3 tau {}", product.tolerance());
        let product4 = SphereGrid::product4(24).unwrap();
        assert!(product4.tolerance() < 5e-3, "product4 tau {}", product4.tolerance());
        let mc = SphereGrid::monte_carlo(4, 4096, &mut rng).unwrap();
        assert!(mc.tolerance() > 1e-4, "MC tau should be honest: {}", mc.tolerance());
        assert!(mc.tolerance() < 0.2);
        // interpolation tolerances are coarser than quadrature tolerances
        assert!(product.interp_tolerance() > product.tolerance());
        assert!(mc.interp_tolerance() > mc.tolerance());
    }

    #[test]
    fn interpolation_reconstructs_smooth_functions() {
        let mut rng = RngStream::new(9);
        for g in [SphereGrid::angular(1024).unwrap(), SphereGrid::product3(48).unwrap(), SphereGrid::product4(24).unwrap()] {
            let n = g.dim();
            let values: Vec<f64> = (0..g.len()).map(|i| g.node(i)[0] + 0.5 * g.node(i)[n - 1]).collect();
            for _ in 0..64 {
                let p = sample_unit_sphere(&mut rng, n).unwrap();
                let est = g.interpolate(&values, p.coords());
                let truth = p.coords()[0] + 0.5 * p.coords()[n - 1];
                assert!(
                    (est - truth).abs() <= g.interp_tolerance(),
                    "{}: est {est} truth {truth}",
                    g.scheme().label()
                );
            }
        }
    }

    #[test]
    fn integrate_rejects_non_finite() {
        let g = SphereGrid::angular(64).unwrap();
        assert!(matches!(
            g.integrate(|x| 1.0 / (x[0] - x[0])),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn odd_integrand_vanishes() {
        for g in schemes() {
            let v = g.integrate(|x| x[0] * x[1]).unwrap();
            assert!(v.abs() <= g.tolerance());
        }
    }

    #[test]
    fn resolution_guard() {
        let mut rng = RngStream::new(0);
        assert!(matches!(
            SphereGrid::build(2, 8, &mut rng),
            Err(Error::ResolutionTooLow { .. })
        ));
    }

    #[test]
    fn grids_are_deterministic() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        let ga = SphereGrid::monte_carlo(4, 256, &mut a).unwrap();
        let gb = SphereGrid::monte_carlo(4, 256, &mut b).unwrap();
        for i in 0..ga.len() {
            for (x, y) in ga.node(i).iter().zip(gb.node(i)) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (nodes, weights) = gauss_legendre(8);
        // degree 15 polynomial: x^14 integrates to 2/15
        let acc: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * x.powi(14))
            .sum();
        assert_abs_diff_eq!(acc, 2.0 / 15.0, epsilon = 1e-13);
    }
}
