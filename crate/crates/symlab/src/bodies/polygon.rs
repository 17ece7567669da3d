//! Convex polygons with exact 2D Steiner symmetrization.
//!
//! The symmetrization is the textbook chord construction: rotate the
//! direction onto the y-axis, split the boundary into x-monotone upper and
//! lower chains, evaluate the chord length at every vertex projection, and
//! rebuild the polygon with each chord recentred on the x-axis. Chord
//! length is piecewise linear and concave, so the output is convex and the
//! area integral is preserved to floating-point rounding.

use std::f64::consts::PI;

use crate::bodies::{BallGauge, SupportBody};
use crate::error::{Error, Result};
use crate::geom::RngStream;
use crate::tol;

#[derive(Clone, Debug)]
pub struct PolygonBody {
    vertices: Vec<[f64; 2]>,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl PolygonBody {
    /// Validated constructor: counterclockwise order, convex within the
    /// collinearity tolerance, no duplicate consecutive vertices.
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateBody(format!(
                "polygon needs >= 3 vertices, got {}",
                vertices.len()
            )));
        }
        let m = vertices.len();
        for i in 0..m {
            let a = vertices[i];
            let b = vertices[(i + 1) % m];
            if (a[0] - b[0]).hypot(a[1] - b[1]) <= tol::DUPLICATE_VERTEX {
                return Err(Error::DegenerateBody(format!(
                    "duplicate consecutive vertices at index {i}"
                )));
            }
            let c = vertices[(i + 2) % m];
            if cross(a, b, c) < -tol::COLLINEAR_CROSS {
                return Err(Error::DegenerateBody(format!(
                    "vertices are not in convex counterclockwise order at index {i}"
                )));
            }
        }
        let poly = Self { vertices };
        if poly.area() < tol::DEGENERATE_AREA {
            return Err(Error::DegenerateBody("polygon area below 1e-12".into()));
        }
        Ok(poly)
    }

    /// Convex hull of a point set (monotone chain, lexicographic order,
    /// collinear points dropped).
    pub fn convex_hull(points: &[[f64; 2]]) -> Result<Self> {
        let mut pts: Vec<[f64; 2]> = points.to_vec();
        pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
        pts.dedup_by(|a, b| (a[0] - b[0]).hypot(a[1] - b[1]) <= tol::DUPLICATE_VERTEX);
        if pts.len() < 3 {
            return Err(Error::DegenerateBody("hull needs >= 3 distinct points".into()));
        }
        let mut lower: Vec<[f64; 2]> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 2], lower[lower.len() - 1], p)
                    <= tol::COLLINEAR_CROSS
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<[f64; 2]> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 2], upper[upper.len() - 1], p)
                    <= tol::COLLINEAR_CROSS
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    pub fn rectangle(half_width: f64, half_height: f64) -> Result<Self> {
        Self::new(vec![
            [-half_width, -half_height],
            [half_width, -half_height],
            [half_width, half_height],
            [-half_width, half_height],
        ])
    }

    pub fn regular(sides: usize, radius: f64) -> Result<Self> {
        let vertices = (0..sides)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / sides as f64;
                [radius * t.cos(), radius * t.sin()]
            })
            .collect();
        Self::new(vertices)
    }

    /// Hull of points drawn uniformly in a disk, recentred on the centroid.
    pub fn random_convex(rng: &mut RngStream, count: usize, radius: f64) -> Result<Self> {
        let mut points = Vec::with_capacity(count);
        while points.len() < count {
            let x = 2.0 * rng.uniform() - 1.0;
            let y = 2.0 * rng.uniform() - 1.0;
            if x * x + y * y <= 1.0 {
                points.push([radius * x, radius * y]);
            }
        }
        let hull = Self::convex_hull(&points)?;
        let c = hull.centroid();
        Ok(hull.translated([-c[0], -c[1]]))
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Shoelace area (positive for the validated orientation).
    pub fn area(&self) -> f64 {
        let m = self.vertices.len();
        let mut acc = 0.0;
        for i in 0..m {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % m];
            acc += a[0] * b[1] - b[0] * a[1];
        }
        0.5 * acc
    }

    pub fn perimeter(&self) -> f64 {
        let m = self.vertices.len();
        (0..m)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % m];
                (a[0] - b[0]).hypot(a[1] - b[1])
            })
            .sum()
    }

    /// Area centroid.
    pub fn centroid(&self) -> [f64; 2] {
        let m = self.vertices.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        for i in 0..m {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % m];
            let w = p[0] * q[1] - q[0] * p[1];
            a += w;
            cx += (p[0] + q[0]) * w;
            cy += (p[1] + q[1]) * w;
        }
        [cx / (3.0 * a), cy / (3.0 * a)]
    }

    pub fn translated(&self, by: [f64; 2]) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0] + by[0], v[1] + by[1]])
                .collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|v| [factor * v[0], factor * v[1]])
                .collect(),
        }
    }

    /// Recentre on the centroid and rescale to the target area.
    pub fn normalized_to_area(&self, target: f64) -> Result<Self> {
        let c = self.centroid();
        let centered = self.translated([-c[0], -c[1]]);
        let factor = (target / centered.area()).sqrt();
        if !factor.is_finite() {
            return Err(Error::DegenerateBody("cannot normalize area".into()));
        }
        Ok(centered.scaled(factor))
    }

    /// Support function `max_i <v_i, d>`.
    pub fn support(&self, d: [f64; 2]) -> f64 {
        self.vertices
            .iter()
            .map(|v| v[0] * d[0] + v[1] * d[1])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn to_support_body(&self) -> SupportBody {
        SupportBody::polytope(self.vertices.iter().map(|v| v.to_vec()).collect())
            .expect("validated polygon")
    }

    /// Exact gauges: circumradius from vertices, inradius from edge lines
    /// (requires the origin strictly inside), half mean width from the
    /// Cauchy formula `perimeter / (2 pi)`.
    pub fn gauges(&self) -> Result<BallGauge> {
        let m = self.vertices.len();
        let mut r_out = 0.0f64;
        let mut r_in = f64::INFINITY;
        for i in 0..m {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % m];
            r_out = r_out.max(a[0].hypot(a[1]));
            let twice_area = a[0] * b[1] - b[0] * a[1];
            if twice_area <= 0.0 {
                return Err(Error::OriginOutside);
            }
            let edge = (b[0] - a[0]).hypot(b[1] - a[1]);
            r_in = r_in.min(twice_area / edge);
        }
        Ok(BallGauge::new(r_in, r_out, self.perimeter() / (2.0 * PI)))
    }

    /// Exact Steiner symmetrization with respect to the hyperplane through
    /// the origin orthogonal to `direction`.
    pub fn steiner_symmetrize(&self, direction: [f64; 2]) -> Result<PolygonBody> {
        if self.area() < tol::DEGENERATE_AREA {
            return Err(Error::DegenerateBody("polygon area below 1e-12".into()));
        }
        let len = direction[0].hypot(direction[1]);
        if !(len > 1e-12) {
            return Err(Error::InvalidArgument("zero symmetrization direction".into()));
        }
        let (dx, dy) = (direction[0] / len, direction[1] / len);
        // rotation taking `direction` to the positive y-axis
        let rot = |p: [f64; 2]| [dy * p[0] - dx * p[1], dx * p[0] + dy * p[1]];
        let back = |p: [f64; 2]| [dy * p[0] + dx * p[1], -dx * p[0] + dy * p[1]];

        let rotated: Vec<[f64; 2]> = self.vertices.iter().map(|v| rot(*v)).collect();
        let m = rotated.len();
        let lex_le = |a: [f64; 2], b: [f64; 2]| a[0] < b[0] || (a[0] == b[0] && a[1] <= b[1]);
        let mut imin = 0;
        let mut imax = 0;
        for i in 1..m {
            if lex_le(rotated[i], rotated[imin]) {
                imin = i;
            }
            if lex_le(rotated[imax], rotated[i]) {
                imax = i;
            }
        }
        // counterclockwise from the leftmost vertex: lower chain to the
        // rightmost, then upper chain back
        let mut lower_chain = Vec::new();
        let mut i = imin;
        loop {
            lower_chain.push(rotated[i]);
            if i == imax {
                break;
            }
            i = (i + 1) % m;
        }
        let mut upper_chain = Vec::new();
        let mut i = imax;
        loop {
            upper_chain.push(rotated[i]);
            if i == imin {
                break;
            }
            i = (i + 1) % m;
        }
        upper_chain.reverse(); // ascending in x

        let mut breakpoints: Vec<f64> = rotated.iter().map(|p| p[0]).collect();
        breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let span = breakpoints[breakpoints.len() - 1] - breakpoints[0];
        breakpoints.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * span.max(1.0));

        let upper = ChainEval::new(&upper_chain, true);
        let lower = ChainEval::new(&lower_chain, false);

        let mut bottom = Vec::with_capacity(breakpoints.len());
        let mut top = Vec::with_capacity(breakpoints.len());
        for &t in &breakpoints {
            let chord = (upper.eval(t) - lower.eval(t)).max(0.0);
            bottom.push([t, -0.5 * chord]);
            top.push([t, 0.5 * chord]);
        }

        let mut out: Vec<[f64; 2]> = Vec::with_capacity(2 * breakpoints.len());
        for p in &bottom {
            out.push(*p);
        }
        for p in top.iter().rev() {
            out.push(*p);
        }
        dedup_ring(&mut out);
        drop_collinear(&mut out);
        if out.len() < 3 {
            return Err(Error::DegenerateBody(
                "Steiner output collapsed to a segment".into(),
            ));
        }
        let vertices = out.into_iter().map(back).collect();
        PolygonBody::new(vertices)
    }

    /// Remove the vertices with smallest turn (cross product) until at most
    /// `budget` remain. Returns the total area removed; each removal cuts
    /// the triangle spanned by the vertex and its live neighbors, so the
    /// area loss is half the sum of removed cross products.
    pub fn decimate_to(&mut self, budget: usize) -> f64 {
        let mut removed_area = 0.0;
        while self.vertices.len() > budget.max(3) {
            let m = self.vertices.len();
            let excess = m - budget.max(3);
            let mut keyed: Vec<(f64, usize)> = (0..m)
                .map(|i| {
                    let a = self.vertices[(i + m - 1) % m];
                    let b = self.vertices[i];
                    let c = self.vertices[(i + 1) % m];
                    (cross(a, b, c), i)
                })
                .collect();
            keyed.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite"));
            // remove a non-adjacent batch of the flattest vertices
            let mut chosen = vec![false; m];
            let mut blocked = vec![false; m];
            let mut count = 0;
            for &(c, i) in keyed.iter() {
                if count >= excess {
                    break;
                }
                if blocked[i] {
                    continue;
                }
                chosen[i] = true;
                blocked[(i + m - 1) % m] = true;
                blocked[(i + 1) % m] = true;
                removed_area += 0.5 * c.max(0.0);
                count += 1;
            }
            if count == 0 {
                break;
            }
            let mut kept = Vec::with_capacity(m - count);
            for (i, v) in self.vertices.iter().enumerate() {
                if !chosen[i] {
                    kept.push(*v);
                }
            }
            self.vertices = kept;
        }
        removed_area
    }
}

/// Piecewise-linear chain evaluator over an x-monotone vertex list.
struct ChainEval<'a> {
    chain: &'a [[f64; 2]],
    take_max: bool,
}

impl<'a> ChainEval<'a> {
    fn new(chain: &'a [[f64; 2]], take_max: bool) -> Self {
        Self { chain, take_max }
    }

    fn eval(&self, t: f64) -> f64 {
        let c = self.chain;
        let last = c.len() - 1;
        if t <= c[0][0] {
            return self.vertical_extreme(0, t);
        }
        if t >= c[last][0] {
            return self.vertical_extreme(last, t);
        }
        let mut lo = 0;
        let mut hi = last;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if c[mid][0] <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (a, b) = (c[lo], c[hi]);
        if (b[0] - a[0]).abs() <= f64::EPSILON * (1.0 + a[0].abs()) {
            return self.pick(a[1], b[1]);
        }
        let f = (t - a[0]) / (b[0] - a[0]);
        a[1] + f * (b[1] - a[1])
    }

    /// Several chain points can share the extreme x (a vertical edge);
    /// take the appropriate end of it.
    fn vertical_extreme(&self, idx: usize, t: f64) -> f64 {
        let c = self.chain;
        let x = c[idx][0];
        let mut best = c[idx][1];
        for p in c {
            if (p[0] - x).abs() <= f64::EPSILON * (1.0 + x.abs()) + (t - x).abs() {
                best = self.pick(best, p[1]);
            }
        }
        best
    }

    fn pick(&self, a: f64, b: f64) -> f64 {
        if self.take_max {
            a.max(b)
        } else {
            a.min(b)
        }
    }
}

fn dedup_ring(points: &mut Vec<[f64; 2]>) {
    points.dedup_by(|a, b| (a[0] - b[0]).hypot(a[1] - b[1]) <= tol::DUPLICATE_VERTEX);
    while points.len() > 1 {
        let first = points[0];
        let last = points[points.len() - 1];
        if (first[0] - last[0]).hypot(first[1] - last[1]) <= tol::DUPLICATE_VERTEX {
            points.pop();
        } else {
            break;
        }
    }
}

fn drop_collinear(points: &mut Vec<[f64; 2]>) {
    loop {
        let m = points.len();
        if m < 4 {
            return;
        }
        let mut kept = Vec::with_capacity(m);
        for i in 0..m {
            let a = points[(i + m - 1) % m];
            let b = points[i];
            let c = points[(i + 1) % m];
            if cross(a, b, c).abs() > tol::COLLINEAR_CROSS {
                kept.push(b);
            }
        }
        if kept.len() == m || kept.len() < 3 {
            return;
        }
        *points = kept;
    }
}
