//! 3D convex polytopes: quickhull construction, exact volume, and an
//! approximate (chord-sampled) Steiner symmetrization.
//!
//! The Steiner step samples a planar grid over the body's shadow, measures
//! every chord by clipping the line against the facet half-spaces, recentres
//! the chords on the plane and takes the hull of the endpoints. Exactness
//! claims live in the 2D implementation; here the volume error is measured
//! against the input and reported, with a 2% budget at resolution 64.

use std::collections::HashMap;

use crate::bodies::{BallGauge, SupportBody};
use crate::error::{Error, Result};
use crate::geom::{RngStream, SphereGrid};

#[derive(Clone, Debug)]
pub struct PolytopeBody3 {
    vertices: Vec<[f64; 3]>,
    /// Outward-oriented triangles indexing `vertices`.
    facets: Vec<[usize; 3]>,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add_scaled(a: [f64; 3], b: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

impl PolytopeBody3 {
    /// Convex hull of a 3D point set (quickhull with conflict lists).
    ///
    /// Heavily coplanar inputs can defeat the floating-point visibility
    /// thresholds; when the orientation audit catches that, the points are
    /// joggled by a deterministic perturbation and the hull rebuilt. The
    /// largest joggle is 1e-6 of the coordinate scale.
    pub fn from_points(points: &[[f64; 3]]) -> Result<Self> {
        match quickhull(points) {
            Ok(hull) => Ok(hull),
            Err(Error::DegenerateBody(_)) if points.len() > 4 => {
                let scale = points
                    .iter()
                    .map(|p| p.iter().fold(0.0f64, |m, c| m.max(c.abs())))
                    .fold(0.0f64, f64::max)
                    .max(1e-12);
                let mut last = None;
                for (attempt, amplitude) in [1e-8, 1e-7, 1e-6].into_iter().enumerate() {
                    let jiggled = joggle(points, amplitude * scale, attempt as u64);
                    match quickhull(&jiggled) {
                        Ok(hull) => return Ok(hull),
                        Err(e) => last = Some(e),
                    }
                }
                Err(last.expect("at least one attempt"))
            }
            Err(e) => Err(e),
        }
    }

    pub fn cube(half: f64) -> Result<Self> {
        let mut pts = Vec::with_capacity(8);
        for sx in [-half, half] {
            for sy in [-half, half] {
                for sz in [-half, half] {
                    pts.push([sx, sy, sz]);
                }
            }
        }
        Self::from_points(&pts)
    }

    /// Polytope approximation of the unit ball: hull of a Fibonacci sphere.
    pub fn ball_approx(count: usize) -> Result<Self> {
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        let pts: Vec<[f64; 3]> = (0..count)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let phi = 2.0 * std::f64::consts::PI * (i as f64 / golden).fract();
                [r * phi.cos(), r * phi.sin(), z]
            })
            .collect();
        Self::from_points(&pts)
    }

    /// Hull of random points in a spherical shell, recentred on the volume
    /// centroid so the origin is interior.
    pub fn random(rng: &mut RngStream, count: usize, radius: f64) -> Result<Self> {
        let mut pts = Vec::with_capacity(count);
        for _ in 0..count {
            let u = crate::geom::sample_unit_sphere(rng, 3)?;
            let r = radius * (0.6 + 0.4 * rng.uniform());
            let c = u.coords();
            pts.push([r * c[0], r * c[1], r * c[2]]);
        }
        let hull = Self::from_points(&pts)?;
        let c = hull.volume_centroid();
        hull.translated([-c[0], -c[1], -c[2]])
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn facets(&self) -> &[[usize; 3]] {
        &self.facets
    }

    pub fn translated(&self, by: [f64; 3]) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| [v[0] + by[0], v[1] + by[1], v[2] + by[2]])
            .collect();
        Ok(Self { vertices, facets: self.facets.clone() })
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| [factor * v[0], factor * v[1], factor * v[2]])
            .collect();
        Ok(Self { vertices, facets: self.facets.clone() })
    }

    /// Recentre on the volume centroid and rescale to the target volume.
    pub fn normalized_to_volume(&self, target: f64) -> Result<Self> {
        let c = self.volume_centroid();
        let centered = self.translated([-c[0], -c[1], -c[2]])?;
        let factor = (target / centered.volume()).cbrt();
        centered.scaled(factor)
    }

    /// Exact volume via the divergence theorem over oriented facets.
    pub fn volume(&self) -> f64 {
        let mut acc = 0.0;
        for f in &self.facets {
            let a = self.vertices[f[0]];
            let b = self.vertices[f[1]];
            let c = self.vertices[f[2]];
            acc += dot3(a, cross3(b, c));
        }
        acc / 6.0
    }

    pub fn volume_centroid(&self) -> [f64; 3] {
        let mut acc = [0.0; 3];
        let mut vol = 0.0;
        for f in &self.facets {
            let a = self.vertices[f[0]];
            let b = self.vertices[f[1]];
            let c = self.vertices[f[2]];
            let det = dot3(a, cross3(b, c));
            vol += det;
            for i in 0..3 {
                acc[i] += det * (a[i] + b[i] + c[i]) / 4.0;
            }
        }
        [acc[0] / vol, acc[1] / vol, acc[2] / vol]
    }

    pub fn support(&self, d: [f64; 3]) -> f64 {
        self.vertices
            .iter()
            .map(|v| dot3(*v, d))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn to_support_body(&self) -> SupportBody {
        SupportBody::polytope(self.vertices.iter().map(|v| v.to_vec()).collect())
            .expect("validated polytope")
    }

    /// Facet planes as (unit outward normal, offset). Sliver triangles
    /// below the area threshold are dropped: their normals are numeric
    /// noise and the neighboring facets carry the same constraint.
    fn planes(&self) -> Vec<([f64; 3], f64)> {
        let scale = self
            .vertices
            .iter()
            .map(|v| norm3(*v))
            .fold(0.0f64, f64::max)
            .max(1e-12);
        self.facets
            .iter()
            .filter_map(|f| {
                let a = self.vertices[f[0]];
                let b = self.vertices[f[1]];
                let c = self.vertices[f[2]];
                let n = cross3(sub(b, a), sub(c, a));
                let len = norm3(n);
                if len <= 1e-12 * scale * scale {
                    return None;
                }
                let unit = [n[0] / len, n[1] / len, n[2] / len];
                Some((unit, dot3(unit, a)))
            })
            .collect()
    }

    /// Exact circumradius and facet-plane inradius; half mean width by
    /// quadrature of the support function. Requires the origin interior.
    pub fn gauges(&self, grid: &SphereGrid) -> Result<BallGauge> {
        let mut r_out = 0.0f64;
        for v in &self.vertices {
            r_out = r_out.max(norm3(*v));
        }
        let mut r_in = f64::INFINITY;
        for (_, offset) in self.planes() {
            if offset <= 0.0 {
                return Err(Error::OriginOutside);
            }
            r_in = r_in.min(offset);
        }
        let mw = grid.integrate(|x| self.support([x[0], x[1], x[2]]))?;
        Ok(BallGauge::new(r_in, r_out, mw))
    }

    /// Hull-consistency check: every stored vertex lies on the hull
    /// boundary and the centroid is strictly inside every facet plane.
    pub fn validate(&self) -> Result<()> {
        let planes = self.planes();
        let c = self.volume_centroid();
        let scale = self.vertices.iter().map(|v| norm3(*v)).fold(0.0f64, f64::max);
        for (n, offset) in &planes {
            if dot3(*n, c) >= *offset {
                return Err(Error::DegenerateBody("facet oriented inward".into()));
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let on_boundary = planes
                .iter()
                .any(|(n, offset)| (dot3(*n, *v) - offset).abs() <= 1e-9 * scale.max(1.0));
            if !on_boundary {
                return Err(Error::DegenerateBody(format!(
                    "vertex {i} is interior to the hull"
                )));
            }
        }
        Ok(())
    }

    /// Approximate Steiner symmetrization in `direction`: chords sampled on
    /// a `resolution x resolution` grid over the shadow, plus one chord per
    /// original vertex projection to anchor the silhouette.
    pub fn steiner_symmetrize_sampled(
        &self,
        direction: [f64; 3],
        resolution: usize,
    ) -> Result<Steiner3Outcome> {
        if resolution < 16 {
            return Err(Error::ResolutionTooLow { got: resolution, min: 16 });
        }
        let len = norm3(direction);
        if !(len > 1e-12) {
            return Err(Error::InvalidArgument("zero symmetrization direction".into()));
        }
        let u = [direction[0] / len, direction[1] / len, direction[2] / len];
        // orthonormal frame (a, b) spanning the plane orthogonal to u
        let seed = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let mut a = add_scaled(seed, u, -dot3(seed, u));
        let na = norm3(a);
        a = [a[0] / na, a[1] / na, a[2] / na];
        let b = cross3(u, a);

        // shadow bounding box in the (a, b) frame
        let mut amin = f64::INFINITY;
        let mut amax = f64::NEG_INFINITY;
        let mut bmin = f64::INFINITY;
        let mut bmax = f64::NEG_INFINITY;
        let mut vertex_shadows = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let pa = dot3(*v, a);
            let pb = dot3(*v, b);
            amin = amin.min(pa);
            amax = amax.max(pa);
            bmin = bmin.min(pb);
            bmax = bmax.max(pb);
            vertex_shadows.push((pa, pb));
        }

        let planes = self.planes();
        let scale = amax.abs().max(amin.abs()).max(bmax.abs()).max(bmin.abs()).max(1.0);
        let slack = 1e-9 * scale;
        let clip = |pa: f64, pb: f64| -> Option<f64> {
            // chord length of { base + t u : t } inside all half-spaces
            let base = add_scaled(add_scaled([0.0; 3], a, pa), b, pb);
            let mut t_lo = f64::NEG_INFINITY;
            let mut t_hi = f64::INFINITY;
            for (n, offset) in &planes {
                let denom = dot3(u, *n);
                let num = offset - dot3(base, *n);
                if denom.abs() <= 1e-12 {
                    if num < -slack {
                        return None;
                    }
                } else if denom > 0.0 {
                    t_hi = t_hi.min(num / denom);
                } else {
                    t_lo = t_lo.max(num / denom);
                }
            }
            if t_hi >= t_lo {
                Some(t_hi - t_lo)
            } else if t_lo - t_hi <= slack {
                // numerical contradiction between near-parallel planes:
                // keep a zero-length chord to anchor the silhouette
                Some(0.0)
            } else {
                None
            }
        };

        let mut endpoints: Vec<[f64; 3]> = Vec::new();
        let mut push_chord = |pa: f64, pb: f64, chord: f64| {
            let base = add_scaled(add_scaled([0.0; 3], a, pa), b, pb);
            endpoints.push(add_scaled(base, u, 0.5 * chord));
            endpoints.push(add_scaled(base, u, -0.5 * chord));
        };
        let da = (amax - amin) / resolution as f64;
        let db = (bmax - bmin) / resolution as f64;
        for i in 0..resolution {
            let pa = amin + (i as f64 + 0.5) * da;
            for j in 0..resolution {
                let pb = bmin + (j as f64 + 0.5) * db;
                if let Some(chord) = clip(pa, pb) {
                    push_chord(pa, pb, chord);
                }
            }
        }
        // silhouette anchors; stride-capped so iterated runs stay bounded
        let stride = (vertex_shadows.len() / 4096).max(1);
        for (pa, pb) in vertex_shadows.into_iter().step_by(stride) {
            if let Some(chord) = clip(pa, pb) {
                push_chord(pa, pb, chord);
            }
        }
        if endpoints.len() < 4 {
            return Err(Error::DiscretizationBudget(
                "shadow grid too coarse: no chords intersected the body".into(),
            ));
        }
        // snap endpoints so that near-coplanar cap noise collapses before
        // hull construction; far below the chord discretization error
        let snap = 1e-9 * scale;
        for p in endpoints.iter_mut() {
            for c in p.iter_mut() {
                *c = (*c / snap).round() * snap;
            }
        }
        let body = PolytopeBody3::from_points(&endpoints)?;
        let volume_rel_error = (body.volume() - self.volume()).abs() / self.volume();
        Ok(Steiner3Outcome { body, volume_rel_error })
    }
}

/// Result of an approximate 3D Steiner step.
#[derive(Clone, Debug)]
pub struct Steiner3Outcome {
    pub body: PolytopeBody3,
    /// |vol_out - vol_in| / vol_in, the reported discretization error.
    pub volume_rel_error: f64,
}

/// Deterministic joggle: perturbation from a splitmix-style hash of the
/// point index, the coordinate and the attempt number.
fn joggle(points: &[[f64; 3]], amplitude: f64, attempt: u64) -> Vec<[f64; 3]> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut out = *p;
            for (c, x) in out.iter_mut().enumerate() {
                let h = crate::geom::mix64(
                    (i as u64) ^ ((c as u64) << 40) ^ (attempt.wrapping_mul(0x9e37_79b9)),
                );
                let unit = (h >> 11) as f64 / (1u64 << 53) as f64; // [0, 1)
                *x += amplitude * (2.0 * unit - 1.0);
            }
            out
        })
        .collect()
}

struct Facet {
    pts: [usize; 3],
    normal: [f64; 3],
    offset: f64,
    alive: bool,
    conflicts: Vec<usize>,
}

impl Facet {
    fn new(pts: [usize; 3], points: &[[f64; 3]]) -> Self {
        let a = points[pts[0]];
        let n = cross3(sub(points[pts[1]], a), sub(points[pts[2]], a));
        Self { pts, normal: n, offset: dot3(n, a), alive: true, conflicts: Vec::new() }
    }

    fn dist(&self, p: [f64; 3]) -> f64 {
        dot3(self.normal, p) - self.offset
    }
}

/// Quickhull with conflict lists and an edge adjacency map. Input points
/// are deduplicated lexicographically; collinear and coplanar inputs fail
/// with a degeneracy error.
fn quickhull(input: &[[f64; 3]]) -> Result<PolytopeBody3> {
    let mut points: Vec<[f64; 3]> = input.to_vec();
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    points.dedup_by(|a, b| norm3(sub(*a, *b)) <= 1e-12);
    if points.len() < 4 {
        return Err(Error::DegenerateBody("hull needs >= 4 distinct points".into()));
    }
    let scale = points
        .iter()
        .map(|p| p.iter().fold(0.0f64, |m, c| m.max(c.abs())))
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let eps = 1e-9 * scale;

    // initial simplex: extreme pair, then farthest from the line, then
    // farthest from the plane
    let (mut i0, mut i1) = (0, 0);
    let mut best = -1.0;
    for axis in 0..3 {
        let lo = (0..points.len()).min_by(|&a, &b| points[a][axis].partial_cmp(&points[b][axis]).unwrap()).unwrap();
        let hi = (0..points.len()).max_by(|&a, &b| points[a][axis].partial_cmp(&points[b][axis]).unwrap()).unwrap();
        let d = norm3(sub(points[hi], points[lo]));
        if d > best {
            best = d;
            i0 = lo;
            i1 = hi;
        }
    }
    if best <= eps {
        return Err(Error::DegenerateBody("all points coincide".into()));
    }
    let dir = sub(points[i1], points[i0]);
    let i2 = (0..points.len())
        .max_by(|&a, &b| {
            let da = norm3(cross3(sub(points[a], points[i0]), dir));
            let db = norm3(cross3(sub(points[b], points[i0]), dir));
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    if norm3(cross3(sub(points[i2], points[i0]), dir)) <= eps * norm3(dir) {
        return Err(Error::DegenerateBody("points are collinear".into()));
    }
    let base_normal = cross3(sub(points[i1], points[i0]), sub(points[i2], points[i0]));
    let i3 = (0..points.len())
        .max_by(|&a, &b| {
            let da = (dot3(base_normal, sub(points[a], points[i0]))).abs();
            let db = (dot3(base_normal, sub(points[b], points[i0]))).abs();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let h = dot3(base_normal, sub(points[i3], points[i0]));
    if h.abs() <= eps * norm3(base_normal) {
        return Err(Error::DegenerateBody("points are coplanar".into()));
    }
    // orient the tetrahedron so facets face outward
    let (t0, t1, t2, t3) = if h < 0.0 { (i0, i1, i2, i3) } else { (i1, i0, i2, i3) };

    let mut facets: Vec<Facet> = Vec::new();
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    let add_facet = |pts: [usize; 3],
                         facets: &mut Vec<Facet>,
                         edge_owner: &mut HashMap<(usize, usize), usize>,
                         points: &[[f64; 3]]|
     -> usize {
        let id = facets.len();
        facets.push(Facet::new(pts, points));
        edge_owner.insert((pts[0], pts[1]), id);
        edge_owner.insert((pts[1], pts[2]), id);
        edge_owner.insert((pts[2], pts[0]), id);
        id
    };
    for pts in [[t0, t1, t2], [t0, t3, t1], [t0, t2, t3], [t1, t3, t2]] {
        add_facet(pts, &mut facets, &mut edge_owner, &points);
    }

    // conflict assignment
    for p in 0..points.len() {
        if p == t0 || p == t1 || p == t2 || p == t3 {
            continue;
        }
        for f in 0..facets.len() {
            if facets[f].dist(points[p]) > eps * norm3(facets[f].normal) {
                facets[f].conflicts.push(p);
                break;
            }
        }
    }
    let mut work: Vec<usize> = (0..facets.len()).filter(|&f| !facets[f].conflicts.is_empty()).collect();

    while let Some(fid) = work.pop() {
        if !facets[fid].alive || facets[fid].conflicts.is_empty() {
            continue;
        }
        // farthest conflict point of this facet
        let (p, _) = facets[fid]
            .conflicts
            .iter()
            .map(|&p| (p, facets[fid].dist(points[p])))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();

        // visible region: BFS over edge adjacency
        let mut visible = vec![fid];
        let mut seen: HashMap<usize, ()> = HashMap::from([(fid, ())]);
        let mut stack = vec![fid];
        while let Some(f) = stack.pop() {
            let pts = facets[f].pts;
            for (a, b) in [(pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[0])] {
                if let Some(&nbr) = edge_owner.get(&(b, a)) {
                    if facets[nbr].alive
                        && !seen.contains_key(&nbr)
                        && facets[nbr].dist(points[p]) > eps * norm3(facets[nbr].normal)
                    {
                        seen.insert(nbr, ());
                        visible.push(nbr);
                        stack.push(nbr);
                    }
                }
            }
        }

        // horizon: directed edges of visible facets whose twin is hidden
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &f in &visible {
            let pts = facets[f].pts;
            for (a, b) in [(pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[0])] {
                let twin = edge_owner.get(&(b, a)).copied();
                match twin {
                    Some(t) if seen.contains_key(&t) => {}
                    _ => horizon.push((a, b)),
                }
            }
        }

        // retire visible facets, collecting their conflict points
        let mut orphans: Vec<usize> = Vec::new();
        for &f in &visible {
            facets[f].alive = false;
            orphans.append(&mut facets[f].conflicts);
            let pts = facets[f].pts;
            for (a, b) in [(pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[0])] {
                edge_owner.remove(&(a, b));
            }
        }
        orphans.retain(|&q| q != p);
        orphans.sort_unstable();
        orphans.dedup();

        // cone of new facets over the horizon
        let mut created = Vec::with_capacity(horizon.len());
        for (a, b) in horizon {
            let id = add_facet([a, b, p], &mut facets, &mut edge_owner, &points);
            created.push(id);
        }
        for q in orphans {
            for &f in &created {
                if facets[f].dist(points[q]) > eps * norm3(facets[f].normal) {
                    facets[f].conflicts.push(q);
                    break;
                }
            }
        }
        for &f in &created {
            if !facets[f].conflicts.is_empty() {
                work.push(f);
            }
        }
    }

    // compact: keep referenced vertices only
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for f in facets.iter().filter(|f| f.alive) {
        let mut tri = [0usize; 3];
        for (slot, &p) in tri.iter_mut().zip(&f.pts) {
            let idx = *remap.entry(p).or_insert_with(|| {
                vertices.push(points[p]);
                vertices.len() - 1
            });
            *slot = idx;
        }
        triangles.push(tri);
    }
    let hull = PolytopeBody3 { vertices, facets: triangles };

    // orientation audit: every substantial facet must face away from the
    // vertex centroid, otherwise the visibility thresholds broke down
    let mut centroid = [0.0f64; 3];
    for v in &hull.vertices {
        for (c, x) in centroid.iter_mut().zip(v) {
            *c += x / hull.vertices.len() as f64;
        }
    }
    for f in &hull.facets {
        let a = hull.vertices[f[0]];
        let n = cross3(
            sub(hull.vertices[f[1]], a),
            sub(hull.vertices[f[2]], a),
        );
        let len = norm3(n);
        if len > 1e-9 * scale * scale && dot3(n, sub(centroid, a)) > eps * len {
            return Err(Error::DegenerateBody(
                "hull construction produced an inward-facing facet".into(),
            ));
        }
    }
    Ok(hull)
}
