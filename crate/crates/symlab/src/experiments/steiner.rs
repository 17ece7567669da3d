//! Randomized Steiner symmetrization process.
//!
//! Directions come from the columns of a fresh Haar basis each round,
//! applied in index order, mirroring the Minkowski driver. 2D bodies are
//! exact polygons: volume is conserved to rounding, the circumradius is
//! non-increasing, and the process runs in two phases (down to
//! `r_out < 1 + 1/n`, then down to the target). 3D bodies use the sampled
//! chord construction and abort when the per-step volume error exceeds its
//! 2% budget.

use std::time::Instant;

use rayon::prelude::*;

use crate::bodies::{small_cap_check, CheckOutcome, PolygonBody, PolytopeBody3};
use crate::error::{Error, Result};
use crate::experiments::minkowski::RunRecord;
use crate::geom::{sample_haar_basis, RngStream, SphereGrid};

#[derive(Clone, Debug)]
pub enum SteinerSeed {
    /// Rectangle with the given aspect ratio (2D).
    Rectangle { aspect: f64 },
    /// Hull of random points in a disk (2D).
    RandomPolygon { points: usize },
    /// Regular polygon approximating the disk (2D).
    Disk { sides: usize },
    /// Axis-aligned cube (3D).
    Cube3,
    /// Fibonacci-sphere polytope approximating the ball (3D).
    Ball3,
    /// Hull of random shell points (3D).
    Random3 { points: usize },
}

impl SteinerSeed {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rect4" => Ok(SteinerSeed::Rectangle { aspect: 4.0 }),
            "rect2" => Ok(SteinerSeed::Rectangle { aspect: 2.0 }),
            "polygon" => Ok(SteinerSeed::RandomPolygon { points: 24 }),
            "disk" => Ok(SteinerSeed::Disk { sides: 256 }),
            "cube" => Ok(SteinerSeed::Cube3),
            "ball" => Ok(SteinerSeed::Ball3),
            "random" => Ok(SteinerSeed::Random3 { points: 60 }),
            other => Err(Error::Config(format!(
                "unknown Steiner seed `{other}`; valid: rect4, rect2, polygon, disk (2D); cube, ball, random (3D)"
            ))),
        }
    }

    fn dim(&self) -> usize {
        match self {
            SteinerSeed::Rectangle { .. } | SteinerSeed::RandomPolygon { .. } | SteinerSeed::Disk { .. } => 2,
            _ => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SteinerRunConfig {
    pub dim: usize,
    pub seed_body: SteinerSeed,
    /// Rescale the seed to the unit-ball volume before the run.
    pub normalize_volume: bool,
    /// Stop once the certificate against the unit ball drops below this.
    pub target_eps: f64,
    pub max_rounds: usize,
    pub seed: u64,
    /// Planar chord resolution for 3D steps.
    pub resolution: usize,
    /// Vertex budget for 2D polygons; beyond it the flattest vertices are
    /// decimated (the area cost at this density is below the drift budget).
    pub vertex_budget: usize,
}

impl SteinerRunConfig {
    pub fn new(seed_body: SteinerSeed, seed: u64) -> Self {
        let dim = seed_body.dim();
        Self {
            dim,
            seed_body,
            normalize_volume: true,
            target_eps: 0.05,
            max_rounds: 250,
            seed,
            resolution: 64,
            vertex_budget: 500_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim != self.seed_body.dim() {
            return Err(Error::Config(format!(
                "seed body lives in dimension {}, config says {}",
                self.seed_body.dim(),
                self.dim
            )));
        }
        if !(self.target_eps > 0.0) {
            return Err(Error::Config("target eps must be positive".into()));
        }
        if self.max_rounds == 0 {
            return Err(Error::Config("need at least one round".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SteinerRunOutcome {
    pub records: Vec<RunRecord>,
    /// Rounds spent until `r_out < 1 + 1/n` (None if never reached).
    pub phase1_rounds: Option<usize>,
    pub reached_target: bool,
    /// Inner-ball check outcomes at the rounds where the preconditions held.
    pub small_cap_checks: Vec<(usize, CheckOutcome)>,
}

/// Run one Steiner symmetrization process. Deterministic in the config.
pub fn run_steiner_process(cfg: &SteinerRunConfig) -> Result<SteinerRunOutcome> {
    cfg.validate()?;
    match cfg.dim {
        2 => run_polygon_process(cfg),
        3 => run_polytope_process(cfg),
        d => Err(Error::Config(format!(
            "Steiner runs support dimensions 2 (exact) and 3 (sampled), got {d}"
        ))),
    }
}

fn build_polygon_seed(cfg: &SteinerRunConfig, rng: &mut RngStream) -> Result<PolygonBody> {
    let poly = match &cfg.seed_body {
        SteinerSeed::Rectangle { aspect } => {
            PolygonBody::rectangle(0.5 * aspect, 0.5)?
        }
        SteinerSeed::RandomPolygon { points } => PolygonBody::random_convex(rng, *points, 1.0)?,
        SteinerSeed::Disk { sides } => PolygonBody::regular(*sides, 1.0)?,
        _ => return Err(Error::Config("2D run needs a 2D seed".into())),
    };
    if cfg.normalize_volume {
        poly.normalized_to_area(std::f64::consts::PI)
    } else {
        let c = poly.centroid();
        Ok(poly.translated([-c[0], -c[1]]))
    }
}

fn polygon_record(poly: &PolygonBody, round: usize, count: usize, t: Instant) -> Result<RunRecord> {
    let gauge = poly.gauges()?;
    Ok(RunRecord {
        round,
        count,
        eps: gauge.eps_vs_radius(1.0),
        mean_width_half: gauge.mean_width_half,
        r_in: gauge.r_in,
        r_out: gauge.r_out,
        volume: Some(poly.area()),
        energies: Vec::new(),
        wall_ms: t.elapsed().as_secs_f64() * 1e3,
    })
}

fn run_polygon_process(cfg: &SteinerRunConfig) -> Result<SteinerRunOutcome> {
    let n = 2usize;
    let mut rng = RngStream::new(cfg.seed);
    let mut poly = build_polygon_seed(cfg, &mut rng)?;
    let mut records = Vec::with_capacity(cfg.max_rounds + 1);
    let mut small_cap_checks = Vec::new();
    let mut phase1_rounds = None;
    let mut reached_target = false;
    records.push(polygon_record(&poly, 0, 0, Instant::now())?);
    for round in 1..=cfg.max_rounds {
        let t = Instant::now();
        let basis = sample_haar_basis(&mut rng, n)?;
        for i in 0..n {
            let u = basis.column(i).coords();
            poly = poly.steiner_symmetrize([u[0], u[1]])?;
        }
        if poly.vertex_count() > cfg.vertex_budget {
            poly.decimate_to(cfg.vertex_budget);
        }
        let record = polygon_record(&poly, round, round * n, t)?;
        if phase1_rounds.is_none() && record.r_out < 1.0 + 1.0 / n as f64 {
            phase1_rounds = Some(round);
        }
        // inner-ball certificate whenever the cap precondition applies:
        // the smallest admissible eps for the current circumradius excess
        let excess = record.r_out - 1.0;
        if excess > 0.0 {
            let eps = 30.0 * excess.powf(1.0 / n as f64);
            if eps < 1.0 {
                let gauge = crate::bodies::BallGauge::new(
                    record.r_in,
                    record.r_out,
                    record.mean_width_half,
                );
                small_cap_checks.push((round, small_cap_check(&gauge, eps, n, 1e-9)));
            }
        }
        let stop = record.eps < cfg.target_eps;
        records.push(record);
        if stop {
            reached_target = true;
            break;
        }
    }
    Ok(SteinerRunOutcome { records, phase1_rounds, reached_target, small_cap_checks })
}

fn build_polytope_seed(cfg: &SteinerRunConfig, rng: &mut RngStream) -> Result<PolytopeBody3> {
    let body = match &cfg.seed_body {
        SteinerSeed::Cube3 => PolytopeBody3::cube(1.0)?,
        SteinerSeed::Ball3 => PolytopeBody3::ball_approx(500)?,
        SteinerSeed::Random3 { points } => PolytopeBody3::random(rng, *points, 1.0)?,
        _ => return Err(Error::Config("3D run needs a 3D seed".into())),
    };
    if cfg.normalize_volume {
        body.normalized_to_volume(crate::bodies::unit_ball_volume(3))
    } else {
        let c = body.volume_centroid();
        body.translated([-c[0], -c[1], -c[2]])
    }
}

fn run_polytope_process(cfg: &SteinerRunConfig) -> Result<SteinerRunOutcome> {
    let n = 3usize;
    let mut rng = RngStream::new(cfg.seed);
    let grid = SphereGrid::product3(32)?;
    let mut body = build_polytope_seed(cfg, &mut rng)?;
    let mut records = Vec::with_capacity(cfg.max_rounds + 1);
    let mut phase1_rounds = None;
    let mut reached_target = false;
    let record_of = |body: &PolytopeBody3, round: usize, t: Instant, grid: &SphereGrid| -> Result<RunRecord> {
        let gauge = body.gauges(grid)?;
        Ok(RunRecord {
            round,
            count: round * n,
            eps: gauge.eps_vs_radius(1.0),
            mean_width_half: gauge.mean_width_half,
            r_in: gauge.r_in,
            r_out: gauge.r_out,
            volume: Some(body.volume()),
            energies: Vec::new(),
            wall_ms: t.elapsed().as_secs_f64() * 1e3,
        })
    };
    records.push(record_of(&body, 0, Instant::now(), &grid)?);
    for round in 1..=cfg.max_rounds {
        let t = Instant::now();
        let basis = sample_haar_basis(&mut rng, n)?;
        for i in 0..n {
            let u = basis.column(i).coords();
            let outcome = body.steiner_symmetrize_sampled([u[0], u[1], u[2]], cfg.resolution)?;
            if outcome.volume_rel_error > 0.02 {
                return Err(Error::DiscretizationBudget(format!(
                    "3D Steiner step volume error {:.3}% exceeds the 2% budget at round {round}",
                    100.0 * outcome.volume_rel_error
                )));
            }
            body = outcome.body;
        }
        let record = record_of(&body, round, t, &grid)?;
        if phase1_rounds.is_none() && record.r_out < 1.0 + 1.0 / n as f64 {
            phase1_rounds = Some(round);
        }
        let stop = record.eps < cfg.target_eps;
        records.push(record);
        if stop {
            reached_target = true;
            break;
        }
    }
    Ok(SteinerRunOutcome {
        records,
        phase1_rounds,
        reached_target,
        small_cap_checks: Vec::new(),
    })
}

/// Independent Steiner runs, merged in index order.
pub fn run_steiner_ensemble(
    cfg: &SteinerRunConfig,
    runs: usize,
) -> Result<Vec<SteinerRunOutcome>> {
    cfg.validate()?;
    (0..runs as u64)
        .into_par_iter()
        .map(|i| {
            let mut run_cfg = cfg.clone();
            run_cfg.seed = cfg.seed ^ i;
            run_steiner_process(&run_cfg)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_seed_sits_at_the_floor() {
        let mut cfg = SteinerRunConfig::new(SteinerSeed::Disk { sides: 256 }, 3);
        cfg.max_rounds = 3;
        let out = run_steiner_process(&cfg).unwrap();
        assert!(out.reached_target);
        assert!(out.records[0].eps <= 2e-3, "disk eps {}", out.records[0].eps);
    }

    #[test]
    fn rectangle_run_converges_with_constant_volume() {
        let mut cfg = SteinerRunConfig::new(SteinerSeed::Rectangle { aspect: 4.0 }, 7);
        cfg.max_rounds = 100;
        let out = run_steiner_process(&cfg).unwrap();
        assert!(out.reached_target, "did not reach eps < 0.05");
        let records = &out.records;
        let v0 = records[0].volume.unwrap();
        assert!((v0 - std::f64::consts::PI).abs() <= 1e-12);
        for r in records {
            let drift = (r.volume.unwrap() - v0).abs() / v0;
            assert!(drift <= 1e-8, "round {}: volume drift {drift}", r.round);
        }
        // circumradius never increases under Steiner symmetrization
        for pair in records.windows(2) {
            assert!(
                pair[1].r_out <= pair[0].r_out + 1e-12,
                "r_out increased at round {}",
                pair[1].round
            );
        }
        assert!(out.phase1_rounds.is_some());
    }

    #[test]
    fn runs_are_deterministic() {
        let mut cfg = SteinerRunConfig::new(SteinerSeed::RandomPolygon { points: 16 }, 11);
        cfg.max_rounds = 8;
        cfg.target_eps = 1e-6; // don't stop early
        let a = run_steiner_process(&cfg).unwrap();
        let b = run_steiner_process(&cfg).unwrap();
        assert_eq!(a.records.len(), b.records.len());
        for (ra, rb) in a.records.iter().zip(&b.records) {
            assert_eq!(ra.eps.to_bits(), rb.eps.to_bits());
            assert_eq!(ra.volume.unwrap().to_bits(), rb.volume.unwrap().to_bits());
        }
    }

    #[test]
    fn cube3_run_makes_progress_within_budget() {
        let mut cfg = SteinerRunConfig::new(SteinerSeed::Cube3, 5);
        cfg.max_rounds = 4;
        cfg.target_eps = 0.12;
        let out = run_steiner_process(&cfg).unwrap();
        let first = &out.records[0];
        let last = out.records.last().unwrap();
        assert!(last.r_out < first.r_out);
        for r in &out.records {
            let drift = (r.volume.unwrap() - first.volume.unwrap()).abs() / first.volume.unwrap();
            assert!(drift <= 0.02 * 3.0 * r.round as f64 + 1e-12, "drift {drift}");
        }
    }
}
