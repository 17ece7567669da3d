//! Command-line front end.
//!
//! Subcommands: `dims`, `decay`, `minkowski`, `steiner`, `verify`,
//! `report`. Parameters come from flags, optionally backed by a plain
//! `key=value` config file (`--config`); flags override the file and
//! unknown keys are rejected with the list of valid ones. Outputs are
//! written atomically under the output directory, prefixed with the
//! subcommand and seed. Exit codes: 0 success, 1 failed verification,
//! 2 configuration error, 3 numerical abort.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bodies::{
    bokowski_heil_residual, mean_width_contraction_check, small_cap_check, unit_ball_volume,
    urysohn_check, CheckOutcome, PolygonBody,
};
use crate::error::{Error, Result};
use crate::experiments::{
    run_decay_suite, run_minkowski_process, run_steiner_process, write_eps_svg, write_run_csv,
    MinkowskiRunConfig, SeedBody, SteinerRunConfig, SteinerSeed,
};
use crate::geom::{RngStream, SphereGrid, UnitVector};
use crate::harmonics::{
    basis_symmetrization_ratio, brute_force_harmonic_dim, brute_force_invariant_dim,
    decay_dominates_dimension, dimension_power_inequality, gegenbauer, harmonic_dim,
    invariant_dim, rotation_average_kernel, rotation_average_projection, single_direction_ratio,
    sup_norm_check, symmetrization_ratio_upper_bound, zero_mean_norm_contraction, SphereFn,
    ZonalHarmonic, ZonalMixture,
};

/// Fixed default seed; runs are reproducible unless a seed is given.
pub const DEFAULT_SEED: u64 = 17;

const VALID_CONFIG_KEYS: &[&str] = &[
    "n", "k", "body", "rounds", "eps", "grid", "trials", "seed", "kmax", "out", "svg",
];

#[derive(Parser)]
#[command(
    name = "symlab",
    about = "Convex-body symmetrization laboratory",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Plain key=value parameter file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Random seed (defaults to a fixed documented constant).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the harmonic dimension table: N_k, invariant N_k0, their
    /// ratio and the closed-form upper bound.
    Dims {
        /// Dimension range, e.g. `3`, `2..5` or `2,3,4`.
        #[arg(long, default_value = "2..5")]
        n: String,
        /// Degree range.
        #[arg(long, default_value = "0..8")]
        k: String,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo decay table: empirical vs exact one-round ratios.
    Decay {
        #[arg(long, default_value = "3")]
        n: String,
        #[arg(long, default_value = "2,4")]
        k: String,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run one Minkowski symmetrization process and write CSV (+SVG).
    Minkowski {
        #[arg(long)]
        n: Option<usize>,
        /// Seed body: ball, cube, simplex or segment.
        #[arg(long)]
        body: Option<String>,
        #[arg(long)]
        rounds: Option<usize>,
        /// Grid resolution parameter (0 = default for the dimension).
        #[arg(long)]
        grid: Option<usize>,
        /// Stopping thresholds, descending, e.g. `1e-1,1e-2`.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        kmax: Option<usize>,
        /// Also render an SVG decay plot.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run one Steiner symmetrization process and write CSV (+SVG).
    Steiner {
        #[arg(long)]
        n: Option<usize>,
        /// Seed body: rect4, rect2, polygon, disk (2D); cube, ball, random (3D).
        #[arg(long)]
        body: Option<String>,
        #[arg(long)]
        rounds: Option<usize>,
        /// Planar chord resolution for 3D steps.
        #[arg(long)]
        grid: Option<usize>,
        /// Stopping threshold against the unit ball.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run named verification suites; exit 0 iff all pass.
    Verify {
        /// Suites to run (default: all). `--list` prints the names.
        suites: Vec<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1500)]
        trials: usize,
        /// Constant for the dimension-power inequality sweep.
        #[arg(long, default_value_t = 10.0)]
        c1: f64,
        /// Constant for the decay-dominance inequality sweep.
        #[arg(long, default_value_t = 10.0)]
        c2: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Re-render the SVG decay plot from a run CSV.
    Report {
        /// Input CSV produced by `minkowski` or `steiner`.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Dims { n, k, common } => cmd_dims(&n, &k, &common),
        Command::Decay { n, k, trials, common } => cmd_decay(&n, &k, trials, &common),
        Command::Minkowski { n, body, rounds, grid, eps, kmax, svg, common } => {
            cmd_minkowski(n, body, rounds, grid, eps, kmax, svg, &common)
        }
        Command::Steiner { n, body, rounds, grid, eps, svg, common } => {
            cmd_steiner(n, body, rounds, grid, eps, svg, &common)
        }
        Command::Verify { suites, list, trials, c1, c2, common } => {
            cmd_verify(&suites, list, trials, c1, c2, &common)
        }
        Command::Report { input, common } => cmd_report(&input, &common),
    }
}

/// key=value file, one pair per line, `#` comments allowed.
fn load_config(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "{}:{}: expected key=value, got `{line}`",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().to_string();
        if !VALID_CONFIG_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!(
                "unknown config key `{key}`; valid keys: {}",
                VALID_CONFIG_KEYS.join(", ")
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

struct Params {
    map: HashMap<String, String>,
    out: PathBuf,
    seed: u64,
}

impl Params {
    fn resolve(common: &Common) -> Result<Self> {
        let map = match &common.config {
            Some(path) => load_config(path)?,
            None => HashMap::new(),
        };
        let out = common
            .out
            .clone()
            .or_else(|| map.get("out").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        let seed = match (common.seed, map.get("seed")) {
            (Some(s), _) => s,
            (None, Some(s)) => s
                .parse()
                .map_err(|_| Error::Config(format!("bad seed `{s}` in config")))?,
            (None, None) => DEFAULT_SEED,
        };
        Ok(Self { map, out, seed })
    }

    fn usize_or(&self, flag: Option<usize>, key: &str, default: usize) -> Result<usize> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.map.get(key) {
            Some(s) => s
                .parse()
                .map_err(|_| Error::Config(format!("bad {key} `{s}` in config"))),
            None => Ok(default),
        }
    }

    fn string_or(&self, flag: Option<String>, key: &str, default: &str) -> String {
        flag.or_else(|| self.map.get(key).cloned())
            .unwrap_or_else(|| default.to_string())
    }

    fn ensure_out_dir(&self) -> Result<()> {
        std::fs::create_dir_all(&self.out)?;
        Ok(())
    }
}

fn parse_usize_list(spec: &str) -> Result<Vec<usize>> {
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once("..") {
        let lo: usize = a
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad range `{spec}`")))?;
        let hi: usize = b
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad range `{spec}`")))?;
        if hi < lo {
            return Err(Error::Config(format!("empty range `{spec}`")));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad integer `{tok}`")))
        })
        .collect()
}

fn parse_f64_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad float `{tok}`")))
        })
        .collect()
}

fn cmd_dims(n_spec: &str, k_spec: &str, common: &Common) -> Result<i32> {
    let params = Params::resolve(common)?;
    let ns = parse_usize_list(n_spec)?;
    let ks = parse_usize_list(k_spec)?;
    let mut csv = String::from("n,k,N,N0,ratio,bound\n");
    println!("{:>3} {:>4} {:>12} {:>10} {:>10} {:>10}", "n", "k", "N_k", "N_k0", "ratio", "bound");
    for &n in &ns {
        if n < 2 {
            return Err(Error::Config("dims needs n >= 2".into()));
        }
        for &k in &ks {
            let nk = harmonic_dim(n, k)?;
            let nk0 = invariant_dim(n, k)?;
            let ratio = nk0 as f64 / nk as f64;
            let bound = if k >= 2 && k % 2 == 0 {
                format!("{:.6}", symmetrization_ratio_upper_bound(n, k))
            } else {
                "-".to_string()
            };
            println!("{n:>3} {k:>4} {nk:>12} {nk0:>10} {ratio:>10.6} {bound:>10}");
            csv.push_str(&format!("{n},{k},{nk},{nk0},{ratio},{bound}\n"));
        }
    }
    if common.out.is_some() || params.map.contains_key("out") {
        params.ensure_out_dir()?;
        let path = params.out.join(format!("dims_seed{}.csv", params.seed));
        crate::experiments::write_atomic(&path, csv.as_bytes())?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}

fn cmd_decay(n_spec: &str, k_spec: &str, trials: usize, common: &Common) -> Result<i32> {
    let params = Params::resolve(common)?;
    params.ensure_out_dir()?;
    let ns = parse_usize_list(n_spec)?;
    let ks = parse_usize_list(k_spec)?;
    let mut pairs = Vec::new();
    for &n in &ns {
        for &k in &ks {
            if k >= 2 && k % 2 == 0 {
                pairs.push((n, k));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::Config("decay needs at least one even k >= 2".into()));
    }
    let table = run_decay_suite(&pairs, trials, params.seed)?;
    for row in &table.rows {
        println!(
            "n={} k={}: empirical {:.5} +- {:.5}, exact {:.5}, bound {:.5}; single {:.5} vs {:.5}",
            row.n,
            row.k,
            row.empirical.mean,
            row.empirical.std_error,
            row.exact,
            row.upper_bound,
            row.single_empirical.mean,
            row.single_exact
        );
    }
    for c in &table.comparisons {
        println!(
            "n={}: (n/(n+2))^n = {:.4} vs e^-2 = {:.4}",
            c.n, c.per_n_rounds, c.e_minus_2
        );
    }
    let path = params.out.join(format!("decay_seed{}.csv", params.seed));
    crate::experiments::write_decay_csv(&path, &table)?;
    println!("wrote {}", path.display());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_minkowski(
    n: Option<usize>,
    body: Option<String>,
    rounds: Option<usize>,
    grid: Option<usize>,
    eps: Option<String>,
    kmax: Option<usize>,
    svg: bool,
    common: &Common,
) -> Result<i32> {
    let params = Params::resolve(common)?;
    params.ensure_out_dir()?;
    let n = params.usize_or(n, "n", 3)?;
    let body = SeedBody::parse(&params.string_or(body, "body", "cube"))?;
    let mut cfg = MinkowskiRunConfig::new(n, body, params.seed);
    cfg.rounds = params.usize_or(rounds, "rounds", 40)?;
    cfg.resolution = params.usize_or(grid, "grid", 0)?;
    cfg.k_max = params.usize_or(kmax, "kmax", 8)?;
    if let Some(spec) = eps.or_else(|| params.map.get("eps").cloned()) {
        cfg.target_epsilons = parse_f64_list(&spec)?;
    }
    cfg.validate()?;
    let records = run_minkowski_process(&cfg)?;
    let prefix = format!("minkowski_{}_n{}_seed{}", body.label(), n, params.seed);
    let csv_path = params.out.join(format!("{prefix}.csv"));
    write_run_csv(&csv_path, &records)?;
    println!(
        "{} rounds, final eps {:.6}; wrote {}",
        records.len() - 1,
        records.last().expect("nonempty").eps,
        csv_path.display()
    );
    if svg || params.map.get("svg").map(|v| v == "true").unwrap_or(false) {
        let series = vec![(
            format!("{} n={}", body.label(), n),
            records.iter().map(|r| (r.count as f64, r.eps)).collect(),
        )];
        let svg_path = params.out.join(format!("{prefix}.svg"));
        write_eps_svg(&svg_path, &series, "Minkowski symmetrization decay")?;
        println!("wrote {}", svg_path.display());
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_steiner(
    n: Option<usize>,
    body: Option<String>,
    rounds: Option<usize>,
    grid: Option<usize>,
    eps: Option<String>,
    svg: bool,
    common: &Common,
) -> Result<i32> {
    let params = Params::resolve(common)?;
    params.ensure_out_dir()?;
    let body = params.string_or(body, "body", "rect4");
    let seed_body = SteinerSeed::parse(&body)?;
    let mut cfg = SteinerRunConfig::new(seed_body, params.seed);
    let n = params.usize_or(n, "n", cfg.dim)?;
    if n != cfg.dim {
        return Err(Error::Config(format!(
            "seed body `{body}` lives in dimension {}, got --n {n}",
            cfg.dim
        )));
    }
    cfg.max_rounds = params.usize_or(rounds, "rounds", 250)?;
    cfg.resolution = params.usize_or(grid, "grid", 64)?;
    if let Some(spec) = eps.or_else(|| params.map.get("eps").cloned()) {
        let values = parse_f64_list(&spec)?;
        cfg.target_eps = *values
            .first()
            .ok_or_else(|| Error::Config("empty eps list".into()))?;
    }
    cfg.validate()?;
    let outcome = run_steiner_process(&cfg)?;
    let prefix = format!("steiner_{body}_n{}_seed{}", n, params.seed);
    let csv_path = params.out.join(format!("{prefix}.csv"));
    write_run_csv(&csv_path, &outcome.records)?;
    let last = outcome.records.last().expect("nonempty");
    println!(
        "{} rounds, final eps {:.6}, target reached: {}; wrote {}",
        outcome.records.len() - 1,
        last.eps,
        outcome.reached_target,
        csv_path.display()
    );
    if svg || params.map.get("svg").map(|v| v == "true").unwrap_or(false) {
        let series = vec![(
            format!("{body} n={n}"),
            outcome
                .records
                .iter()
                .map(|r| (r.count as f64, r.eps))
                .collect(),
        )];
        let svg_path = params.out.join(format!("{prefix}.svg"));
        write_eps_svg(&svg_path, &series, "Steiner symmetrization decay")?;
        println!("wrote {}", svg_path.display());
    }
    Ok(0)
}

fn cmd_report(input: &Path, common: &Common) -> Result<i32> {
    let params = Params::resolve(common)?;
    params.ensure_out_dir()?;
    let text = std::fs::read_to_string(input)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?;
    if !header.starts_with("round,count,eps") {
        return Err(Error::InvalidArgument(
            "not a run CSV (expected header round,count,eps,...)".into(),
        ));
    }
    let mut points = Vec::new();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() < 3 {
            continue;
        }
        let count: f64 = cells[1]
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad count `{}`", cells[1])))?;
        let eps: f64 = cells[2]
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad eps `{}`", cells[2])))?;
        points.push((count, eps));
    }
    let stem = input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("report");
    let svg_path = params.out.join(format!("{stem}.svg"));
    write_eps_svg(&svg_path, &[(stem.to_string(), points)], stem)?;
    println!("wrote {}", svg_path.display());
    Ok(0)
}

const SUITES: &[&str] = &[
    "dims",
    "kernel",
    "projection",
    "basis-decay",
    "zero-mean",
    "single-direction",
    "sup-norm",
    "dim-power",
    "ratio-power",
    "bokowski-heil",
    "mean-width-cap",
    "urysohn",
    "small-cap",
];

fn cmd_verify(
    suites: &[String],
    list: bool,
    trials: usize,
    c1: f64,
    c2: f64,
    common: &Common,
) -> Result<i32> {
    if list {
        for s in SUITES {
            println!("{s}");
        }
        return Ok(0);
    }
    let params = Params::resolve(common)?;
    let selected: Vec<String> = if suites.is_empty() || suites.iter().any(|s| s == "all") {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        suites.to_vec()
    };
    for s in &selected {
        if !SUITES.contains(&s.as_str()) {
            return Err(Error::Config(format!(
                "unknown suite `{s}`; valid suites: {}",
                SUITES.join(", ")
            )));
        }
    }
    let mut all_pass = true;
    for suite in &selected {
        match run_suite(suite, trials, c1, c2, params.seed)? {
            None => println!("suite {suite}: PASS"),
            Some(detail) => {
                all_pass = false;
                println!("suite {suite}: FAIL ({detail})");
            }
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

/// Run one verification suite; `Ok(None)` is a pass, `Ok(Some(reason))` a
/// failure.
fn run_suite(suite: &str, trials: usize, c1: f64, c2: f64, seed: u64) -> Result<Option<String>> {
    let mut rng = RngStream::new(seed);
    let fail = |msg: String| Ok(Some(msg));
    match suite {
        "dims" => {
            for n in 2..=5usize {
                for k in 0..=8usize {
                    let closed = harmonic_dim(n, k)?;
                    let oracle = brute_force_harmonic_dim(n, k)? as u128;
                    if closed != oracle {
                        return fail(format!("harmonic dim mismatch at n={n}, k={k}"));
                    }
                    let closed0 = invariant_dim(n, k)?;
                    let oracle0 = brute_force_invariant_dim(n, k)? as u128;
                    if closed0 != oracle0 {
                        return fail(format!("invariant dim mismatch at n={n}, k={k}"));
                    }
                }
            }
            Ok(None)
        }
        "kernel" => {
            for (n, k) in [(3usize, 2usize), (3, 3), (4, 2)] {
                let x = crate::geom::sample_unit_sphere(&mut rng, n)?;
                let y = crate::geom::sample_unit_sphere(&mut rng, n)?;
                let pole = crate::geom::sample_unit_sphere(&mut rng, n)?;
                let t = crate::geom::dot(x.coords(), y.coords()).clamp(-1.0, 1.0);
                let expected = gegenbauer(n, k, t)?;
                let est = rotation_average_kernel(n, k, &x, &y, &pole, trials.max(2000), &mut rng)?;
                if !est.agrees_with(expected, 3.0, 1e-9) {
                    return fail(format!(
                        "kernel estimate {:.5} vs {expected:.5} (se {:.5}) at n={n}, k={k}",
                        est.mean, est.std_error
                    ));
                }
            }
            Ok(None)
        }
        "projection" => {
            let grid = SphereGrid::product3(20)?;
            let f = ZonalMixture::random(3, &[1, 2, 3], &mut rng)?;
            let pole = crate::geom::sample_unit_sphere(&mut rng, 3)?;
            for k in [1usize, 2] {
                let (est, reference) =
                    rotation_average_projection(&f, k, &pole, trials.max(1000), &mut rng, &grid)?;
                if !est.agrees_with(reference, 3.0, 10.0 * grid.tolerance()) {
                    return fail(format!(
                        "projection estimate {:.6} vs reference {reference:.6} at k={k}",
                        est.mean
                    ));
                }
            }
            Ok(None)
        }
        "basis-decay" => {
            for (n, k) in [(3usize, 2usize), (4, 2)] {
                let grid = match n {
                    3 => SphereGrid::product3(20)?,
                    _ => SphereGrid::product4(12)?,
                };
                let report = basis_symmetrization_ratio(n, k, trials.max(600), &mut rng, &grid)?;
                if report.exact >= report.upper_bound {
                    return fail(format!("bound violated at n={n}, k={k}"));
                }
                if !report.empirical.agrees_with(report.exact, 3.0, 1e-4) {
                    return fail(format!(
                        "empirical {:.5} vs exact {:.5} at n={n}, k={k}",
                        report.empirical.mean, report.exact
                    ));
                }
            }
            Ok(None)
        }
        "zero-mean" => {
            let grid = SphereGrid::product3(20)?;
            let f = ZonalMixture::random(3, &[1, 2, 3, 4], &mut rng)?;
            let est = zero_mean_norm_contraction(&f, trials.max(600), &mut rng, &grid)?;
            let bound = (2.0f64 / 3.0).sqrt();
            if est.mean > bound + 3.0 * est.std_error {
                return fail(format!("mean ratio {:.5} above {bound:.5}", est.mean));
            }
            // odd harmonics must vanish identically
            let z = ZonalHarmonic::new(3, 1, UnitVector::axis(3, 0))?;
            let est = zero_mean_norm_contraction(&z, 500, &mut rng, &grid)?;
            if est.mean > 1e-10 {
                return fail(format!("odd harmonic leaked {:.2e}", est.mean));
            }
            Ok(None)
        }
        "single-direction" => {
            for (n, k) in [(3usize, 2usize), (2, 2)] {
                let grid = match n {
                    2 => SphereGrid::angular(1024)?,
                    _ => SphereGrid::product3(20)?,
                };
                let (est, exact) = single_direction_ratio(n, k, trials.max(600), &mut rng, &grid)?;
                if !est.agrees_with(exact, 3.0, 1e-4) {
                    return fail(format!(
                        "single-direction {:.5} vs {exact:.5} at n={n}, k={k}",
                        est.mean
                    ));
                }
            }
            Ok(None)
        }
        "sup-norm" => {
            let grid = SphereGrid::product3(40)?;
            for k in 2..=6usize {
                let count = 2 * harmonic_dim(3, k)? as usize;
                for _ in 0..20 {
                    let g = ZonalMixture::random_single_degree(3, k, count, &mut rng)?;
                    let report = sup_norm_check(3, k, &g, &grid)?;
                    if !report.holds {
                        return fail(format!(
                            "sup {:.4} above sqrt(N_k) l2 {:.4} at k={k}",
                            report.sup,
                            report.dim_sqrt * report.l2
                        ));
                    }
                }
                let z = ZonalHarmonic::new(3, k, UnitVector::axis(3, 2))?;
                if z.eval(UnitVector::axis(3, 2).coords())
                    < 0.999 * (harmonic_dim(3, k)? as f64).sqrt()
                {
                    return fail(format!("zonal misses the equality case at k={k}"));
                }
            }
            Ok(None)
        }
        "dim-power" => {
            for n in 3..=50usize {
                for k in (2..=200usize).step_by(2) {
                    for eps in [0.5, 0.1, 0.01] {
                        if !dimension_power_inequality(n, k, eps, c1)? {
                            return fail(format!(
                                "fails at n={n}, k={k}, eps={eps} with c1={c1} (constant too small)"
                            ));
                        }
                    }
                }
            }
            Ok(None)
        }
        "ratio-power" => {
            for n in 3..=50usize {
                for k in (2..=200usize).step_by(2) {
                    if !decay_dominates_dimension(n, k, c2)? {
                        return fail(format!(
                            "fails at n={n}, k={k} with c2={c2} (constant too small)"
                        ));
                    }
                }
            }
            Ok(None)
        }
        "bokowski-heil" => {
            let ball = crate::bodies::BallGauge::new(1.0, 1.0, 1.0);
            if bokowski_heil_residual(1.0, &ball, 2).abs() > 1e-12 {
                return fail("ball equality case broke".into());
            }
            for _ in 0..200 {
                let poly = PolygonBody::random_convex(&mut rng, 10, 1.5)?;
                let gauge = poly.gauges()?;
                let residual =
                    bokowski_heil_residual(poly.area() / unit_ball_volume(2), &gauge, 2);
                if residual < -1e-9 {
                    return fail(format!("negative residual {residual:.3e}"));
                }
            }
            Ok(None)
        }
        "mean-width-cap" => {
            for _ in 0..200 {
                let poly = PolygonBody::random_convex(&mut rng, 10, 1.5)?
                    .normalized_to_area(std::f64::consts::PI)?;
                let gauge = poly.gauges()?;
                let dev = (poly.area() / std::f64::consts::PI - 1.0).abs();
                let check = mean_width_contraction_check(dev, &gauge, 2, 1e-9)?;
                if !check.holds || check.holds_sharp == Some(false) {
                    return fail(format!("cap bound violated at eps {:.4}", check.eps));
                }
            }
            Ok(None)
        }
        "urysohn" => {
            for _ in 0..200 {
                let poly = PolygonBody::random_convex(&mut rng, 10, 1.5)?
                    .normalized_to_area(std::f64::consts::PI)?;
                let gauge = poly.gauges()?;
                let dev = (poly.area() / std::f64::consts::PI - 1.0).abs();
                if !urysohn_check(dev, &gauge, 1e-9)? {
                    return fail(format!("mean width {:.6} below 1", gauge.mean_width_half));
                }
            }
            Ok(None)
        }
        "small-cap" => {
            let ball = crate::bodies::BallGauge::new(1.0, 1.0, 1.0);
            if small_cap_check(&ball, 0.5, 2, 1e-12) != CheckOutcome::Holds {
                return fail("ball case must hold".into());
            }
            let eps = 0.3f64;
            let r = 1.0 + (eps / 30.0).powi(2);
            let dilated = crate::bodies::BallGauge::new(r, r, r);
            if small_cap_check(&dilated, eps, 2, 1e-12) != CheckOutcome::Holds {
                return fail("dilated ball case must hold".into());
            }
            let fat = crate::bodies::BallGauge::new(0.5, 1.5, 1.1);
            if small_cap_check(&fat, 0.3, 2, 1e-12) != CheckOutcome::Inapplicable {
                return fail("precondition filter broke".into());
            }
            Ok(None)
        }
        other => Err(Error::Config(format!("unknown suite `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_usize_list("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_usize_list("3").unwrap(), vec![3]);
        assert_eq!(parse_usize_list("2,4,6").unwrap(), vec![2, 4, 6]);
        assert!(parse_usize_list("5..2").is_err());
        assert!(parse_usize_list("x").is_err());
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "n=3\nbogus=1\n").unwrap();
        let err = load_config(&path).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bogus") && msg.contains("valid keys"));
        std::fs::write(&path, "# comment\nn = 3\nrounds=7\n").unwrap();
        let map = load_config(&path).unwrap();
        assert_eq!(map.get("n").map(String::as_str), Some("3"));
        assert_eq!(map.get("rounds").map(String::as_str), Some("7"));
    }

    #[test]
    fn quick_suites_pass() {
        assert_eq!(run_suite("dims", 100, 10.0, 10.0, 1).unwrap(), None);
        assert_eq!(run_suite("small-cap", 100, 10.0, 10.0, 1).unwrap(), None);
        assert_eq!(run_suite("urysohn", 100, 10.0, 10.0, 1).unwrap(), None);
    }

    #[test]
    fn small_constant_fails_the_power_suite() {
        let result = run_suite("dim-power", 100, 1.0, 10.0, 1).unwrap();
        assert!(result.is_some(), "c1 = 1 must fail");
        assert!(result.unwrap().contains("constant too small"));
    }
}
