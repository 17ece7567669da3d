use std::time::Instant;
use symlab::experiments::*;

fn main() {
    // deep 2D run: rect 4:1 to eps 1e-3
    let t = Instant::now();
    let mut cfg = SteinerRunConfig::new(SteinerSeed::Rectangle { aspect: 4.0 }, 7);
    cfg.target_eps = 1e-3;
    cfg.max_rounds = 500;
    let out = run_steiner_process(&cfg).unwrap();
    let r = &out.records;
    let v0 = r[0].volume.unwrap();
    let worst_drift = r.iter().map(|x| (x.volume.unwrap() - v0).abs() / v0).fold(0.0f64, f64::max);
    let max_verts_round = r.len();
    // contraction stats below 0.5
    let mut factors = vec![];
    for w in r.windows(2) {
        let d0 = w[0].r_out - 1.0;
        let d1 = w[1].r_out - 1.0;
        if d0 < 0.5 && d0 > 5e-3 {
            factors.push(d1 / d0);
        }
    }
    factors.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = factors[factors.len() / 2];
    println!(
        "rect deep: rounds {} (target reached {}), drift {:.2e}, contraction median {:.4} (n={} samples), caps {:?}, {:.1}s",
        r.len() - 1, out.reached_target, worst_drift, median, factors.len(),
        out.small_cap_checks.iter().map(|(r, o)| (*r, format!("{o:?}"))).collect::<Vec<_>>(),
        t.elapsed().as_secs_f64()
    );

    // 5 random polygons to 0.05
    for seed in 0..5u64 {
        let t = Instant::now();
        let mut cfg = SteinerRunConfig::new(SteinerSeed::RandomPolygon { points: 24 }, 100 + seed);
        cfg.target_eps = 0.05;
        cfg.max_rounds = 200;
        let out = run_steiner_process(&cfg).unwrap();
        let r = &out.records;
        let v0 = r[0].volume.unwrap();
        let worst_drift = r.iter().map(|x| (x.volume.unwrap() - v0).abs() / v0).fold(0.0f64, f64::max);
        println!(
            "polygon seed {}: rounds {}, reached {}, drift {:.2e}, {:.2}s",
            100 + seed, r.len() - 1, out.reached_target, worst_drift, t.elapsed().as_secs_f64()
        );
    }

    // prop-7 criterion-2 timing probe at the 5 pairs, 2000 trials
    use symlab::geom::{RngStream, SphereGrid};
    use symlab::harmonics::basis_symmetrization_ratio;
    let t = Instant::now();
    for (n, k) in [(3usize, 2usize), (3, 4), (4, 2), (5, 2), (4, 4)] {
        let mut rng = RngStream::new(1000 + n as u64 * 10 + k as u64);
        let grid = match n {
            3 => SphereGrid::product3(20).unwrap(),
            4 => SphereGrid::product4(14).unwrap(),
            _ => SphereGrid::monte_carlo(n, 4096, &mut RngStream::new(5)).unwrap(),
        };
        let rep = basis_symmetrization_ratio(n, k, 2000, &mut rng, &grid).unwrap();
        let rel = (rep.empirical.mean - rep.exact).abs() / rep.exact;
        println!(
            "prop7 n={n} k={k}: {:.5} +- {:.5} vs {:.5} (rel {:.4}, 3se {:.5}) bound {:.4}",
            rep.empirical.mean, rep.empirical.std_error, rep.exact, rel, 3.0 * rep.empirical.std_error, rep.upper_bound
        );
    }
    println!("prop7 block: {:.1}s", t.elapsed().as_secs_f64());
}
