use std::time::Instant;
use symlab::experiments::*;

fn main() {
    for n in [2usize, 3, 4] {
        for seed_body in [SeedBody::Cube, SeedBody::Simplex] {
            let t = Instant::now();
            let mut cfg = MinkowskiRunConfig::new(n, seed_body, 4242);
            cfg.rounds = 40;
            cfg.k_max = 4;
            cfg.target_epsilons = vec![1e-1, 1e-2, 1e-3];
            let ensemble = run_minkowski_ensemble(&cfg, 30).unwrap();
            let trajs: Vec<Vec<f64>> = ensemble.iter().map(|r| r.iter().map(|x| x.eps).collect()).collect();
            let med = median_trajectory(&trajs);
            let floor = med.iter().cloned().fold(f64::INFINITY, f64::min);
            let grid = process_grid(n, 0, 0).unwrap();
            let crossings: Vec<Option<usize>> = [1e-1, 1e-2, 1e-3].iter().map(|&e| first_crossing(&med, e)).collect();
            // per-run mean width drift
            let mut worst_drift = 0.0f64;
            for run in &ensemble {
                let m0 = run[0].mean_width_half;
                for r in run {
                    worst_drift = worst_drift.max((r.mean_width_half - m0).abs());
                }
            }
            // E2 ratios
            let mut ratios = vec![];
            for run in &ensemble {
                for w in run.windows(2) {
                    if w[0].energies[0] > 1e-12 && w[0].round >= 1 {
                        ratios.push(w[1].energies[0] / w[0].energies[0]);
                    }
                }
            }
            let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
            let var = ratios.iter().map(|r| (r - mean_ratio).powi(2)).sum::<f64>() / (ratios.len() - 1) as f64;
            let se = (var / ratios.len() as f64).sqrt();
            println!(
                "n={n} {:>7}: {:?} rounds-med-len={} floor={:.2e} tau={:.2e} drift={:.2e} (budget {:.2e}) E2 ratio {:.4}+-{:.4} vs {:.4} [{:.1}s]",
                format!("{:?}", seed_body), crossings, med.len(), floor, grid.tolerance(), worst_drift,
                10.0 * grid.tolerance(), mean_ratio, se, 2.0/(n as f64+2.0), t.elapsed().as_secs_f64()
            );
        }
    }
}
