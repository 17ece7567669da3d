use symlab::experiments::*;
fn main() {
    for n in [2usize, 3, 4] {
        let mut cfg = MinkowskiRunConfig::new(n, SeedBody::Box, 4242);
        cfg.rounds = 8;
        cfg.k_max = 4;
        cfg.target_epsilons = vec![1e-3];
        let records = run_minkowski_process(&cfg).unwrap();
        let e2: Vec<String> = records.iter().map(|r| format!("{:.3e}", r.energies[0])).collect();
        println!("n={n} box E2 by round: {}", e2.join(" "));
    }
    // pooled ratio over an ensemble with a floor
    for n in [2usize, 3, 4] {
        let mut cfg = MinkowskiRunConfig::new(n, SeedBody::Box, 4242);
        cfg.rounds = 12;
        cfg.k_max = 4;
        cfg.target_epsilons = vec![1e-3];
        let ensemble = run_minkowski_ensemble(&cfg, 30).unwrap();
        let floor: f64 = match n { 2 => 1e-9, 3 => 1e-7, _ => 2e-2 };
        let mut ratios = vec![];
        for run in &ensemble {
            let e0 = run[0].energies[0];
            for w in run.windows(2) {
                if w[0].energies[0] > floor.max(0.02 * e0) {
                    ratios.push(w[1].energies[0] / w[0].energies[0]);
                }
            }
        }
        let m = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let var = ratios.iter().map(|r| (r - m).powi(2)).sum::<f64>() / (ratios.len() - 1) as f64;
        let se = (var / ratios.len() as f64).sqrt();
        println!("n={n}: pooled E2 ratio {:.4} +- {:.4} ({} samples) vs {:.4}", m, se, ratios.len(), 2.0 / (n as f64 + 2.0));
    }
}
