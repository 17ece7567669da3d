//! Monte Carlo decay study: empirical one-round decay ratios per
//! (dimension, degree) pair against their exact values, plus the
//! basis-vs-single-direction comparison that motivates symmetrizing with
//! whole orthonormal bases.

use std::fmt::Write as _;

use crate::error::Result;
use crate::geom::{RngStream, SphereGrid};
use crate::harmonics::{
    basis_symmetrization_ratio, single_direction_ratio, single_direction_ratio_exact,
    symmetrization_ratio_upper_bound, McEstimate,
};

#[derive(Clone, Debug)]
pub struct DecayRow {
    pub n: usize,
    pub k: usize,
    pub empirical: McEstimate,
    pub exact: f64,
    pub upper_bound: f64,
    pub single_empirical: McEstimate,
    pub single_exact: f64,
}

/// `((n-2+k)/(n-2+2k))^n` at `k = 2` equals `(n/(n+2))^n`, which tends to
/// `e^-2`: n single-direction symmetrizations only buy a constant factor.
#[derive(Clone, Copy, Debug)]
pub struct SingleDirectionComparison {
    pub n: usize,
    pub per_n_rounds: f64,
    pub e_minus_2: f64,
}

#[derive(Clone, Debug)]
pub struct DecayTable {
    pub rows: Vec<DecayRow>,
    pub comparisons: Vec<SingleDirectionComparison>,
}

impl DecayTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,k,empirical,empirical_se,exact,upper_bound,single_empirical,single_se,single_exact\n",
        );
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.n,
                r.k,
                r.empirical.mean,
                r.empirical.std_error,
                r.exact,
                r.upper_bound,
                r.single_empirical.mean,
                r.single_empirical.std_error,
                r.single_exact
            )
            .unwrap();
        }
        out.push_str("# single-direction comparison: (n/(n+2))^n vs e^-2\n");
        for c in &self.comparisons {
            writeln!(out, "# n={}: {} vs {}", c.n, c.per_n_rounds, c.e_minus_2).unwrap();
        }
        out
    }
}

fn verifier_grid(n: usize, seed: u64) -> Result<SphereGrid> {
    match n {
        2 => SphereGrid::angular(1024),
        3 => SphereGrid::product3(24),
        4 => SphereGrid::product4(14),
        _ => {
            let mut rng = RngStream::new(seed ^ 0x5117_a5e5);
            SphereGrid::monte_carlo(n, 4096, &mut rng)
        }
    }
}

/// One row per (n, k): empirical basis-symmetrization ratio, its exact
/// value and upper bound, and the single-direction ratio next to its
/// closed form.
pub fn run_decay_suite(
    pairs: &[(usize, usize)],
    trials: usize,
    base_seed: u64,
) -> Result<DecayTable> {
    let mut rows = Vec::with_capacity(pairs.len());
    for (idx, &(n, k)) in pairs.iter().enumerate() {
        let grid = verifier_grid(n, base_seed)?;
        let mut rng = RngStream::new(base_seed ^ ((idx as u64 + 1) << 32));
        let report = basis_symmetrization_ratio(n, k, trials, &mut rng, &grid)?;
        let (single_empirical, single_exact) =
            single_direction_ratio(n, k, trials, &mut rng, &grid)?;
        rows.push(DecayRow {
            n,
            k,
            empirical: report.empirical,
            exact: report.exact,
            upper_bound: symmetrization_ratio_upper_bound(n, k),
            single_empirical,
            single_exact,
        });
    }
    let mut dims: Vec<usize> = pairs.iter().map(|&(n, _)| n).collect();
    dims.push(50);
    dims.sort_unstable();
    dims.dedup();
    let comparisons = dims
        .into_iter()
        .map(|n| SingleDirectionComparison {
            n,
            per_n_rounds: single_direction_ratio_exact(n, 2).powi(n as i32),
            e_minus_2: (-2.0f64).exp(),
        })
        .collect();
    Ok(DecayTable { rows, comparisons })
}
