//! Geometric decay fitting for symmetrization trajectories.
//!
//! The per-round certificate `eps(t)` of a converging run decays roughly
//! geometrically until it hits the grid floor. The fit regresses
//! `ln eps` on the round index over the window above the floor, reports
//! the per-round factor with a normal-approximation confidence interval,
//! and reads off (or extrapolates) rounds-to-target for each requested
//! threshold.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RoundsToEps {
    pub eps: f64,
    /// First recorded round strictly below the threshold, when observed.
    pub observed: Option<usize>,
    /// Model prediction from the fitted decay line.
    pub extrapolated: f64,
}

#[derive(Clone, Debug)]
pub enum RateFit {
    /// Not enough decaying signal to fit (already at the floor, too few
    /// rounds). The reason string says which.
    Degenerate { reason: String },
    Fitted {
        /// Per-round decay factor estimate.
        rho_hat: f64,
        /// Normal-approximation 95% interval for the factor.
        rho_ci: (f64, f64),
        slope_ln: f64,
        intercept_ln: f64,
        r_squared: f64,
        /// Fitted round window (inclusive start, exclusive end).
        window: (usize, usize),
        rounds_to_eps: Vec<RoundsToEps>,
    },
}

impl RateFit {
    pub fn rho(&self) -> Option<f64> {
        match self {
            RateFit::Fitted { rho_hat, .. } => Some(*rho_hat),
            RateFit::Degenerate { .. } => None,
        }
    }
}

/// Fit the decay of one trajectory. `floor` excludes values where the
/// discretization floor dominates (callers pass a multiple of the grid
/// tolerance); the window additionally stays above twice the trajectory
/// minimum so a plateau ending never leaks into the regression.
pub fn fit_rate(eps_by_round: &[f64], targets: &[f64], floor: f64) -> Result<RateFit> {
    if eps_by_round.is_empty() {
        return Err(Error::InvalidArgument("empty trajectory".into()));
    }
    let trajectory_min = eps_by_round.iter().cloned().fold(f64::INFINITY, f64::min);
    let cut = floor.max(2.0 * trajectory_min).max(1e-300);
    let window_end = eps_by_round
        .iter()
        .position(|e| *e <= cut)
        .unwrap_or(eps_by_round.len());
    let window = &eps_by_round[..window_end];
    let decreasing = window.windows(2).filter(|w| w[1] < w[0]).count();
    if window.len() < 5 || decreasing < 4 {
        return Ok(RateFit::Degenerate {
            reason: format!(
                "only {} usable rounds above the floor {cut:.3e} ({} decreasing)",
                window.len(),
                decreasing
            ),
        });
    }
    let xs: Vec<f64> = (0..window.len()).map(|t| t as f64).collect();
    let ys: Vec<f64> = window.iter().map(|e| e.max(1e-300).ln()).collect();
    let (slope, intercept, r_squared, slope_se) = linear_fit(&xs, &ys);
    let rho_hat = slope.exp();
    let rho_ci = ((slope - 2.0 * slope_se).exp(), (slope + 2.0 * slope_se).exp());
    let rounds_to_eps = targets
        .iter()
        .map(|&eps| RoundsToEps {
            eps,
            observed: first_crossing(eps_by_round, eps),
            extrapolated: if slope < 0.0 {
                (eps.ln() - intercept) / slope
            } else {
                f64::INFINITY
            },
        })
        .collect();
    Ok(RateFit::Fitted {
        rho_hat,
        rho_ci,
        slope_ln: slope,
        intercept_ln: intercept,
        r_squared,
        window: (0, window_end),
        rounds_to_eps,
    })
}

/// First round index with `eps < target`.
pub fn first_crossing(eps_by_round: &[f64], target: f64) -> Option<usize> {
    eps_by_round.iter().position(|e| *e < target)
}

/// Ordinary least squares: slope, intercept, R^2, slope standard error.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64, f64) {
    let m = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / m;
    let mean_y = ys.iter().sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let pred = intercept + slope * x;
            (y - pred) * (y - pred)
        })
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    let dof = (m - 2.0).max(1.0);
    let slope_se = (ss_res / dof / sxx).sqrt();
    (slope, intercept, r_squared, slope_se)
}

/// Per-round median across an ensemble of trajectories. Runs that stopped
/// early (having reached their target) extend with their final value.
pub fn median_trajectory(trajectories: &[Vec<f64>]) -> Vec<f64> {
    let longest = trajectories.iter().map(|t| t.len()).max().unwrap_or(0);
    (0..longest)
        .map(|t| {
            let mut column: Vec<f64> = trajectories
                .iter()
                .filter_map(|traj| traj.get(t).or_else(|| traj.last()).copied())
                .collect();
            column.sort_by(|a, b| a.partial_cmp(b).expect("finite eps"));
            let mid = column.len() / 2;
            if column.len() % 2 == 1 {
                column[mid]
            } else {
                0.5 * (column[mid - 1] + column[mid])
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn synthetic_geometric_sequence_recovers_factor() {
        let eps: Vec<f64> = (0..20).map(|t| 0.4f64.powi(t)).collect();
        let fit = fit_rate(&eps, &[1e-2, 1e-4], 1e-12).unwrap();
        let RateFit::Fitted { rho_hat, rho_ci, r_squared, rounds_to_eps, slope_ln, .. } = fit
        else {
            panic!("expected a fit");
        };
        assert!((rho_hat - 0.4).abs() <= 0.01, "rho {rho_hat}");
        assert!(rho_ci.0 <= 0.4 && 0.4 <= rho_ci.1);
        assert!(r_squared > 0.999);
        // slope of rounds against log(1/eps) is 1/log(1/rho)
        assert_abs_diff_eq!(1.0 / (-slope_ln), 1.0 / (1.0f64 / 0.4).ln(), epsilon = 1e-6);
        assert_eq!(rounds_to_eps[0].observed, Some(6)); // 0.4^6 = 4.1e-3 < 1e-2
        assert!((rounds_to_eps[1].extrapolated - (1e-4f64.ln() / 0.4f64.ln())).abs() < 0.5);
    }

    #[test]
    fn ball_trajectory_is_degenerate() {
        let eps = vec![1e-9; 10];
        match fit_rate(&eps, &[1e-2], 1e-6).unwrap() {
            RateFit::Degenerate { reason } => assert!(reason.contains("usable rounds")),
            RateFit::Fitted { .. } => panic!("floor-level noise must not fit"),
        }
    }

    #[test]
    fn fit_stops_at_the_floor() {
        // decay to 1e-3 and then a noisy plateau
        let mut eps: Vec<f64> = (0..12).map(|t| 0.5f64.powi(t)).collect();
        eps.extend([2.5e-4, 3.1e-4, 2.2e-4, 2.9e-4]);
        let fit = fit_rate(&eps, &[1e-2], 1e-4).unwrap();
        let RateFit::Fitted { window, rho_hat, .. } = fit else {
            panic!("expected a fit");
        };
        assert!(window.1 <= 12, "window {window:?} leaked into the plateau");
        assert!((rho_hat - 0.5).abs() < 0.02);
    }

    #[test]
    fn median_handles_ragged_ensembles() {
        let trajs = vec![vec![1.0, 0.5, 0.25], vec![1.0, 0.4], vec![1.0, 0.6, 0.3, 0.2]];
        let med = median_trajectory(&trajs);
        assert_eq!(med.len(), 4);
        assert_abs_diff_eq!(med[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(med[1], 0.5, epsilon = 1e-15);
        // run 2 extends with its last value 0.4
        assert_abs_diff_eq!(med[2], 0.3, epsilon = 1e-15);
    }
}
