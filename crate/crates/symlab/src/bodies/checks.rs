//! Numeric checkers for the geometric inequalities tying volume, mean
//! width and circumradius together. Quantities are supplied by the caller
//! (exact for 2D polygons, quadrature-based for 3D polytopes), along with
//! an error budget for the discretized ones.

use crate::bodies::BallGauge;
use crate::error::{Error, Result};

/// Volume of the unit ball in `R^n`: `V_n = V_{n-2} * 2 pi / n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let mut even = 1.0; // V_0
    let mut odd = 2.0; // V_1
    if n == 0 {
        return even;
    }
    if n == 1 {
        return odd;
    }
    let mut dim = 1;
    loop {
        dim += 1;
        even *= 2.0 * std::f64::consts::PI / dim as f64;
        if dim == n {
            return even;
        }
        std::mem::swap(&mut even, &mut odd);
    }
}

/// Residual of the Bokowski-Heil inequality for `K` inside `R D`:
/// `Vol(K)/Vol(D) + (n^2 - 1) R^n - n^2 R^(n-1) M*(K)`, which must be
/// nonnegative up to the caller's error budget. Zero exactly at `K = D`.
pub fn bokowski_heil_residual(vol_ratio: f64, gauge: &BallGauge, n: usize) -> f64 {
    let r = gauge.r_out;
    let nf = n as f64;
    vol_ratio + (nf * nf - 1.0) * r.powi(n as i32)
        - nf * nf * r.powi(n as i32 - 1) * gauge.mean_width_half
}

/// Outcome of the circumradius-to-mean-width contraction check for a
/// volume-normalized body inside `(1 + eps) D`.
#[derive(Clone, Copy, Debug)]
pub struct CapCheck {
    pub eps: f64,
    /// `M* < 1 + (1 - 1/n^2) eps` (plus tolerance).
    pub holds: bool,
    /// The sharper bound `M* < 1 + (1 - 1/(2n)) eps`, asserted when
    /// `eps < 1/n`; `None` when that case does not apply.
    pub holds_sharp: Option<bool>,
}

/// Check that a body with `Vol = Vol(D)` and `K inside (1 + eps) D` has
/// mean width contracted by the dimensional factor. `vol_deviation` is
/// `|Vol/Vol(D) - 1|`, rejected above 1e-6.
pub fn mean_width_contraction_check(
    vol_deviation: f64,
    gauge: &BallGauge,
    n: usize,
    tolerance: f64,
) -> Result<CapCheck> {
    if vol_deviation > 1e-6 {
        return Err(Error::NormalizationViolated(vol_deviation));
    }
    let eps = gauge.r_out - 1.0;
    let nf = n as f64;
    if eps <= 0.0 {
        // inside the unit ball with its volume: the body is the ball
        return Ok(CapCheck { eps, holds: true, holds_sharp: Some(true) });
    }
    let holds = gauge.mean_width_half < 1.0 + (1.0 - 1.0 / (nf * nf)) * eps + tolerance;
    let holds_sharp = if eps < 1.0 / nf {
        Some(gauge.mean_width_half < 1.0 + (1.0 - 1.0 / (2.0 * nf)) * eps + tolerance)
    } else {
        None
    };
    Ok(CapCheck { eps, holds, holds_sharp })
}

/// Mean-width lower bound for volume-normalized bodies: `M* >= 1`.
pub fn urysohn_check(vol_deviation: f64, gauge: &BallGauge, tolerance: f64) -> Result<bool> {
    if vol_deviation > 1e-6 {
        return Err(Error::NormalizationViolated(vol_deviation));
    }
    Ok(gauge.mean_width_half >= 1.0 - tolerance)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    Violated,
    /// Preconditions unmet; not a failure.
    Inapplicable,
}

/// Inner-ball certificate: a body with `M* >= 1` squeezed inside
/// `(1 + (eps/30)^n) D` must contain `(1 - eps) D`. The constant 1/30
/// comes from the spherical-cap measure bound.
pub fn small_cap_check(gauge: &BallGauge, eps: f64, n: usize, tolerance: f64) -> CheckOutcome {
    if !(0.0 < eps && eps < 1.0) {
        return CheckOutcome::Inapplicable;
    }
    if gauge.mean_width_half < 1.0 - tolerance {
        return CheckOutcome::Inapplicable;
    }
    let cap = (eps / 30.0).powi(n as i32);
    if gauge.r_out > 1.0 + cap + tolerance {
        return CheckOutcome::Inapplicable;
    }
    if gauge.r_in >= (1.0 - eps) - tolerance {
        CheckOutcome::Holds
    } else {
        CheckOutcome::Violated
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{PolygonBody, PolytopeBody3};
    use crate::geom::{RngStream, SphereGrid};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn ball_volumes() {
        assert_abs_diff_eq!(unit_ball_volume(2), PI, epsilon = 1e-14);
        assert_abs_diff_eq!(unit_ball_volume(3), 4.0 * PI / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(unit_ball_volume(4), PI * PI / 2.0, epsilon = 1e-13);
    }

    #[test]
    fn residual_vanishes_on_the_ball() {
        // plain arithmetic: 1 + (n^2 - 1) - n^2 = 0
        let gauge = BallGauge::new(1.0, 1.0, 1.0);
        for n in 2..=6 {
            assert_abs_diff_eq!(bokowski_heil_residual(1.0, &gauge, n), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn residual_on_the_square() {
        // square [-1,1]^2: Vol/Vol(D) = 4/pi, R = sqrt(2), M* = 4/pi
        let square = PolygonBody::rectangle(1.0, 1.0).unwrap();
        let gauge = square.gauges().unwrap();
        let vol_ratio = square.area() / unit_ball_volume(2);
        let residual = bokowski_heil_residual(vol_ratio, &gauge, 2);
        let expected = 4.0 / PI + 3.0 * 2.0 - 4.0 * 2.0f64.sqrt() * (4.0 / PI);
        assert_abs_diff_eq!(residual, expected, epsilon = 1e-12);
        assert!((residual - 0.070).abs() < 5e-3);
        assert!(residual >= 0.0);
    }

    #[test]
    fn residual_nonnegative_on_random_polygons() {
        let mut rng = RngStream::new(40);
        for _ in 0..200 {
            let poly = PolygonBody::random_convex(&mut rng, 12, 2.0).unwrap();
            let gauge = poly.gauges().unwrap();
            let vol_ratio = poly.area() / unit_ball_volume(2);
            let residual = bokowski_heil_residual(vol_ratio, &gauge, 2);
            assert!(residual >= -1e-9, "residual {residual}");
        }
    }

    #[test]
    fn residual_nonnegative_on_random_polytopes() {
        let mut rng = RngStream::new(41);
        let grid = SphereGrid::product3(32).unwrap();
        for _ in 0..20 {
            let body = PolytopeBody3::random(&mut rng, 40, 1.2).unwrap();
            let gauge = body.gauges(&grid).unwrap();
            let vol_ratio = body.volume() / unit_ball_volume(3);
            let residual = bokowski_heil_residual(vol_ratio, &gauge, 3);
            // quadrature budget: n^2 R^(n-1) times the mean width error
            let budget =
                9.0 * gauge.r_out * gauge.r_out * 2.0 * grid.tolerance() * gauge.mean_width_half;
            assert!(residual >= -budget, "residual {residual}, budget {budget}");
        }
    }

    #[test]
    fn cap_check_near_ball_and_square() {
        // dilated ball at eps = 1e-6
        let eps = 1e-6;
        let gauge = BallGauge::new(1.0, 1.0 + eps, 1.0 + eps / 2.0);
        let check = mean_width_contraction_check(0.0, &gauge, 2, 1e-9).unwrap();
        assert!(check.holds);
        assert_eq!(check.holds_sharp, Some(true));

        // square normalized to disk area: scale so area pi
        let square = PolygonBody::rectangle(1.0, 1.0).unwrap();
        let normalized = square.normalized_to_area(PI).unwrap();
        let gauge = normalized.gauges().unwrap();
        let vol_dev = (normalized.area() / PI - 1.0).abs();
        let check = mean_width_contraction_check(vol_dev, &gauge, 2, 1e-9).unwrap();
        assert!(check.holds);
        // eps = sqrt(pi/2) - 1 = 0.2533 < 1/2: the sharp case applies and holds
        assert!((check.eps - ((PI / 2.0).sqrt() - 1.0)).abs() < 1e-12);
        assert_eq!(check.holds_sharp, Some(true));
    }

    #[test]
    fn cap_check_random_polygons() {
        let mut rng = RngStream::new(42);
        for _ in 0..200 {
            let poly = PolygonBody::random_convex(&mut rng, 10, 1.5)
                .unwrap()
                .normalized_to_area(PI)
                .unwrap();
            let gauge = poly.gauges().unwrap();
            let vol_dev = (poly.area() / PI - 1.0).abs();
            let check = mean_width_contraction_check(vol_dev, &gauge, 2, 1e-9).unwrap();
            assert!(check.holds);
            if let Some(sharp) = check.holds_sharp {
                assert!(sharp);
            }
        }
    }

    #[test]
    fn normalization_is_enforced() {
        let gauge = BallGauge::new(1.0, 1.2, 1.05);
        assert!(mean_width_contraction_check(0.01, &gauge, 2, 1e-9).is_err());
        assert!(urysohn_check(0.01, &gauge, 1e-9).is_err());
    }

    #[test]
    fn urysohn_examples() {
        // the ball itself: equality
        let gauge = BallGauge::new(1.0, 1.0, 1.0);
        assert!(urysohn_check(0.0, &gauge, 1e-12).unwrap());

        // square normalized to area pi: M* = 2/sqrt(pi) = 1.128...
        let square = PolygonBody::rectangle(1.0, 1.0)
            .unwrap()
            .normalized_to_area(PI)
            .unwrap();
        let gauge = square.gauges().unwrap();
        assert_abs_diff_eq!(gauge.mean_width_half, 2.0 / PI.sqrt(), epsilon = 1e-12);
        assert!(urysohn_check(0.0, &gauge, 1e-9).unwrap());

        let mut rng = RngStream::new(43);
        for _ in 0..100 {
            let poly = PolygonBody::random_convex(&mut rng, 8, 1.0)
                .unwrap()
                .normalized_to_area(PI)
                .unwrap();
            assert!(urysohn_check(0.0, &poly.gauges().unwrap(), 1e-9).unwrap());
        }
    }

    #[test]
    fn small_cap_cases() {
        // the ball: always holds
        let ball = BallGauge::new(1.0, 1.0, 1.0);
        assert_eq!(small_cap_check(&ball, 0.5, 2, 1e-12), CheckOutcome::Holds);

        // slightly dilated ball within the cap budget at eps = 0.3
        let eps = 0.3f64;
        let r = 1.0 + (eps / 30.0).powi(2);
        let dilated = BallGauge::new(r, r, r);
        assert_eq!(small_cap_check(&dilated, eps, 2, 1e-12), CheckOutcome::Holds);

        // preconditions unmet: body too large for the cap budget
        let fat = BallGauge::new(0.5, 1.5, 1.1);
        assert_eq!(small_cap_check(&fat, 0.3, 2, 1e-12), CheckOutcome::Inapplicable);

        // out-of-range eps
        assert_eq!(small_cap_check(&ball, 1.5, 2, 1e-12), CheckOutcome::Inapplicable);
    }
}
