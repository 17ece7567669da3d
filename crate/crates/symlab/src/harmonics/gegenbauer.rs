//! Gegenbauer polynomials normalized to 1 at the right endpoint.
//!
//! For dimension `n >= 2` these are the degree-`k` polynomials `G_k`
//! orthogonal on `[-1, 1]` under the weight `(1 - t^2)^((n-3)/2)` with
//! `G_k(1) = 1`. The three-term recurrence
//!
//! ```text
//! G_{k+1}(t) = [ 2(k + a) t G_k(t) - k G_{k-1}(t) ] / (k + 2a),   a = (n-2)/2
//! ```
//!
//! preserves the endpoint normalization at every step. At `n = 3` it is the
//! Legendre recurrence; at `n = 2` the weight degenerates and the recurrence
//! collapses to the Chebyshev rule `G_{k+1} = 2 t G_k - G_{k-1}`, which is
//! exactly how the degenerate case must be treated.

use crate::error::{Error, Result};

/// Evaluator with cached recurrence coefficients up to a maximum degree.
#[derive(Clone, Debug)]
pub struct GegenbauerEvaluator {
    dim: usize,
    max_degree: usize,
    /// (numerator t-coefficient, numerator lag coefficient, denominator)
    /// for the step producing degree k+1 from k, k-1.
    coeffs: Vec<(f64, f64, f64)>,
}

impl GegenbauerEvaluator {
    pub fn new(dim: usize, max_degree: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(
                "Gegenbauer polynomials need dimension >= 2".into(),
            ));
        }
        let a = (dim as f64 - 2.0) / 2.0;
        let coeffs = (1..max_degree.max(1))
            .map(|k| {
                let kf = k as f64;
                (2.0 * (kf + a), kf, kf + 2.0 * a)
            })
            .collect();
        Ok(Self { dim, max_degree, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `G_k(t)` for `t` in `[-1, 1]`.
    pub fn eval(&self, k: usize, t: f64) -> Result<f64> {
        if k > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "degree {k} exceeds cached maximum {}",
                self.max_degree
            )));
        }
        check_domain(t)?;
        Ok(self.eval_unchecked(k, t))
    }

    pub(crate) fn eval_unchecked(&self, k: usize, t: f64) -> f64 {
        match k {
            0 => 1.0,
            1 => t,
            _ => {
                let mut prev = 1.0;
                let mut cur = t;
                for &(ct, clag, denom) in &self.coeffs[..k - 1] {
                    let next = (ct * t * cur - clag * prev) / denom;
                    prev = cur;
                    cur = next;
                }
                cur
            }
        }
    }

    /// Fill `out[k] = G_k(t)` for all cached degrees in one recurrence pass.
    pub fn eval_all(&self, t: f64, out: &mut [f64]) {
        debug_assert!(out.len() <= self.max_degree + 1);
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        out[1] = t;
        for k in 1..out.len() - 1 {
            let (ct, clag, denom) = self.coeffs[k - 1];
            out[k + 1] = (ct * t * out[k] - clag * out[k - 1]) / denom;
        }
    }
}

fn check_domain(t: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "Gegenbauer argument {t} outside [-1, 1]"
        )));
    }
    Ok(())
}

/// One-shot evaluation of `G_k(t)` in dimension `n`.
pub fn gegenbauer(n: usize, k: usize, t: f64) -> Result<f64> {
    let eval = GegenbauerEvaluator::new(n, k)?;
    eval.eval(k, t)
}
