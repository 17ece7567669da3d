//! Dimension formulas for spaces of spherical harmonics, with independent
//! brute-force linear-algebra oracles.
//!
//! `harmonic_dim(n, k)` is the dimension of the space of degree-`k`
//! spherical harmonics on `S^{n-1}`; `invariant_dim(n, k)` is the dimension
//! of its subspace fixed by all coordinate sign flips of a chosen basis
//! (zero for odd `k`). The oracles build the Laplacian constraint system on
//! monomials explicitly and compute its kernel rank, exactly, over the
//! prime field `F_p` with `p = 2^61 - 1`.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Dimension of the space of degree-`k` spherical harmonics in `R^n`,
/// computed as (#monomials of degree k) - (#monomials of degree k-2),
/// which agrees with the classical closed forms. Errors on overflow
/// rather than wrapping.
pub fn harmonic_dim(n: usize, k: usize) -> Result<u128> {
    if n < 2 {
        return Err(Error::InvalidArgument("harmonic_dim needs n >= 2".into()));
    }
    let all = binomial_u128((n + k - 1) as u128, k as u128)?;
    let lower = if k >= 2 {
        binomial_u128((n + k - 3) as u128, (k - 2) as u128)?
    } else {
        0
    };
    Ok(all - lower)
}

/// Dimension of the sign-flip invariant subspace: 0 for odd `k`,
/// `C(n + k/2 - 2, n - 2)` for even `k`.
pub fn invariant_dim(n: usize, k: usize) -> Result<u128> {
    if n < 2 {
        return Err(Error::InvalidArgument("invariant_dim needs n >= 2".into()));
    }
    if k % 2 == 1 {
        return Ok(0);
    }
    binomial_u128((n + k / 2 - 2) as u128, (n - 2) as u128)
}

/// Exact binomial coefficient with overflow detection.
pub fn binomial_u128(n: u128, k: u128) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (n - k + i) / i is exact at every step
        acc = acc
            .checked_mul(n - k + i)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / i;
    }
    Ok(acc)
}

/// `ln C(n, k)` without intermediate overflow.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    let mut acc = 0.0;
    for i in 1..=k {
        acc += ((n - k + i) as f64).ln() - (i as f64).ln();
    }
    acc
}

/// `ln harmonic_dim(n, k)`, safe for ranges where the exact value overflows.
pub fn ln_harmonic_dim(n: usize, k: usize) -> f64 {
    // C(n+k-2, n-2) * (n+2k-2)/(n+k-2)
    if k == 0 {
        return 0.0;
    }
    ln_binomial((n + k - 2) as u64, (n - 2) as u64)
        + ((n + 2 * k - 2) as f64).ln()
        - ((n + k - 2) as f64).ln()
}

/// `ln invariant_dim(n, k)` for even `k > 0`.
pub fn ln_invariant_dim(n: usize, k: usize) -> f64 {
    debug_assert!(k % 2 == 0 && k > 0);
    ln_binomial((n + k / 2 - 2) as u64, (n - 2) as u64)
}

const ORACLE_MAX_DIM: usize = 6;
const ORACLE_MAX_DEGREE: usize = 10;

/// Multi-indices of total degree `k` in `n` variables, lexicographic.
fn multi_indices(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    rec(0, k as u32, &mut cur, &mut out);
    out
}

/// Laplacian constraint matrix on a chosen monomial set: row per degree
/// k-2 monomial, column per degree-k monomial; kernel = harmonic polys.
fn laplacian_matrix(n: usize, cols: &[Vec<u32>], rows: &[Vec<u32>]) -> Vec<Vec<i64>> {
    let row_index: HashMap<&[u32], usize> =
        rows.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
    let mut matrix = vec![vec![0i64; cols.len()]; rows.len()];
    let mut scratch = Vec::new();
    for (c, alpha) in cols.iter().enumerate() {
        for i in 0..n {
            if alpha[i] >= 2 {
                scratch.clear();
                scratch.extend_from_slice(alpha);
                scratch[i] -= 2;
                let r = row_index[scratch.as_slice()];
                matrix[r][c] += (alpha[i] * (alpha[i] - 1)) as i64;
            }
        }
    }
    matrix
}

const PRIME: u128 = (1 << 61) - 1;

fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let to_field = |v: i64| -> u128 { (v.rem_euclid(PRIME as i64)) as u128 };
    let mut f: Vec<Vec<u128>> = m
        .drain(..)
        .map(|row| row.into_iter().map(to_field).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| f[r][col] != 0) else {
            continue;
        };
        f.swap(rank, pivot);
        let inv = mod_inverse(f[rank][col]);
        for c in col..cols {
            f[rank][c] = f[rank][c] * inv % PRIME;
        }
        for r in 0..rows {
            if r != rank && f[r][col] != 0 {
                let factor = f[r][col];
                for c in col..cols {
                    let sub = factor * f[rank][c] % PRIME;
                    f[r][c] = (f[r][c] + PRIME - sub) % PRIME;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u128) -> u128 {
    // Fermat: a^(p-2) mod p
    let mut base = a % PRIME;
    let mut exp = PRIME - 2;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % PRIME;
        }
        base = base * base % PRIME;
        exp >>= 1;
    }
    acc
}

fn guard(n: usize, k: usize) -> Result<()> {
    if n < 2 || n > ORACLE_MAX_DIM || k > ORACLE_MAX_DEGREE {
        return Err(Error::SizeGuard(format!(
            "brute-force oracle limited to 2 <= n <= {ORACLE_MAX_DIM}, k <= {ORACLE_MAX_DEGREE}; got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Kernel dimension of the Laplacian on all degree-`k` monomials:
/// independent check of [`harmonic_dim`].
pub fn brute_force_harmonic_dim(n: usize, k: usize) -> Result<usize> {
    guard(n, k)?;
    let cols = multi_indices(n, k);
    if k < 2 {
        return Ok(cols.len());
    }
    let rows = multi_indices(n, k - 2);
    let m = laplacian_matrix(n, &cols, &rows);
    Ok(cols.len() - rank_mod_p(m))
}

/// Kernel dimension of the Laplacian restricted to all-even-exponent
/// monomials: independent check of [`invariant_dim`]. The restriction is
/// closed under the Laplacian since second derivatives preserve the parity
/// of every exponent.
pub fn brute_force_invariant_dim(n: usize, k: usize) -> Result<usize> {
    guard(n, k)?;
    let cols: Vec<Vec<u32>> = multi_indices(n, k)
        .into_iter()
        .filter(|a| a.iter().all(|e| e % 2 == 0))
        .collect();
    if cols.is_empty() {
        return Ok(0); // odd k has no all-even monomials
    }
    if k < 2 {
        return Ok(cols.len());
    }
    let rows: Vec<Vec<u32>> = multi_indices(n, k - 2)
        .into_iter()
        .filter(|a| a.iter().all(|e| e % 2 == 0))
        .collect();
    let m = laplacian_matrix(n, &cols, &rows);
    Ok(cols.len() - rank_mod_p(m))
}

/// Explicit basis of degree-`k` harmonic homogeneous polynomials in the
/// monomial basis, produced from the floating-point nullspace of the
/// Laplacian constraint system.
#[derive(Clone, Debug)]
pub struct HarmonicPolynomialBasis {
    pub dim: usize,
    pub degree: usize,
    pub monomials: Vec<Vec<u32>>,
    /// One coefficient vector per basis polynomial.
    pub columns: Vec<Vec<f64>>,
}

impl HarmonicPolynomialBasis {
    pub fn build(n: usize, k: usize) -> Result<Self> {
        guard(n, k)?;
        let monomials = multi_indices(n, k);
        let columns = if k < 2 {
            (0..monomials.len())
                .map(|i| {
                    let mut v = vec![0.0; monomials.len()];
                    v[i] = 1.0;
                    v
                })
                .collect()
        } else {
            let rows = multi_indices(n, k - 2);
            let m = laplacian_matrix(n, &monomials, &rows);
            nullspace_f64(&m)
        };
        Ok(Self { dim: n, degree: k, monomials, columns })
    }

    /// Coefficients of the Laplacian of a coefficient vector, in the
    /// degree `k-2` monomial basis. All-zero for members of the basis.
    pub fn laplacian_coeffs(&self, coeffs: &[f64]) -> Vec<f64> {
        if self.degree < 2 {
            return Vec::new();
        }
        let rows = multi_indices(self.dim, self.degree - 2);
        let m = laplacian_matrix(self.dim, &self.monomials, &rows);
        m.iter()
            .map(|row| row.iter().zip(coeffs).map(|(a, c)| *a as f64 * c).sum())
            .collect()
    }

    /// Evaluate the `j`-th basis polynomial at a point.
    pub fn eval(&self, j: usize, x: &[f64]) -> f64 {
        self.columns[j]
            .iter()
            .zip(&self.monomials)
            .map(|(c, alpha)| {
                let mut term = *c;
                for (xi, e) in x.iter().zip(alpha) {
                    term *= xi.powi(*e as i32);
                }
                term
            })
            .sum()
    }
}

/// Floating-point nullspace via row echelon with partial pivoting.
fn nullspace_f64(m: &[Vec<i64>]) -> Vec<Vec<f64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .map(|r| r.iter().map(|v| *v as f64).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let (best, best_val) = (r..rows)
            .map(|i| (i, a[i][c].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap_or((r, 0.0));
        if best_val <= crate::tol::RANK_REL {
            continue;
        }
        a.swap(r, best);
        let inv = 1.0 / a[r][c];
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0.0 {
                let f = a[i][c];
                let (head, tail) = a.split_at_mut(i.max(r));
                let (src, dst) = if i > r {
                    (&head[r], &mut tail[0])
                } else {
                    (&tail[0], &mut head[i])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= f * s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![0.0; cols];
        v[free] = 1.0;
        for (pr, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[pr][free];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_known_values() {
        assert_eq!(harmonic_dim(3, 0).unwrap(), 1);
        assert_eq!(harmonic_dim(3, 1).unwrap(), 3);
        assert_eq!(harmonic_dim(3, 2).unwrap(), 5);
        assert_eq!(harmonic_dim(4, 3).unwrap(), 16); // (k+1)^2 at n = 4
        assert_eq!(harmonic_dim(2, 7).unwrap(), 2);
        assert_eq!(invariant_dim(3, 2).unwrap(), 2);
        assert_eq!(invariant_dim(4, 4).unwrap(), 6);
        assert_eq!(invariant_dim(2, 4).unwrap(), 1);
        assert_eq!(invariant_dim(5, 3).unwrap(), 0);
    }

    #[test]
    fn matches_product_closed_form() {
        // (2k+n-2) (n+k-3)! / (k! (n-2)!) for a few spots computed by hand
        // as C(n+k-2, n-2) * (n+2k-2) / (n+k-2)
        for n in 2..=6usize {
            for k in 0..=10usize {
                let ours = harmonic_dim(n, k).unwrap();
                let reference = if k == 0 {
                    1
                } else {
                    binomial_u128((n + k - 2) as u128, (n - 2) as u128).unwrap()
                        * (n + 2 * k - 2) as u128
                        / (n + k - 2) as u128
                };
                assert_eq!(ours, reference, "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn oracle_agrees_with_closed_forms() {
        for n in 2..=5usize {
            for k in 0..=8usize {
                assert_eq!(
                    harmonic_dim(n, k).unwrap(),
                    brute_force_harmonic_dim(n, k).unwrap() as u128,
                    "harmonic n={n} k={k}"
                );
                assert_eq!(
                    invariant_dim(n, k).unwrap(),
                    brute_force_invariant_dim(n, k).unwrap() as u128,
                    "invariant n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn oracle_spot_examples() {
        assert_eq!(brute_force_invariant_dim(3, 1).unwrap(), 0);
        assert_eq!(brute_force_invariant_dim(3, 2).unwrap(), 2);
        assert_eq!(brute_force_invariant_dim(2, 4).unwrap(), 1);
        assert_eq!(brute_force_harmonic_dim(3, 2).unwrap(), 5);
        assert_eq!(brute_force_harmonic_dim(4, 3).unwrap(), 16);
    }

    #[test]
    fn oracle_guard() {
        assert!(brute_force_harmonic_dim(7, 2).is_err());
        assert!(brute_force_harmonic_dim(3, 11).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        assert!(matches!(
            harmonic_dim(80, 200),
            Err(Error::Overflow(_))
        ));
        // and the log-space route still works there
        let ln = ln_harmonic_dim(80, 200);
        assert!(ln.is_finite() && ln > 0.0);
    }

    #[test]
    fn ln_dims_match_exact_values() {
        for n in 2..=6usize {
            for k in 1..=10usize {
                let exact = harmonic_dim(n, k).unwrap() as f64;
                assert!((ln_harmonic_dim(n, k) - exact.ln()).abs() < 1e-10);
                if k % 2 == 0 {
                    let exact = invariant_dim(n, k).unwrap() as f64;
                    assert!((ln_invariant_dim(n, k) - exact.ln()).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn polynomial_basis_is_harmonic_and_complete() {
        for (n, k) in [(3usize, 2usize), (3, 4), (4, 3), (2, 5)] {
            let basis = HarmonicPolynomialBasis::build(n, k).unwrap();
            assert_eq!(basis.columns.len() as u128, harmonic_dim(n, k).unwrap());
            for col in &basis.columns {
                let lap = basis.laplacian_coeffs(col);
                let scale = col.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                for c in lap {
                    assert!(c.abs() <= 1e-9 * scale.max(1.0), "laplacian residue {c}");
                }
            }
        }
    }
}
