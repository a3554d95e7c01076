//! Generalized Gauss–Laguerre rules for the weight t^{−α} e^{−t}, 0 ≤ α < 1.
//!
//! Nodes and weights come from the Golub–Welsch construction: the nodes are
//! the eigenvalues of the symmetric Jacobi matrix of the orthogonal
//! polynomials for the weight, the weights are Γ(1−α) times the squared
//! first components of the normalized eigenvectors. The eigenproblem is
//! solved by implicit-shift QL on the tridiagonal matrix.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{OhtError, Result};
use crate::specfun::gamma_real;

pub const MAX_ORDER: usize = 64;

/// Nodes and weights of a generalized Gauss–Laguerre rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    alpha: f64,
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Nodes, strictly increasing and positive.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights, all positive, summing to Γ(1−α).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Returns the cached rule for the weight t^{−α} e^{−t} with n points.
pub fn laguerre_rule(alpha: f64, n: usize) -> Result<Arc<QuadratureRule>> {
    if n < 1 || n > MAX_ORDER {
        return Err(OhtError::Param(format!(
            "rule order must lie in 1..={MAX_ORDER}, got {n}"
        )));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(OhtError::Domain(format!("alpha must lie in [0,1), got {alpha}")));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (alpha.to_bits(), n);
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(build_rule(alpha, n)?);
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

/// Σ_k w_k g(t_k) with compensated summation.
pub fn apply_rule<F>(rule: &QuadratureRule, g: F) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for (k, (&t, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let v = g(t);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(OhtError::EvalAtNode { index: k });
        }
        let y = w * v - comp;
        let t_acc = sum + y;
        comp = (t_acc - sum) - y;
        sum = t_acc;
    }
    Ok(sum)
}

fn build_rule(alpha: f64, n: usize) -> Result<QuadratureRule> {
    // Jacobi matrix for generalized Laguerre polynomials with parameter
    // beta = -alpha: diagonal 2k + beta + 1, off-diagonal sqrt(k (k + beta)).
    let beta = -alpha;
    let mut diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + beta + 1.0).collect();
    let mut off: Vec<f64> = (1..n)
        .map(|k| (k as f64 * (k as f64 + beta)).sqrt())
        .collect();
    off.push(0.0);

    // First row of the eigenvector matrix, accumulated through the QL sweeps.
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    ql_implicit(&mut diag, &mut off, &mut z)?;

    let mu0 = gamma_real(1.0 - alpha)?;
    let mut pairs: Vec<(f64, f64)> = (0..n).map(|j| (diag[j], mu0 * z[0][j] * z[0][j])).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    Ok(QuadratureRule { alpha, n, nodes, weights })
}

/// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating the
/// transformation into `z`. `d` holds the diagonal, `e` the subdiagonal in
/// e[0..n-1] with e[n-1] unused. On return `d` holds eigenvalues and column
/// j of `z` the corresponding normalized eigenvector.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut [Vec<f64>]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find a negligible subdiagonal element.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(OhtError::Solve(
                    "QL iteration failed to converge for the Jacobi matrix".into(),
                ));
            }
            // Form the implicit shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow_restart = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow_restart = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if underflow_restart {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_plain_rule() {
        let rule = laguerre_rule(0.0, 1).unwrap();
        assert!((rule.nodes()[0] - 1.0).abs() < 1e-14);
        assert!((rule.weights()[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_point_plain_rule_closed_form() {
        // Roots of L2(t) = t^2 - 4t + 2 with matching weights.
        let rule = laguerre_rule(0.0, 2).unwrap();
        let s2 = 2.0_f64.sqrt();
        assert!((rule.nodes()[0] - (2.0 - s2)).abs() < 1e-13);
        assert!((rule.nodes()[1] - (2.0 + s2)).abs() < 1e-13);
        assert!((rule.weights()[0] - (2.0 + s2) / 4.0).abs() < 1e-13);
        assert!((rule.weights()[1] - (2.0 - s2) / 4.0).abs() < 1e-13);
    }

    #[test]
    fn zeroth_moment_is_gamma() {
        let rule = laguerre_rule(0.5, 4).unwrap();
        let total: f64 = rule.weights().iter().sum();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((total - sqrt_pi).abs() <= 1e-13 * sqrt_pi);
    }

    #[test]
    fn rule_invariants_across_orders() {
        for &alpha in &[0.0, 1.0 / 3.0, 0.5] {
            for &n in &[2usize, 4, 8, 16] {
                let rule = laguerre_rule(alpha, n).unwrap();
                assert!(rule.nodes().iter().all(|&t| t > 0.0));
                assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
                assert!(rule.weights().iter().all(|&w| w > 0.0));
                // Exactness through degree 2n-1: sum w t^j = Gamma(j+1-alpha).
                for j in 0..2 * n {
                    let approx: f64 = rule
                        .nodes()
                        .iter()
                        .zip(rule.weights())
                        .map(|(&t, &w)| w * t.powi(j as i32))
                        .sum();
                    let exact = gamma_real(j as f64 + 1.0 - alpha).unwrap();
                    assert!(
                        (approx - exact).abs() <= 1e-12 * exact,
                        "alpha = {alpha}, n = {n}, j = {j}: {approx} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn gaussian_exactness_and_its_limit() {
        let rule = laguerre_rule(0.0, 2).unwrap();
        let cube = apply_rule(&rule, |t| Complex64::new(t * t * t, 0.0)).unwrap();
        assert!((cube.re - 6.0).abs() <= 1e-12 * 6.0);
        // Degree 2n = 4 is beyond exactness: the rule returns 20, not 4! = 24.
        let quart = apply_rule(&rule, |t| Complex64::new(t.powi(4), 0.0)).unwrap();
        assert!((quart.re - 20.0).abs() <= 1e-12 * 20.0);
    }

    #[test]
    fn constant_under_half_weight() {
        let rule = laguerre_rule(0.5, 3).unwrap();
        let v = apply_rule(&rule, |_| Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn deterministic_within_process() {
        let a = build_rule(1.0 / 3.0, 24).unwrap();
        let b = build_rule(1.0 / 3.0, 24).unwrap();
        assert!(a
            .nodes()
            .iter()
            .zip(b.nodes())
            .all(|(x, y)| x.to_bits() == y.to_bits()));
        assert!(a
            .weights()
            .iter()
            .zip(b.weights())
            .all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn eval_error_carries_node_index() {
        let rule = laguerre_rule(0.0, 4).unwrap();
        let bad_node = rule.nodes()[2];
        let err = apply_rule(&rule, |t| {
            if t == bad_node {
                Complex64::new(f64::NAN, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .unwrap_err();
        assert!(matches!(err, OhtError::EvalAtNode { index: 2 }));
    }

    #[test]
    fn param_and_domain_errors() {
        assert!(laguerre_rule(0.0, 0).is_err());
        assert!(laguerre_rule(0.0, 65).is_err());
        assert!(laguerre_rule(1.0, 4).is_err());
        assert!(laguerre_rule(-0.1, 4).is_err());
    }

    #[test]
    fn concurrent_cache_access() {
        std::thread::scope(|scope| {
            for _ in 0..8 {
                scope.spawn(|| {
                    for n in 1..20 {
                        let rule = laguerre_rule(0.5, n).unwrap();
                        assert_eq!(rule.order(), n);
                    }
                });
            }
        });
    }
}
