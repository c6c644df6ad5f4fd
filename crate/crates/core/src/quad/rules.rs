//! Gauss–Legendre and generalized Gauss–Laguerre rules.
//!
//! Nodes come from the Golub–Welsch eigenproblem and are then polished by
//! Newton iteration on the three-term recurrence, with weights taken from
//! the closed-form derivative expressions.

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::ln_gamma;
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn jacobi_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = off[i];
            m[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values
}

/// Legendre `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Rule {
    assert!(n >= 1, "rule needs at least one node");
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let mut nodes = jacobi_eigenvalues(&diag, &off);
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = legendre(n, *x);
            *x -= p / dp;
        }
        let (_, dp) = legendre(n, *x);
        weights.push(2.0 / ((1.0 - *x * *x) * dp * dp));
    }
    Rule { nodes, weights }
}

/// Generalized Laguerre `L_n^{(a)}(x)` and `L_{n-1}^{(a)}(x)`.
fn laguerre(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let mut l0 = 1.0;
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut l1 = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let l2 = ((2.0 * kf + 1.0 + alpha - x) * l1 - (kf + alpha) * l0) / (kf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    (l1, l0)
}

/// `n`-point generalized Gauss–Laguerre rule for `∫_0^∞ x^alpha e^{-x} f(x) dx`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Rule {
    assert!(n >= 1, "rule needs at least one node");
    assert!(alpha > -1.0, "alpha must exceed -1");
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0 + alpha).collect();
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            (k * (k + alpha)).sqrt()
        })
        .collect();
    let mut nodes = jacobi_eigenvalues(&diag, &off);
    let nf = n as f64;
    // Γ(n + α) / n!, in log form.
    let log_ratio = ln_gamma(nf + alpha) - ln_gamma(nf + 1.0);
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (ln, lnm1) = laguerre(n, alpha, *x);
            // x L_n' = n L_n - (n + α) L_{n-1}
            let dl = (nf * ln - (nf + alpha) * lnm1) / *x;
            *x -= ln / dl;
        }
        let (ln, lnm1) = laguerre(n, alpha, *x);
        let dl = (nf * ln - (nf + alpha) * lnm1) / *x;
        // w = Γ(n+α+1) / (n! x [L_n'(x)]^2)
        let log_w = log_ratio + (nf + alpha).ln() - x.ln() - 2.0 * dl.abs().ln();
        weights.push(log_w.exp());
    }
    Rule { nodes, weights }
}

type RuleCache = Mutex<BTreeMap<(u8, usize), &'static Rule>>;

fn cached(kind: u8, n: usize, build: impl FnOnce() -> Rule) -> &'static Rule {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
    // Each order is built once and lives for the whole process.
    map.entry((kind, n)).or_insert_with(|| Box::leak(Box::new(build())))
}

/// Shared `n`-point Gauss–Legendre rule.
pub fn legendre_cached(n: usize) -> &'static Rule {
    cached(0, n, || gauss_legendre(n))
}

/// Shared standard (`alpha = 0`) Gauss–Laguerre rule.
pub fn laguerre_cached(n: usize) -> &'static Rule {
    cached(1, n, || gauss_laguerre(n, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = gauss_legendre(10);
        // ∫_{-1}^{1} x^18 dx = 2/19
        let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn legendre_smooth_integrand() {
        let rule = gauss_legendre(40);
        let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.exp()).sum();
        assert!((s - (1f64.exp() - (-1f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn laguerre_moments() {
        for n in [30, 60] {
            let rule = gauss_laguerre(n, 0.0);
            for k in 0..8 {
                let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(k)).sum();
                let fact: f64 = (1..=k).map(|j| j as f64).product();
                assert!((s / fact - 1.0).abs() < 1e-12, "n={n} k={k} s={s}");
            }
        }
    }

    #[test]
    fn generalized_laguerre_moments() {
        let alpha = -0.8;
        let rule = gauss_laguerre(30, alpha);
        // ∫ x^α e^{-x} x dx = Γ(α + 2)
        let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x).sum();
        let expected = ln_gamma(alpha + 2.0).exp();
        assert!((s / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn laguerre_smooth_integrand() {
        // ∫ e^{-x} cos x dx = 1/2
        let rule = gauss_laguerre(60, 0.0);
        let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.cos()).sum();
        assert!((s - 0.5).abs() < 1e-13, "s={s}");
    }
}
