//! Dense complex polynomials and a simultaneous root finder.

use num_complex::Complex64;

/// Complex polynomial stored in ascending order, `c[0] + c[1] t + ... + c[d] t^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial, trimming exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    /// Value and first derivative by a single Horner sweep.
    pub fn eval_with_derivative(&self, t: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * t + p;
            p = p * t + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Poly {
        if self.degree() == 0 {
            return Poly::new(vec![Complex64::new(0.0, 0.0)]);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Taylor coefficients of `p(center + s)` in powers of `s`.
    pub fn shifted(&self, center: Complex64) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = c[j + 1];
                c[j] += center * next;
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, factor: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Largest coefficient modulus.
    pub fn coefficient_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Fujiwara upper bound on the modulus of every root.
    pub fn root_bound(&self) -> f64 {
        let d = self.degree();
        if d == 0 {
            return 0.0;
        }
        let lead = self.leading().norm();
        let mut bound: f64 = 0.0;
        for k in 0..d {
            let ratio = self.coeffs[k].norm() / lead;
            if ratio == 0.0 {
                continue;
            }
            let exp = 1.0 / (d - k) as f64;
            let term = if k == 0 { (ratio / 2.0).powf(exp) } else { ratio.powf(exp) };
            bound = bound.max(term);
        }
        2.0 * bound
    }
}

/// Outcome of the simultaneous root iteration.
#[derive(Debug, Clone)]
pub struct RootReport {
    pub roots: Vec<Complex64>,
    pub converged: bool,
    pub max_residual: f64,
}

/// All roots of `p` by Aberth–Ehrlich iteration.
///
/// Exact zero roots (vanishing trailing coefficients) are split off first so
/// that high-multiplicity roots at the origin come out exactly.
pub fn aberth_roots(p: &Poly, max_iterations: usize) -> RootReport {
    let d = p.degree();
    if d == 0 {
        return RootReport { roots: Vec::new(), converged: true, max_residual: 0.0 };
    }
    let zero = Complex64::new(0.0, 0.0);
    let n_zero = p.coeffs().iter().take_while(|c| **c == zero).count();
    let reduced = Poly::new(p.coeffs()[n_zero..].to_vec());
    let mut roots = vec![zero; n_zero];
    let m = reduced.degree();
    if m == 0 {
        return RootReport { roots, converged: true, max_residual: 0.0 };
    }
    if m == 1 {
        let c = reduced.coeffs();
        roots.push(-c[0] / c[1]);
        return RootReport { roots, converged: true, max_residual: 0.0 };
    }

    // Initial guesses spread on a circle of the geometric-mean root radius,
    // with an irrational angular offset to avoid symmetric stalls.
    let c = reduced.coeffs();
    let radius = (c[0].norm() / c[m].norm()).powf(1.0 / m as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let eps = f64::EPSILON;
    let mut converged = false;
    for _ in 0..max_iterations {
        let mut max_step: f64 = 0.0;
        for i in 0..m {
            let (pv, dpv) = reduced.eval_with_derivative(z[i]);
            if pv == zero {
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Complex64 = (0..m)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff == zero {
                        zero
                    } else {
                        1.0 / diff
                    }
                })
                .sum();
            let denom = 1.0 - ratio * repulsion;
            let step = if denom.norm() == 0.0 || !denom.is_finite() { ratio } else { ratio / denom };
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(radius));
            }
        }
        if max_step < 4.0 * eps {
            converged = true;
            break;
        }
    }

    let scale = reduced.coefficient_scale();
    let max_residual = z
        .iter()
        .map(|&r| reduced.eval(r).norm() / (scale * (1.0 + r.norm()).powi(m as i32)))
        .fold(0.0, f64::max);
    // Aberth stalls at the accuracy floor for multiple roots; that is still a
    // usable answer, so fall back on the residual test.
    let converged = converged || max_residual < 1e3 * eps;
    roots.extend(z);
    RootReport { roots, converged, max_residual }
}
