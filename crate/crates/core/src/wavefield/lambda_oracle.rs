//! Direct quadrature of `A = ∫ e^{−iE/2} dλ` on the real `λ` axis.
//!
//! With `u = λ + γS²` the exponent is `iΦ + i(−Xu²/2 − Yu − c u^{5/2})`. For
//! `u < 0` the branch `u^{1/2} = −i|u|^{1/2}` turns the quintic term into
//! `e^{−c|u|^{5/2}}`, so the negative half is absolutely convergent. The
//! positive half only oscillates on the axis; past a point where the
//! `u^{5/2}` term dominates, it is rotated onto the ray `arg(u − U) = −π/5`,
//! where it decays.

use num_complex::Complex64;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use super::coords::{quintic_coefficient, regime_quantities};
use super::{check_gamma, WaveError};

/// Settings for [`eval_a_direct_lambda`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaOracleOptions {
    /// Absolute error target for the whole integral.
    pub abs_tol: f64,
    /// Height of the integration line above the negative `λ` axis; `0`
    /// integrates on the axis itself (the limit).
    pub offset: f64,
    /// Truncate where the integrand modulus falls below `e^{-cutoff}`.
    pub cutoff: f64,
}

impl Default for LambdaOracleOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-12, offset: 0.0, cutoff: 45.0 }
    }
}

/// Oracle value with its quadrature and truncation error bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: Complex64,
    pub quadrature_error: f64,
    pub tail_bound: f64,
}

impl OracleValue {
    pub fn error_estimate(&self) -> f64 {
        self.quadrature_error + self.tail_bound
    }
}

/// `u^{1/2}` with the cut chosen so that negative `u` gives `−i|u|^{1/2}`.
pub fn branch_sqrt(u: Complex64) -> Complex64 {
    if u.re >= 0.0 {
        u.sqrt()
    } else {
        Complex64::new(0.0, -1.0) * (-u).sqrt()
    }
}

struct Exponent {
    x: f64,
    y: f64,
    c: f64,
}

impl Exponent {
    /// `i(−Xu²/2 − Yu − c u^{5/2})`.
    fn eval(&self, u: Complex64) -> Complex64 {
        let r = branch_sqrt(u);
        let u2 = u * u;
        Complex64::new(0.0, 1.0) * (-self.x / 2.0 * u2 - self.y * u - self.c * u2 * r)
    }
}

// Gauss–Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel: value, error estimate, and `∫|f|`.
fn gk15(f: &mut impl FnMut(f64) -> Complex64, a: f64, b: f64) -> Panel {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let center = f(mid);
    let mut kronrod = center * WGK[7];
    let mut gauss = center * WG[3];
    let mut abs = center.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (l, r) = (f(mid - dx), f(mid + dx));
        kronrod += (l + r) * WGK[j];
        abs += (l.norm() + r.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (l + r) * WG[j / 2];
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
        abs: abs * half.abs(),
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs: f64,
}

impl Panel {
    /// Error estimates below this are rounding noise and not worth splitting.
    fn at_rounding_floor(&self) -> bool {
        self.error <= 50.0 * f64::EPSILON * self.abs
    }
}

struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByError {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Adaptive Gauss–Kronrod on `[a, b]`, bisecting the worst panel first.
pub(crate) fn adaptive_gk(
    f: &mut impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_panels: usize,
) -> (Complex64, f64) {
    let n0 = 16;
    let mut open = BinaryHeap::new();
    let mut done = Vec::new();
    let mut total = 0.0;
    for i in 0..n0 {
        let lo = a + (b - a) * i as f64 / n0 as f64;
        let hi = if i + 1 == n0 { b } else { a + (b - a) * (i + 1) as f64 / n0 as f64 };
        let p = gk15(f, lo, hi);
        total += p.error;
        if p.at_rounding_floor() {
            done.push(p);
        } else {
            open.push(ByError(p));
        }
    }
    let mut count = n0;
    while total > abs_tol && count < max_panels {
        let Some(ByError(worst)) = open.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        total -= worst.error;
        for p in [gk15(f, worst.a, mid), gk15(f, mid, worst.b)] {
            total += p.error;
            if p.at_rounding_floor() {
                done.push(p);
            } else {
                open.push(ByError(p));
            }
        }
        count += 1;
    }
    done.extend(open.into_iter().map(|p| p.0));
    done.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = done.iter().map(|p| p.value).sum();
    let error = done.iter().map(|p| p.error).sum();
    (value, error)
}

const MAX_PANELS: usize = 100_000;

/// Brute-force evaluation of `A(S, N)` from the `λ`-integral.
///
/// Intended for `|S|, |N| ≤ 10`; refuses when the rotated tail does not decay
/// monotonically within its search window.
pub fn eval_a_direct_lambda(
    s: f64,
    n: f64,
    gamma: f64,
    opts: &LambdaOracleOptions,
) -> Result<OracleValue, WaveError> {
    check_gamma(gamma)?;
    if !(s.is_finite() && n.is_finite()) {
        return Err(WaveError::InvalidArgument("coordinates must be finite".into()));
    }
    if !(opts.offset >= 0.0 && opts.abs_tol > 0.0 && opts.cutoff > 0.0) {
        return Err(WaveError::InvalidArgument("oracle options out of range".into()));
    }
    let q = regime_quantities(s, n, gamma);
    let c = quintic_coefficient(gamma);
    let ex = Exponent { x: q.x, y: q.y, c };
    let i = Complex64::new(0.0, 1.0);
    let tol = opts.abs_tol / 4.0;

    // Negative half: |integrand| = e^{-c|u|^{5/2}} on the axis.
    let u_neg = (opts.cutoff / c).powf(0.4);
    let eps = opts.offset;
    let mut f_neg = |v: f64| ex.eval(Complex64::new(v, eps)).exp();
    let (neg, neg_err) = adaptive_gk(&mut f_neg, -u_neg, 0.0, tol, MAX_PANELS);
    // ∫_U^∞ e^{-c v^{5/2}} dv ≤ e^{-cU^{5/2}} / (2.5 c U^{3/2})
    let neg_tail = (-opts.cutoff).exp() / (2.5 * c * u_neg.powf(1.5));

    // Vertical connector from 0 + iε back down to the axis.
    let (conn, conn_err) = if eps > 0.0 {
        let mut f_conn = |y: f64| -ex.eval(Complex64::new(0.0, y)).exp() * i;
        adaptive_gk(&mut f_conn, 0.0, eps, tol, MAX_PANELS)
    } else {
        (Complex64::new(0.0, 0.0), 0.0)
    };

    // Positive half on the axis up to where the quintic term dominates.
    let ratio_x = (q.x.abs() / (2.5 * c)).powi(2);
    let ratio_y = (q.y.abs() / (2.5 * c)).powf(2.0 / 3.0);
    let u_plus = 2.0 * ratio_x.max(ratio_y).max(1.0);
    let mut f_pos = |v: f64| ex.eval(Complex64::new(v, 0.0)).exp();
    let (pos, pos_err) = adaptive_gk(&mut f_pos, 0.0, u_plus, tol, MAX_PANELS);

    // Rotated ray u = U + r e^{-iπ/5}.
    let dir = Complex64::from_polar(1.0, -PI / 5.0);
    let log_mod = |r: f64| ex.eval(u_plus + dir * r).re;
    let mut r_end = 1.0;
    while log_mod(r_end) > -opts.cutoff {
        r_end *= 1.5;
        if r_end > 1e6 {
            return Err(WaveError::OracleRefused(format!(
                "ray tail does not decay (S = {s}, N = {n})"
            )));
        }
    }
    let probes = 64;
    let mut last = f64::INFINITY;
    for j in 0..=probes {
        let r = r_end * (0.5 + 0.5 * j as f64 / probes as f64);
        let m = log_mod(r);
        if m > last + 1e-9 {
            return Err(WaveError::OracleRefused(format!(
                "integrand not monotone on the ray tail (S = {s}, N = {n})"
            )));
        }
        last = m;
    }
    let mut f_ray = |r: f64| ex.eval(u_plus + dir * r).exp() * dir;
    let (ray, ray_err) = adaptive_gk(&mut f_ray, 0.0, r_end, tol, MAX_PANELS);
    // Past r_end the modulus keeps falling at least as fast as at r_end.
    let slope = (log_mod(r_end) - log_mod(0.9 * r_end)) / (0.1 * r_end);
    let ray_tail = if slope < 0.0 { log_mod(r_end).exp() / -slope } else { f64::INFINITY };

    let phase = Complex64::from_polar(1.0, q.phi);
    let value = (neg + conn + pos + ray) * phase;
    let quadrature_error = neg_err + conn_err + pos_err + ray_err;
    let tail_bound = neg_tail + ray_tail;
    if !value.is_finite() || !tail_bound.is_finite() {
        return Err(WaveError::OracleRefused(format!("non-finite result at (S, N) = ({s}, {n})")));
    }
    Ok(OracleValue { value, quadrature_error, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefield::eval_a;

    const G: f64 = 4.0 / 9.0;

    #[test]
    fn branch_convention_on_negative_axis() {
        let r = branch_sqrt(Complex64::new(-4.0, 0.0));
        assert_eq!(r, Complex64::new(0.0, -2.0));
        assert_eq!(branch_sqrt(Complex64::new(9.0, 0.0)), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn gk_integrates_smooth_function() {
        let mut f = |x: f64| Complex64::new(x.cos(), x.sin());
        let (v, e) = adaptive_gk(&mut f, 0.0, 10.0, 1e-13, 1000);
        let exact = Complex64::new(10f64.sin(), 1.0 - 10f64.cos());
        assert!((v - exact).norm() < 1e-13 && e < 1e-12);
    }

    #[test]
    fn matches_a32_route() {
        for (s, n) in [(1.0, 1.0), (-3.0, 0.0)] {
            let o = eval_a_direct_lambda(s, n, G, &LambdaOracleOptions::default()).unwrap();
            let a = eval_a(s, n, G, 1e-12).unwrap().value;
            assert!((o.value - a).norm() < 1e-6 * a.norm(), "({s},{n}): {} vs {a}", o.value);
            assert!(o.error_estimate() < 1e-9);
        }
    }

    #[test]
    fn offset_converges_to_axis_value() {
        let (s, n) = (1.0, 1.0);
        let base = eval_a_direct_lambda(s, n, G, &LambdaOracleOptions::default()).unwrap().value;
        let mut prev = f64::INFINITY;
        for eps in [1e-2, 1e-3, 1e-4, 1e-6] {
            let opts = LambdaOracleOptions { offset: eps, ..Default::default() };
            let d = (eval_a_direct_lambda(s, n, G, &opts).unwrap().value - base).norm();
            assert!(d < prev, "eps={eps}");
            prev = d;
        }
        assert!(prev < 1e-8);
    }
}
