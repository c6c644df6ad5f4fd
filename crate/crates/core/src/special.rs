//! Airy function of real argument and the half-line Fresnel integral.
//!
//! `Ai` is evaluated piecewise: Maclaurin series near the origin, Taylor
//! stepping of `y'' = x y` on `2 < |x| ≤ 8`, and the large-argument
//! expansions beyond. The stepping runs toward the origin on the right
//! (where `Ai` grows and `Bi` decays) and away from it on the left.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::poly::Poly;
use crate::quad::{integrate, Endpoint, IntegrandSpec, PolyPhase, QuadError};

/// `Ai(x)` and `Ai'(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub ai: f64,
    pub ai_prime: f64,
}

/// `Ai(0) = 3^{-2/3} / Γ(2/3)`.
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// `-Ai'(0) = 3^{-1/3} / Γ(1/3)`.
pub const AIP0: f64 = 0.258_819_403_792_806_8;

const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_LIMIT: f64 = 8.0;
const MAX_STEP: f64 = 0.25;

pub fn airy_ai(x: f64) -> f64 {
    airy(x).ai
}

pub fn airy(x: f64) -> AiryValue {
    if x.is_nan() {
        return AiryValue { ai: f64::NAN, ai_prime: f64::NAN };
    }
    if x.abs() <= SERIES_LIMIT {
        maclaurin(x)
    } else if x.abs() > ASYMPTOTIC_LIMIT {
        if x > 0.0 {
            asymptotic_positive(x)
        } else {
            asymptotic_negative(-x)
        }
    } else if x > 0.0 {
        let anchor = asymptotic_positive(ASYMPTOTIC_LIMIT);
        march(ASYMPTOTIC_LIMIT, anchor, x)
    } else {
        let anchor = maclaurin(-SERIES_LIMIT);
        march(-SERIES_LIMIT, anchor, x)
    }
}

pub(crate) fn maclaurin(x: f64) -> AiryValue {
    // Ai = c1 f - c2 g with f = Σ a_k x^{3k}, g = Σ b_k x^{3k+1}.
    let x3 = x * x * x;
    let (mut f, mut fp, mut g, mut gp) = (1.0, 0.0, x, 1.0);
    let mut a = 1.0;
    let mut b = 1.0;
    let mut pow = 1.0; // x^{3k}
    for k in 1..80 {
        let kf = k as f64;
        a /= (3.0 * kf - 1.0) * (3.0 * kf);
        b /= (3.0 * kf) * (3.0 * kf + 1.0);
        let prev_pow = pow;
        pow *= x3;
        let tf = a * pow;
        let tg = b * pow * x;
        f += tf;
        g += tg;
        fp += a * 3.0 * kf * prev_pow * x * x;
        gp += b * (3.0 * kf + 1.0) * pow;
        if tf.abs() <= 1e-18 * f.abs() && tg.abs() <= 1e-18 * g.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    AiryValue { ai: AI0 * f - AIP0 * g, ai_prime: AI0 * fp - AIP0 * gp }
}

/// Coefficients `u_k` of the large-argument expansions.
fn u_coefficients(n: usize) -> Vec<f64> {
    let mut u = vec![1.0];
    for k in 1..n {
        let kf = k as f64;
        let next = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        u.push(next);
    }
    u
}

fn v_coefficients(u: &[f64]) -> Vec<f64> {
    u.iter()
        .enumerate()
        .map(|(k, &uk)| {
            let kf = k as f64;
            if k == 0 {
                1.0
            } else {
                -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk
            }
        })
        .collect()
}

/// Sums `Σ (-1)^k c_k / ζ^k` over `k ≡ parity (mod 2)` (or all `k` when
/// `parity` is `None`), stopping at the smallest term.
fn asymptotic_sum(c: &[f64], zeta: f64, parity: Option<usize>) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for (k, &ck) in c.iter().enumerate() {
        if parity.is_some_and(|p| k % 2 != p) {
            continue;
        }
        let term = ck / zeta.powi(k as i32);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        let sign = match parity {
            None => if k % 2 == 0 { 1.0 } else { -1.0 },
            Some(_) => if (k / 2) % 2 == 0 { 1.0 } else { -1.0 },
        };
        sum += sign * term;
    }
    sum
}

fn asymptotic_positive(x: f64) -> AiryValue {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let u = u_coefficients(40);
    let v = v_coefficients(&u);
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    AiryValue {
        ai: e / q * asymptotic_sum(&u, zeta, None),
        ai_prime: -e * q * asymptotic_sum(&v, zeta, None),
    }
}

fn asymptotic_negative(z: f64) -> AiryValue {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let u = u_coefficients(40);
    let v = v_coefficients(&u);
    let (s, c) = (zeta - PI / 4.0).sin_cos();
    let q = z.powf(0.25);
    let rp = PI.sqrt();
    let ai = (c * asymptotic_sum(&u, zeta, Some(0)) + s * asymptotic_sum(&u, zeta, Some(1))) / (rp * q);
    let ai_prime = q / rp * (s * asymptotic_sum(&v, zeta, Some(0)) - c * asymptotic_sum(&v, zeta, Some(1)));
    AiryValue { ai, ai_prime }
}

/// Taylor steps of `y'' = x y` from `(x0, y0)` to `x`.
fn march(x0: f64, start: AiryValue, x: f64) -> AiryValue {
    let n_steps = ((x - x0).abs() / MAX_STEP).ceil().max(1.0) as usize;
    let h = (x - x0) / n_steps as f64;
    let mut state = start;
    for i in 0..n_steps {
        state = taylor_step(x0 + h * i as f64, state, h);
    }
    state
}

fn taylor_step(x0: f64, y: AiryValue, h: f64) -> AiryValue {
    // a_{n+2} = (x0 a_n + a_{n-1}) / ((n+2)(n+1))
    let mut a = [0.0f64; 64];
    a[0] = y.ai;
    a[1] = y.ai_prime;
    for n in 0..62 {
        let prev = if n == 0 { 0.0 } else { a[n - 1] };
        a[n + 2] = (x0 * a[n] + prev) / ((n + 2) as f64 * (n + 1) as f64);
    }
    let (mut val, mut der) = (0.0, 0.0);
    for n in (0..64).rev() {
        val = val * h + a[n];
        if n >= 1 {
            der = der * h + n as f64 * a[n];
        }
    }
    AiryValue { ai: val, ai_prime: der }
}

/// `∫_a^∞ e^{-iv²/2} dv`, by steepest descent from `a` into the valley at `-π/4`.
pub fn fresnel_halfline(a: f64) -> Result<Complex64, QuadError> {
    let phase = PolyPhase::from_real(&[0.0, 0.0, -0.5], 1.0)?;
    let spec = IntegrandSpec::new(
        phase,
        Poly::from_real(&[1.0]),
        Endpoint::Finite(Complex64::new(a, 0.0)),
        Endpoint::InfiniteRay(-PI / 4.0),
    )?;
    Ok(integrate(&spec, 1e-13)?.value)
}

/// `√(2π) e^{-iπ/4}`, the full-line value.
pub fn fresnel_full() -> Complex64 {
    Complex64::from_polar((2.0 * PI).sqrt(), -PI / 4.0)
}
