//! Fast built-in checks: closed-form contour integrals, Airy identities,
//! representation agreement and finite-difference residuals.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::pde::{residual_popov, residual_pwe};
use crate::poly::Poly;
use crate::quad::{integrate, Endpoint, IntegrandSpec, PolyPhase, QuadError};
use crate::special::{airy, fresnel_full, fresnel_halfline, AI0, AIP0};
use crate::wavefield::{eval_a, eval_a32, eval_a_direct_lambda, eval_split, LambdaOracleOptions};

/// Names of the checks, in run order.
pub const CHECKS: [&str; 9] = [
    "gaussian-line",
    "fresnel-line",
    "airy-contour",
    "airy-series",
    "airy-ode",
    "fresnel-halves",
    "routes-agree",
    "pwe-residual",
    "popov-residual",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs every check. `fault` names a check whose leading phase (or series)
/// coefficient is scaled by `1 + 1e-3`; it is a test hook.
pub fn run_selftest(fault: Option<&str>) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&name| {
            let eps = if fault == Some(name) { 1e-3 } else { 0.0 };
            let (passed, detail) = match run_check(name, eps) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

/// One line per check; no timings, so two runs give identical bytes.
pub fn format_report(outcomes: &[CheckOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{tag} {:<15} {}", o.name, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(out, "{} checks, {} failed", outcomes.len(), failed);
    out
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn verdict(err: f64, tol: f64) -> (bool, String) {
    (err <= tol, format!("rel err {err:.1e} (tol {tol:.0e})"))
}

fn contour(phase: &[f64], from: f64, to: f64) -> Result<Complex64, QuadError> {
    let spec = IntegrandSpec::new(
        PolyPhase::from_real(phase, 1.0)?,
        Poly::from_real(&[1.0]),
        Endpoint::InfiniteRay(from),
        Endpoint::InfiniteRay(to),
    )?;
    Ok(integrate(&spec, 1e-13)?.value)
}

fn run_check(name: &str, eps: f64) -> Result<(bool, String), Box<dyn std::error::Error>> {
    let g = 4.0 / 9.0;
    let one = 1.0 + eps;
    Ok(match name {
        "gaussian-line" => {
            // ∫ e^{it²/2} dt along the real line, whose ends lie in the valleys at 5π/4 and π/4.
            let v = contour(&[0.0, 0.0, 0.5 * one], 1.25 * PI, PI / 4.0)?;
            verdict(rel(v, Complex64::from_polar((2.0 * PI).sqrt(), PI / 4.0)), 1e-12)
        }
        "fresnel-line" => {
            let v = contour(&[0.0, 0.0, -0.5 * one], 0.75 * PI, -PI / 4.0)?;
            verdict(rel(v, fresnel_full()), 1e-12)
        }
        "airy-contour" => {
            let v = contour(&[0.0, 0.0, 0.0, one / 3.0], 5.0 * PI / 6.0, PI / 6.0)?;
            verdict(rel(v, Complex64::new(2.0 * PI * AI0, 0.0)), 1e-12)
        }
        "airy-series" => {
            // Ai(0) and Ai'(0) from the Γ-function closed forms.
            let ai0 = 3f64.powf(-2.0 / 3.0) / 1.354_117_939_426_400_4 * one;
            let aip0 = 3f64.powf(-1.0 / 3.0) / 2.678_938_534_707_747_6;
            let a = airy(0.0);
            let err = ((a.ai - ai0) / ai0).abs().max(((a.ai_prime + aip0) / aip0).abs());
            let err = err.max(((AIP0 - aip0) / aip0).abs());
            verdict(err, 1e-14)
        }
        "airy-ode" => {
            let h = 1e-3;
            let mut worst: f64 = 0.0;
            for x in [-6.0, -1.5, 0.5, 2.5, 7.0] {
                let f = |t: f64| airy(t).ai;
                let r = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h) - one * x * f(x);
                worst = worst.max(r.abs());
            }
            verdict(worst, 5e-6)
        }
        "fresnel-halves" => {
            let a = 0.7 * one;
            let v = fresnel_halfline(a)? + fresnel_halfline(-0.7)?;
            verdict(rel(v, fresnel_full()), 1e-12)
        }
        "routes-agree" => {
            let (s, n) = (2.0, 1.0);
            let a = eval_a(s, n, g * one, 1e-11)?.value;
            let split = eval_split(s, n, g, 1e-11)?.value;
            let lam = eval_a_direct_lambda(s, n, g, &LambdaOracleOptions::default())?.value;
            verdict(rel(a, lam).max(rel(split, lam)), 1e-8)
        }
        "pwe-residual" => {
            let f = |x: f64, y: f64| {
                eval_a32(x * one, y, g, 1e-12).map(|e| e.value).unwrap_or(Complex64::new(f64::NAN, 0.0))
            };
            let scale = f(1.0, 1.0).norm();
            let r1 = residual_pwe(f, 1.0, 1.0, 1e-2).norm();
            let r2 = residual_pwe(f, 1.0, 1.0, 5e-3).norm();
            let ratio = r1 / r2;
            ((ratio - 4.0).abs() < 0.6 && r2 < 1e-4 * scale, format!("halving ratio {ratio:.2}"))
        }
        "popov-residual" => {
            let f = |s: f64, n: f64| {
                eval_a(s, n, g, 1e-12).map(|e| e.value).unwrap_or(Complex64::new(f64::NAN, 0.0))
            };
            let scale = f(1.0, 1.0).norm();
            let r1 = residual_popov(f, 1.0, 1.0, g * one, 1e-2).norm();
            let r2 = residual_popov(f, 1.0, 1.0, g * one, 5e-3).norm();
            let ratio = r1 / r2;
            ((ratio - 4.0).abs() < 0.6 && r2 < 1e-4 * scale, format!("halving ratio {ratio:.2}"))
        }
        other => (false, format!("unknown check {other}")),
    })
}
