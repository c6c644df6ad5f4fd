use num_complex::Complex64;
use std::f64::consts::PI;

use super::coords::{quintic_coefficient, regime_quantities};
use super::{check_gamma, WaveError};
use crate::poly::Poly;
use crate::quad::{integrate, Endpoint, IntegrandSpec, PolyPhase, QuadResult};

pub const DEFAULT_POINT_TOL: f64 = 1e-10;
pub const DEFAULT_GRID_TOL: f64 = 1e-8;

/// A field value with the quadrature's error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub error_estimate: f64,
    /// Whether the requested tolerance was met.
    pub converged: bool,
}

impl Evaluation {
    fn from_quad(r: QuadResult, factor: Complex64) -> Self {
        Self {
            value: r.value * factor,
            error_estimate: r.error_estimate * factor.norm(),
            converged: r.converged,
        }
    }

    fn add(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            converged: self.converged && other.converged,
        }
    }
}

fn check_point(values: &[f64]) -> Result<(), WaveError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(WaveError::InvalidArgument("coordinates must be finite".into()))
    }
}

/// `Ã₃₂(X, Y) = ∫ t exp(i(−Y t² − X t⁴/2 + c t⁵)) dt`, `c = 4/(15√γ)`, from the
/// valley at angle `9π/10` to the one at `π/2`.
pub fn eval_a32(x: f64, y: f64, gamma: f64, tol: f64) -> Result<Evaluation, WaveError> {
    check_gamma(gamma)?;
    check_point(&[x, y])?;
    let c = quintic_coefficient(gamma);
    let phase = PolyPhase::from_real(&[0.0, 0.0, -y, 0.0, -x / 2.0, c], 1.0)?;
    let spec = IntegrandSpec::new(
        phase,
        Poly::from_real(&[0.0, 1.0]),
        Endpoint::InfiniteRay(0.9 * PI),
        Endpoint::InfiniteRay(0.5 * PI),
    )?;
    Ok(Evaluation::from_quad(integrate(&spec, tol)?, Complex64::new(1.0, 0.0)))
}

/// `A(S, N) = −2 e^{iΦ} Ã₃₂(S, N − γS³/3)`.
pub fn eval_a(s: f64, n: f64, gamma: f64, tol: f64) -> Result<Evaluation, WaveError> {
    check_gamma(gamma)?;
    let q = regime_quantities(s, n, gamma);
    let inner = eval_a32(q.x, q.y, gamma, tol)?;
    let factor = -2.0 * Complex64::from_polar(1.0, q.phi);
    Ok(Evaluation {
        value: inner.value * factor,
        error_estimate: 2.0 * inner.error_estimate,
        converged: inner.converged,
    })
}

fn check_positive_s(s: f64) -> Result<(), WaveError> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(WaveError::InvalidArgument(format!("S must be positive, got {s}")))
    }
}

/// The `λ < −γS²` half of the field, `2S²e^{iΦ} ∫₀^∞ u e^{iS⁵ ĝ(u)} du` with
/// `ĝ(u) = icu⁵ − u⁴/2 + Ku²`.
pub fn eval_i_minus(s: f64, n: f64, gamma: f64, tol: f64) -> Result<Evaluation, WaveError> {
    check_gamma(gamma)?;
    check_positive_s(s)?;
    check_point(&[n])?;
    let q = regime_quantities(s, n, gamma);
    let k = q.k.expect("S > 0");
    let c = quintic_coefficient(gamma);
    let zero = Complex64::new(0.0, 0.0);
    let coeffs = vec![
        zero,
        zero,
        Complex64::new(k, 0.0),
        zero,
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, c),
    ];
    let phase = PolyPhase::new(coeffs, s.powi(5))?;
    let spec = IntegrandSpec::new(
        phase,
        Poly::from_real(&[0.0, 1.0]),
        Endpoint::Finite(zero),
        Endpoint::InfiniteRay(0.0),
    )?;
    let factor = 2.0 * s * s * Complex64::from_polar(1.0, q.phi);
    Ok(Evaluation::from_quad(integrate(&spec, tol)?, factor))
}

/// The `λ > −γS²` half of the field, `2S²e^{iΦ} ∫₀^∞ τ e^{−(i/2)S⁵ g(τ)} dτ`
/// with `g(τ) = 2Kτ² + τ⁴ + 2cτ⁵`. The contour leaves the real axis (the
/// edge of its decay sector) along the ray at `−π/10`.
pub fn eval_i_plus(s: f64, n: f64, gamma: f64, tol: f64) -> Result<Evaluation, WaveError> {
    check_gamma(gamma)?;
    check_positive_s(s)?;
    check_point(&[n])?;
    let q = regime_quantities(s, n, gamma);
    let k = q.k.expect("S > 0");
    let c = quintic_coefficient(gamma);
    let phase = PolyPhase::from_real(&[0.0, 0.0, -k, 0.0, -0.5, -c], s.powi(5))?;
    let spec = IntegrandSpec::new(
        phase,
        Poly::from_real(&[0.0, 1.0]),
        Endpoint::Finite(Complex64::new(0.0, 0.0)),
        Endpoint::InfiniteRay(-PI / 10.0),
    )?;
    let factor = 2.0 * s * s * Complex64::from_polar(1.0, q.phi);
    Ok(Evaluation::from_quad(integrate(&spec, tol)?, factor))
}

/// `I₊ + I₋`, the split representation of `A` for `S > 0`.
pub fn eval_split(s: f64, n: f64, gamma: f64, tol: f64) -> Result<Evaluation, WaveError> {
    Ok(eval_i_plus(s, n, gamma, tol)?.add(eval_i_minus(s, n, gamma, tol)?))
}

/// Carrier field `−2 e^{ikx} Ã₃₂(k^{1/5} x, k^{3/5} y)`.
pub fn cartesian_field(x: f64, y: f64, k: f64, gamma: f64, tol: f64) -> Result<Evaluation, WaveError> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(WaveError::InvalidArgument(format!("k must be positive, got {k}")));
    }
    let inner = eval_a32(k.powf(0.2) * x, k.powf(0.6) * y, gamma, tol)?;
    let factor = -2.0 * Complex64::from_polar(1.0, k * x);
    Ok(Evaluation {
        value: inner.value * factor,
        error_estimate: 2.0 * inner.error_estimate,
        converged: inner.converged,
    })
}
