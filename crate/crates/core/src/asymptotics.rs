//! Leading-order asymptotic forms of `A(S, N)`.
//!
//! Each regime has its own closed form; nothing is blended across regime
//! boundaries, so the dispatched magnitude has kinks where the branch changes.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

use crate::poly::Poly;
use crate::special::airy_ai;
use crate::wavefield::{quintic_coefficient, regime_quantities};

/// `|K̄|` at or below which the Fresnel-layer form is used.
pub const FRESNEL_THRESHOLD: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymError {
    #[error("outside the domain of this asymptotic form: {0}")]
    Domain(String),
}

/// Asymptotic regime of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `S → −∞`: the incoming Airy field.
    Incoming,
    /// `S → +∞`, `K > 0`, `K̂ = O(1)`.
    OuterDark,
    /// `S → +∞`, `K < 0`.
    OuterBright,
    /// `S → +∞`, `K̄ = O(1)`.
    Fresnel,
    /// `S → +∞`, `S²K ≫ 1`.
    FarDark,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Regime::Incoming => "incoming",
            Regime::OuterDark => "outer-dark",
            Regime::OuterBright => "outer-bright",
            Regime::Fresnel => "fresnel",
            Regime::FarDark => "far-dark",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimateValue {
    Complex(Complex64),
    Magnitude(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate {
    pub regime: Regime,
    pub value: EstimateValue,
    pub note: &'static str,
}

impl AsymptoticEstimate {
    pub fn magnitude(&self) -> f64 {
        match self.value {
            EstimateValue::Complex(z) => z.norm(),
            EstimateValue::Magnitude(m) => m,
        }
    }
}

/// Incoming Airy field `2π(−4γS)^{1/3} Ai((−4γS)^{1/3} N)` for `S < 0`.
pub fn asym_incoming(s: f64, n: f64, gamma: f64) -> Result<f64, AsymError> {
    if !(s < 0.0) {
        return Err(AsymError::Domain(format!("incoming field needs S < 0, got {s}")));
    }
    let scale = (-4.0 * gamma * s).cbrt();
    Ok(2.0 * PI * scale * airy_ai(scale * n))
}

/// Positive root of `K + τ² + (2/(3√γ)) τ³ = 0` for `K ≤ 0`.
pub fn tau0(k: f64, gamma: f64) -> Result<f64, AsymError> {
    if !(k <= 0.0) || !(gamma > 0.0) {
        return Err(AsymError::Domain(format!("tau0 needs K <= 0 and gamma > 0, got K = {k}")));
    }
    if k == 0.0 {
        return Ok(0.0);
    }
    let b = 2.0 / (3.0 * gamma.sqrt());
    let f = |t: f64| k + t * t + b * t * t * t;
    // f is increasing and convex on τ > 0 with f(0) = K < 0, so Newton from an
    // upper bound decreases monotonically to the root. Either term alone bounds it.
    let mut t = (-k).sqrt().min((-k / b).cbrt());
    for _ in 0..200 {
        let next = t - f(t) / (2.0 * t + 3.0 * b * t * t);
        if !(next < t) {
            break;
        }
        t = next;
    }
    Ok(t)
}

/// `g(τ) = 2Kτ² + τ⁴ + (8/(15√γ)) τ⁵`.
pub fn bright_phase(k: f64, gamma: f64) -> Poly {
    Poly::from_real(&[0.0, 0.0, 2.0 * k, 0.0, 1.0, 2.0 * quintic_coefficient(gamma)])
}

fn require_positive_s(s: f64) -> Result<(), AsymError> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(AsymError::Domain(format!("needs S > 0, got {s}")))
    }
}

/// Far dark-side end-point term of `I₋`: `e^{iΦ} (i/(S³K)) (1 + i/(S⁵K²))`.
pub fn asym_iminus_far(s: f64, n: f64, gamma: f64) -> Result<Complex64, AsymError> {
    require_positive_s(s)?;
    let q = regime_quantities(s, n, gamma);
    let k = q.k.expect("S > 0");
    if k == 0.0 {
        return Err(AsymError::Domain("K = 0".into()));
    }
    let i = Complex64::new(0.0, 1.0);
    let s3k = s.powi(3) * k;
    Ok(Complex64::from_polar(1.0, q.phi) * (i / s3k) * (1.0 + i / (s.powi(5) * k * k)))
}

/// Stationary-point term of `I₊` on the bright side `K < 0`.
pub fn asym_iplus_bright(s: f64, n: f64, gamma: f64) -> Result<Complex64, AsymError> {
    require_positive_s(s)?;
    let q = regime_quantities(s, n, gamma);
    let k = q.k.expect("S > 0");
    if !(k < 0.0) {
        return Err(AsymError::Domain(format!("bright side needs K < 0, got {k}")));
    }
    let t0 = tau0(k, gamma)?;
    let s5 = s.powi(5);
    let g0 = bright_phase(k, gamma).eval(Complex64::new(t0, 0.0)).re;
    let g2 = 8.0 * t0 * t0 * (1.0 + t0 / gamma.sqrt());
    let amplitude = 2.0 * s * s * t0 * (4.0 * PI / (s5 * g2)).sqrt();
    Ok(Complex64::from_polar(amplitude, q.phi - PI / 4.0 - 0.5 * s5 * g0))
}

/// Fresnel-layer form `√(2π) S^{−1/2} e^{i(Φ + K̄²/2 − π/4)}`.
pub fn asym_fresnel(s: f64, n: f64, gamma: f64) -> Result<Complex64, AsymError> {
    require_positive_s(s)?;
    let q = regime_quantities(s, n, gamma);
    let kbar = q.kbar.expect("S > 0");
    Ok(Complex64::from_polar((2.0 * PI / s).sqrt(), q.phi + 0.5 * kbar * kbar - PI / 4.0))
}

/// Dark-side magnitude `√(2π/S) exp(−4K̂^{5/2}/(15√γ))`, `K̂ ≥ 0`.
pub fn abs_outer_dark(s: f64, khat: f64, gamma: f64) -> f64 {
    (2.0 * PI / s).sqrt() * (-quintic_coefficient(gamma) * khat.powf(2.5)).exp()
}

/// Bright-side magnitude `√(2π / (S(1 + τ₀/√γ)))`, `K ≤ 0`.
pub fn abs_outer_bright(s: f64, k: f64, gamma: f64) -> Result<f64, AsymError> {
    let t0 = tau0(k, gamma)?;
    Ok((2.0 * PI / (s * (1.0 + t0 / gamma.sqrt()))).sqrt())
}

/// Magnitude of `A` for `S > 0`, dispatched on `K̄` and the sign of `K`.
pub fn asym_abs_a(s: f64, n: f64, gamma: f64) -> Result<AsymptoticEstimate, AsymError> {
    require_positive_s(s)?;
    let q = regime_quantities(s, n, gamma);
    let (k, khat, kbar) = (q.k.expect("S > 0"), q.khat.expect("S > 0"), q.kbar.expect("S > 0"));
    let est = if kbar.abs() <= FRESNEL_THRESHOLD {
        AsymptoticEstimate {
            regime: Regime::Fresnel,
            value: EstimateValue::Magnitude((2.0 * PI / s).sqrt()),
            note: "shadow-boundary layer, |K̄| = O(1)",
        }
    } else if k > 0.0 {
        AsymptoticEstimate {
            regime: Regime::OuterDark,
            value: EstimateValue::Magnitude(abs_outer_dark(s, khat, gamma)),
            note: "dark side, K̂ = O(1); relative error O(1/S)",
        }
    } else {
        AsymptoticEstimate {
            regime: Regime::OuterBright,
            value: EstimateValue::Magnitude(abs_outer_bright(s, k, gamma)?),
            note: "bright side, needs S^{5/2} τ₀ ≫ 1",
        }
    };
    Ok(est)
}

/// Regime estimate on either side of the inflection point.
pub fn asymptotic_estimate(s: f64, n: f64, gamma: f64) -> Result<AsymptoticEstimate, AsymError> {
    if s < 0.0 {
        Ok(AsymptoticEstimate {
            regime: Regime::Incoming,
            value: EstimateValue::Magnitude(asym_incoming(s, n, gamma)?.abs()),
            note: "incoming Airy field, S → −∞",
        })
    } else {
        asym_abs_a(s, n, gamma)
    }
}
