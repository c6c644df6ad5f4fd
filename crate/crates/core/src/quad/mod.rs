//! Numerical steepest descent for `∫ F(t) e^{iωg(t)} dt` with polynomial `F` and `g`.
//!
//! The integration contour is deformed onto the steepest-descent skeleton of
//! the phase: small discs ("balls") enclose every cluster of stationary
//! points, descent paths leave each disc through its valleys, and the
//! contour is assembled from straight chords inside discs plus descent
//! paths between them. Descent paths running off to infinity are integrated
//! with Gauss–Laguerre in the path parameter `p` (where the integrand is
//! `e^{-p}` times a smooth function); chords use Gauss–Legendre.

mod nsd;
mod path;
pub mod rules;
mod stationary;

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

use crate::poly::Poly;

pub use nsd::{integrate, integrate_with, NsdOptions};
pub use path::{trace_descent_paths, DescentPath, PathEnd, TraceBudget};
pub use stationary::{find_stationary_points, StationaryPoint};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid phase: {0}")]
    InvalidPhase(String),
    #[error("invalid integrand: {0}")]
    InvalidIntegrand(String),
    #[error("contour endpoint at angle {angle} is not inside a decay sector")]
    EndpointOutsideSector { angle: f64 },
    #[error("tolerance {0} is below the supported floor")]
    InvalidTolerance(f64),
    #[error("root finder did not converge (best residual {best_residual:e})")]
    RootFinding { best_residual: f64 },
    #[error("descent path ran into the stationary cluster at {center} (p = {p})")]
    ClusterEncountered { center: Complex64, p: f64 },
    #[error("descent path exceeded its step budget at t = {at}")]
    PathBudget { at: Complex64 },
    #[error("no steepest-descent route joins the contour endpoints")]
    NoRoute,
    #[error("integrand overflowed or produced a non-finite value")]
    NonFinite,
}

/// Polynomial phase `g` together with the oscillation parameter `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPhase {
    poly: Poly,
    omega: f64,
}

impl PolyPhase {
    pub fn new(coeffs: Vec<Complex64>, omega: f64) -> Result<Self, QuadError> {
        Self::from_poly(Poly::new(coeffs), omega)
    }

    pub fn from_real(coeffs: &[f64], omega: f64) -> Result<Self, QuadError> {
        Self::from_poly(Poly::from_real(coeffs), omega)
    }

    pub fn from_poly(poly: Poly, omega: f64) -> Result<Self, QuadError> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(QuadError::InvalidPhase(format!("omega must be positive, got {omega}")));
        }
        if poly.degree() < 1 {
            return Err(QuadError::InvalidPhase("phase degree must be at least 1".into()));
        }
        if poly.coeffs().iter().any(|c| !c.is_finite()) {
            return Err(QuadError::InvalidPhase("non-finite coefficient".into()));
        }
        Ok(Self { poly, omega })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// `g(t)`.
    pub fn value(&self, t: Complex64) -> Complex64 {
        self.poly.eval(t)
    }

    /// `Re(iωg(t))`, the log-magnitude of `e^{iωg(t)}`.
    pub fn height(&self, t: Complex64) -> f64 {
        -self.omega * self.poly.eval(t).im
    }
}

/// Contour endpoint: a finite point or a ray to infinity at a fixed angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Endpoint {
    Finite(Complex64),
    InfiniteRay(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegrandSpec {
    pub phase: PolyPhase,
    pub amplitude: Poly,
    pub start: Endpoint,
    pub end: Endpoint,
}

impl IntegrandSpec {
    pub fn new(
        phase: PolyPhase,
        amplitude: Poly,
        start: Endpoint,
        end: Endpoint,
    ) -> Result<Self, QuadError> {
        if !amplitude.is_zero() && amplitude.degree() >= phase.degree() {
            return Err(QuadError::InvalidIntegrand(format!(
                "amplitude degree {} must be below phase degree {}",
                amplitude.degree(),
                phase.degree()
            )));
        }
        Ok(Self { phase, amplitude, start, end })
    }
}

/// Outcome of [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub n_stationary: usize,
    pub n_segments: usize,
    /// False when the requested tolerance could not be met within the
    /// refinement budget; `value` is then the best available estimate.
    pub converged: bool,
}

/// Open angular interval `(start, end)` at infinity in which `e^{iωg}` decays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub start: f64,
    pub end: f64,
}

impl Sector {
    pub fn center(&self) -> f64 {
        0.5 * (self.start + self.end)
    }

    pub fn contains(&self, angle: f64) -> bool {
        let width = self.end - self.start;
        let offset = (angle - self.start).rem_euclid(2.0 * PI);
        offset > 0.0 && offset < width
    }
}

/// Decay sectors of `e^{iωg(t)}` as `|t| → ∞`, one per valley, in order of
/// increasing start angle from the first valley at or after `-arg(c_d)/d`.
pub fn valid_sectors(phase: &PolyPhase) -> Vec<Sector> {
    let d = phase.degree() as f64;
    let beta = phase.poly.leading().arg();
    (0..phase.degree())
        .map(|j| {
            let start = (2.0 * PI * j as f64 - beta) / d;
            Sector { start, end: start + PI / d }
        })
        .collect()
}

/// Index of the sector strictly containing `angle`, if any.
pub(crate) fn sector_index(phase: &PolyPhase, angle: f64) -> Option<usize> {
    valid_sectors(phase).iter().position(|s| s.contains(angle))
}

/// Index of the valley whose centre direction is closest to `angle`.
pub(crate) fn nearest_valley(phase: &PolyPhase, angle: f64) -> usize {
    let d = phase.degree() as f64;
    let beta = phase.poly.leading().arg();
    let j = ((d * angle + beta - PI / 2.0) / (2.0 * PI)).round();
    (j.rem_euclid(d)) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_sectors() {
        let phase = PolyPhase::from_real(&[0.0, 0.0, 1.0], 1.0).unwrap();
        let s = valid_sectors(&phase);
        assert_eq!(s.len(), 2);
        assert!((s[0].start - 0.0).abs() < 1e-15 && (s[0].end - PI / 2.0).abs() < 1e-15);
        assert!((s[1].start - PI).abs() < 1e-15 && (s[1].end - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn linear_phase_has_half_plane() {
        let phase = PolyPhase::from_real(&[0.0, 1.0], 1.0).unwrap();
        let s = valid_sectors(&phase);
        assert_eq!(s.len(), 1);
        assert!(s[0].start.abs() < 1e-15 && (s[0].end - PI).abs() < 1e-15);
    }

    #[test]
    fn quintic_sectors_follow_sin_five_theta() {
        let c = 4.0 / (15.0 * (4.0f64 / 9.0).sqrt());
        let phase = PolyPhase::from_real(&[0.0, 0.0, 0.0, 0.0, 0.0, c], 1.0).unwrap();
        let s = valid_sectors(&phase);
        assert_eq!(s.len(), 5);
        for (k, sec) in s.iter().enumerate() {
            assert!((sec.start - 2.0 * PI * k as f64 / 5.0).abs() < 1e-14);
            assert!((sec.end - (2.0 * k as f64 + 1.0) * PI / 5.0).abs() < 1e-14);
            let mid = sec.center();
            assert!((5.0 * mid).sin() > 0.0);
        }
        assert!(sector_index(&phase, 0.9 * PI).is_some());
        assert!(sector_index(&phase, 0.5 * PI).is_some());
        assert!(sector_index(&phase, 0.3 * PI).is_none());
    }

    #[test]
    fn rejects_bad_phase() {
        assert!(PolyPhase::from_real(&[1.0], 1.0).is_err());
        assert!(PolyPhase::from_real(&[0.0, 1.0], 0.0).is_err());
        assert!(PolyPhase::from_real(&[0.0, 1.0], -2.0).is_err());
    }

    #[test]
    fn amplitude_degree_is_bounded() {
        let phase = PolyPhase::from_real(&[0.0, 0.0, 1.0], 1.0).unwrap();
        let amp = Poly::from_real(&[0.0, 0.0, 1.0]);
        let r = IntegrandSpec::new(phase, amp, Endpoint::InfiniteRay(0.1), Endpoint::InfiniteRay(3.3));
        assert!(r.is_err());
    }
}
