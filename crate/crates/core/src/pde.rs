//! Crank–Nicolson marching of `A_NN + 2iA_S + 4γNS·A = 0` in `S`, and
//! finite-difference residuals of the two wave equations.
//!
//! The march is an independent check on the integral representations: it
//! starts from a sampled line `A(S_start, ·)` and is compared downstream.

use num_complex::Complex64;
use thiserror::Error;

use crate::wavefield::{grid_eval, AxisSpec, FieldGrid, FieldMode, Frame, WaveError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PdeError {
    #[error("invalid march configuration: {0}")]
    InvalidConfig(String),
    #[error("tridiagonal solve broke down at step {step}")]
    Breakdown { step: usize },
    #[error(transparent)]
    Wave(#[from] WaveError),
}

/// Lattice and sponge for a march.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarchConfig {
    pub s_start: f64,
    pub s_end: f64,
    pub n_min: f64,
    pub n_max: f64,
    pub ds: f64,
    pub dn: f64,
    /// Width of the absorbing layer at each `N` boundary.
    pub sponge_width: f64,
    /// Peak damping rate `σ_max` of the quartic sponge.
    pub sponge_strength: f64,
    pub gamma: f64,
}

/// Peak sponge rate. A Gaussian of unit width and momentum 5 sent into the
/// layer comes back below 1e-4 in amplitude (see the sponge tests).
pub const DEFAULT_SPONGE_STRENGTH: f64 = 40.0;

impl MarchConfig {
    /// `S ∈ [−8, 8]`, `N ∈ [−100, 80]`, `dN = 0.02`, `dS = 0.0005`.
    ///
    /// Rays reaching `S = 8` with `|N| ≤ 40` leave `S = −8` from
    /// `N ≈ −55 … −25`, so the domain reaches well below the comparison
    /// window. The potential `2γNS` reaches a few hundred near the corners,
    /// and `dS` is small enough that `V dS` stays well below one.
    pub fn default_lattice(gamma: f64) -> Self {
        let (n_min, n_max) = (-100.0, 80.0);
        Self {
            s_start: -8.0,
            s_end: 8.0,
            n_min,
            n_max,
            ds: 0.0005,
            dn: 0.02,
            sponge_width: 0.15 * (n_max - n_min),
            sponge_strength: DEFAULT_SPONGE_STRENGTH,
            gamma,
        }
    }

    /// Same domain with `dS` and `dN` divided by `factor`.
    pub fn refined(&self, factor: f64) -> Self {
        Self { ds: self.ds / factor, dn: self.dn / factor, ..*self }
    }

    pub fn validate(&self) -> Result<(), PdeError> {
        let bad = |m: String| Err(PdeError::InvalidConfig(m));
        let all = [self.s_start, self.s_end, self.n_min, self.n_max, self.ds, self.dn];
        if !all.iter().all(|v| v.is_finite()) {
            return bad("non-finite parameter".into());
        }
        if !(self.s_end > self.s_start) {
            return bad(format!("S_end = {} must exceed S_start = {}", self.s_end, self.s_start));
        }
        if !(self.n_max > self.n_min) {
            return bad("empty N domain".into());
        }
        if !(self.ds > 0.0 && self.dn > 0.0) {
            return bad("steps must be positive".into());
        }
        if !(self.sponge_width >= 0.0 && self.sponge_width < 0.25 * (self.n_max - self.n_min)) {
            return bad(format!("sponge width {} must lie in [0, (N_max − N_min)/4)", self.sponge_width));
        }
        if !(self.sponge_strength >= 0.0 && self.sponge_strength.is_finite()) {
            return bad("sponge strength must be nonnegative".into());
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must be nonnegative, got {}", self.gamma));
        }
        if self.n_points() < 3 {
            return bad("fewer than three N points".into());
        }
        Ok(())
    }

    /// Number of lattice points in `N`, both ends included.
    pub fn n_points(&self) -> usize {
        ((self.n_max - self.n_min) / self.dn).round() as usize + 1
    }

    pub fn n_axis(&self) -> AxisSpec {
        AxisSpec::new(self.n_min, self.n_max, self.n_points())
    }

    /// Number of `S` steps; `dS` is shrunk slightly so they fit exactly.
    pub fn s_steps(&self) -> usize {
        ((self.s_end - self.s_start) / self.ds).ceil().max(1.0) as usize
    }

    /// Quartic ramp `σ_max ((d − w)/w)⁴` inside the layer, `d` the distance
    /// to the nearest boundary; zero in the interior.
    pub fn sponge_rate(&self, n: f64) -> f64 {
        let w = self.sponge_width;
        if w <= 0.0 {
            return 0.0;
        }
        let d = (n - self.n_min).min(self.n_max - n);
        if d >= w {
            0.0
        } else {
            let r = (w - d.max(0.0)) / w;
            self.sponge_strength * r.powi(4)
        }
    }

    /// Whether `n` lies outside both sponges.
    pub fn is_interior(&self, n: f64) -> bool {
        n >= self.n_min + self.sponge_width && n <= self.n_max - self.sponge_width
    }
}

/// Samples `A(S_start, ·)` on the configuration's `N` lattice.
pub fn initial_line(cfg: &MarchConfig, tol: f64, jobs: usize) -> Result<Vec<Complex64>, PdeError> {
    cfg.validate()?;
    let s = AxisSpec::new(cfg.s_start, cfg.s_start, 1);
    let grid = grid_eval(Frame::Sn, s, cfg.n_axis(), cfg.gamma, FieldMode::A, tol, jobs)?;
    Ok(grid.samples)
}

/// Initial line for `cfg.refined(2.0)`, reusing the samples of `coarse`
/// (taken on `cfg`'s lattice) and evaluating only the new midpoints.
pub fn refine_initial_line(
    cfg: &MarchConfig,
    coarse: &[Complex64],
    tol: f64,
    jobs: usize,
) -> Result<(MarchConfig, Vec<Complex64>), PdeError> {
    cfg.validate()?;
    if coarse.len() != cfg.n_points() {
        return Err(PdeError::InvalidConfig("coarse line does not match its lattice".into()));
    }
    let fine = cfg.refined(2.0);
    let np = coarse.len();
    let mids = AxisSpec::new(cfg.n_min + 0.5 * cfg.dn, cfg.n_max - 0.5 * cfg.dn, np - 1);
    let s = AxisSpec::new(cfg.s_start, cfg.s_start, 1);
    let mid = grid_eval(Frame::Sn, s, mids, cfg.gamma, FieldMode::A, tol, jobs)?.samples;
    let mut line = Vec::with_capacity(2 * np - 1);
    for j in 0..np {
        line.push(coarse[j]);
        if j + 1 < np {
            line.push(mid[j]);
        }
    }
    debug_assert_eq!(line.len(), fine.n_points());
    Ok((fine, line))
}

/// Largest relative deviation of `|A|` on the last line of a march from
/// `reference(N)`, over the lattice points of `[n_lo, n_hi]` taken every
/// `stride` points. Returns the deviation and where it occurs.
pub fn max_relative_deviation<F>(
    cfg: &MarchConfig,
    grid: &FieldGrid,
    n_lo: f64,
    n_hi: f64,
    stride: usize,
    reference: F,
) -> Result<(f64, f64), PdeError>
where
    F: Fn(f64) -> Result<f64, PdeError>,
{
    let last = grid.axis1.count - 1;
    let axis = cfg.n_axis();
    let mut worst = (0.0, f64::NAN);
    for j in (0..axis.count).step_by(stride.max(1)) {
        let n = axis.value(j);
        if n < n_lo || n > n_hi {
            continue;
        }
        let want = reference(n)?;
        let rel = (grid.get(last, j).norm() - want).abs() / want;
        if !(rel <= worst.0) {
            worst = (rel, n);
        }
    }
    Ok(worst)
}

/// Solves a tridiagonal system in place. `sub[0]` and `sup[n-1]` are ignored.
fn thomas(sub: &[Complex64], diag: &[Complex64], sup: &[Complex64], rhs: &mut [Complex64], scratch: &mut [Complex64]) -> bool {
    let n = diag.len();
    let mut beta = diag[0];
    if beta.norm() == 0.0 {
        return false;
    }
    rhs[0] /= beta;
    for i in 1..n {
        scratch[i] = sup[i - 1] / beta;
        beta = diag[i] - sub[i] * scratch[i];
        if beta.norm() == 0.0 || !beta.is_finite() {
            return false;
        }
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        let next = rhs[i + 1];
        rhs[i] -= scratch[i + 1] * next;
    }
    true
}

/// Marches `initial` from `S_start` to `S_end` and keeps `lines` equally
/// spaced `S`-lines (at least the first and last).
///
/// Each step solves `(1 + i dS/2 H) Aⁿ⁺¹ = (1 − i dS/2 H) Aⁿ` with
/// `H = −½∂²_N − 2γN S_{n+1/2}` and zero values beyond the lattice, then
/// multiplies by `exp(−σ(N) dS)`.
pub fn march_popov(cfg: &MarchConfig, initial: &[Complex64], lines: usize) -> Result<FieldGrid, PdeError> {
    let gamma = cfg.gamma;
    let mut grid = cn_march(cfg, initial, lines, |n, s| -2.0 * gamma * n * s)?;
    grid.frame = Frame::Sn;
    Ok(grid)
}

/// Marches `Ã_YY + 2iÃ_X = 0` in `X`, reading the configuration's `S` and
/// `N` fields as `X` and `Y`.
///
/// With `A = −2e^{iΦ} Ã(S, N − γS³/3)` this is the same evolution in a frame
/// that follows the tangent line, where the field carries far less
/// transverse momentum than in `(S, N)`.
pub fn march_parabolic(cfg: &MarchConfig, initial: &[Complex64], lines: usize) -> Result<FieldGrid, PdeError> {
    let mut grid = cn_march(cfg, initial, lines, |_, _| 0.0)?;
    grid.frame = Frame::Xy;
    Ok(grid)
}

/// Crank–Nicolson for `iu_s = −½u_nn + V(n, s)u` with the potential taken at
/// the half step.
fn cn_march<V>(cfg: &MarchConfig, initial: &[Complex64], lines: usize, potential: V) -> Result<FieldGrid, PdeError>
where
    V: Fn(f64, f64) -> f64,
{
    cfg.validate()?;
    let np = cfg.n_points();
    if initial.len() != np {
        return Err(PdeError::InvalidConfig(format!(
            "initial line has {} samples, lattice has {np}",
            initial.len()
        )));
    }
    let lines = lines.max(2);
    let stride = cfg.s_steps().div_ceil(lines - 1);
    let steps = stride * (lines - 1);
    let ds = (cfg.s_end - cfg.s_start) / steps as f64;
    let n_axis = cfg.n_axis();
    let ns = n_axis.values();
    let damp: Vec<f64> = ns.iter().map(|&n| (-cfg.sponge_rate(n) * ds).exp()).collect();

    let zero = Complex64::new(0.0, 0.0);
    let half = Complex64::i() * (0.5 * ds);
    let kin = 0.5 / (cfg.dn * cfg.dn);
    // H has off-diagonal −kin and diagonal 2 kin + V.
    let off = half * (-kin);
    let sub = vec![off; np];
    let sup = vec![off; np];
    let mut diag = vec![zero; np];
    let mut rhs = vec![zero; np];
    let mut scratch = vec![zero; np];
    let mut u = initial.to_vec();

    let mut samples = Vec::with_capacity(lines * np);
    samples.extend_from_slice(&u);
    for step in 0..steps {
        let s_half = cfg.s_start + (step as f64 + 0.5) * ds;
        for j in 0..np {
            let h_diag = 2.0 * kin + potential(ns[j], s_half);
            let left = if j > 0 { u[j - 1] } else { zero };
            let right = if j + 1 < np { u[j + 1] } else { zero };
            rhs[j] = u[j] - half * (h_diag * u[j] - kin * (left + right));
            diag[j] = 1.0 + half * h_diag;
        }
        if !thomas(&sub, &diag, &sup, &mut rhs, &mut scratch) {
            return Err(PdeError::Breakdown { step });
        }
        for j in 0..np {
            u[j] = rhs[j] * damp[j];
        }
        if (step + 1) % stride == 0 {
            samples.extend_from_slice(&u);
        }
    }
    Ok(FieldGrid {
        frame: Frame::Sn,
        axis1: AxisSpec::new(cfg.s_start, cfg.s_end, lines),
        axis2: n_axis,
        gamma: cfg.gamma,
        k: None,
        samples,
        unconverged: Vec::new(),
    })
}

/// Discrete `L²` norm `(Σ|u|² dN)^{1/2}` over the lattice points with `keep(N)`.
pub fn l2_norm(cfg: &MarchConfig, line: &[Complex64], keep: impl Fn(f64) -> bool) -> f64 {
    let axis = cfg.n_axis();
    let sum: f64 = line
        .iter()
        .enumerate()
        .filter(|(j, _)| keep(axis.value(*j)))
        .map(|(_, v)| v.norm_sqr())
        .sum();
    (sum * cfg.dn).sqrt()
}

/// Central-difference residual of `A_NN + 2iA_S + 4γNS·A` at `(S, N)`.
pub fn residual_popov<F>(f: F, s: f64, n: f64, gamma: f64, h: f64) -> Complex64
where
    F: Fn(f64, f64) -> Complex64,
{
    let a = f(s, n);
    let a_nn = (f(s, n + h) - 2.0 * a + f(s, n - h)) / (h * h);
    let a_s = (f(s + h, n) - f(s - h, n)) / (2.0 * h);
    a_nn + 2.0 * Complex64::i() * a_s + 4.0 * gamma * n * s * a
}

/// Central-difference residual of `Ã_YY + 2iÃ_X` at `(X, Y)`.
pub fn residual_pwe<F>(f: F, x: f64, y: f64, h: f64) -> Complex64
where
    F: Fn(f64, f64) -> Complex64,
{
    let a = f(x, y);
    let a_yy = (f(x, y + h) - 2.0 * a + f(x, y - h)) / (h * h);
    let a_x = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
    a_yy + 2.0 * Complex64::i() * a_x
}
