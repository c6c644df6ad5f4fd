//! Steepest-descent path tracing.
//!
//! A descent path from `t0` is the curve on which `ωg(t) = ωg(t0) + ip`
//! for increasing `p ≥ 0`, so that `|e^{iωg}|` falls off like `e^{-p}`. It
//! solves `dt/dp = i / (ωg'(t))`, integrated here with an embedded
//! Dormand–Prince 5(4) pair and re-projected onto the level curve by Newton
//! iteration after every step.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::nsd::{build_balls, Ball};
use super::{find_stationary_points, nearest_valley, PolyPhase, QuadError};
use crate::poly::Poly;

const RK_TOL: f64 = 1e-12;
/// Leading-term dominance at which the path is handed to the ray continuation.
const FAR_DOMINANCE: f64 = 1e4;
/// Weaker dominance that suffices to classify the valley once the path has
/// passed every `p` the quadrature will ever ask for.
const CLASSIFY_DOMINANCE: f64 = 10.0;

/// How a traced path ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathEnd {
    /// Escaped to infinity inside the decay sector with this index.
    Valley(usize),
    /// Entered obstacle `index` (a stationary-point ball) at parameter `p`.
    Obstacle { index: usize, p: f64 },
    /// Reached the caller's `p` cap first.
    Cap,
}

/// Limits for a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceBudget {
    pub max_steps: usize,
    /// Stop once `p` exceeds this value.
    pub p_cap: f64,
}

impl Default for TraceBudget {
    fn default() -> Self {
        Self { max_steps: 20_000, p_cap: f64::INFINITY }
    }
}

/// `ωg` and its derivative, plus the data needed for far-field continuation.
#[derive(Debug, Clone)]
pub(crate) struct ScaledPhase {
    pub wg: Poly,
    pub wdg: Poly,
    degree: usize,
    abs_coeffs: Vec<f64>,
}

impl ScaledPhase {
    pub fn new(phase: &PolyPhase) -> Self {
        let wg = phase.poly().scale(Complex64::new(phase.omega(), 0.0));
        let wdg = wg.derivative();
        let abs_coeffs = wg.coeffs().iter().map(|c| c.norm()).collect();
        Self { degree: wg.degree(), wg, wdg, abs_coeffs }
    }

    /// Ratio of the leading term to the sum of all others at radius `r`.
    pub fn dominance(&self, r: f64) -> f64 {
        let d = self.degree;
        // The constant term does not shape the level curves.
        let lower: f64 = (1..d).map(|k| self.abs_coeffs[k] * r.powi(k as i32)).sum();
        let lead = self.abs_coeffs[d] * r.powi(d as i32);
        if lead == 0.0 {
            0.0
        } else if lower == 0.0 {
            f64::INFINITY
        } else {
            lead / lower
        }
    }

    fn velocity(&self, t: Complex64) -> Complex64 {
        Complex64::new(0.0, 1.0) / self.wdg.eval(t)
    }

    /// Newton projection onto `ωg(t) = target`.
    fn project(&self, mut t: Complex64, target: Complex64) -> Complex64 {
        for _ in 0..8 {
            let (v, dv) = self.wg.eval_with_derivative(t);
            let step = (v - target) / dv;
            if !step.is_finite() {
                break;
            }
            t -= step;
            if step.norm() <= 4.0 * f64::EPSILON * t.norm().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        t
    }

    /// One Dormand–Prince step; returns the fifth-order value and the error estimate.
    fn dp_step(&self, t: Complex64, h: f64) -> (Complex64, f64) {
        let f = |z: Complex64| self.velocity(z);
        let k1 = f(t);
        let k2 = f(t + h * (k1 * (1.0 / 5.0)));
        let k3 = f(t + h * (k1 * (3.0 / 40.0) + k2 * (9.0 / 40.0)));
        let k4 = f(t + h * (k1 * (44.0 / 45.0) - k2 * (56.0 / 15.0) + k3 * (32.0 / 9.0)));
        let k5 = f(t + h
            * (k1 * (19372.0 / 6561.0) - k2 * (25360.0 / 2187.0) + k3 * (64448.0 / 6561.0)
                - k4 * (212.0 / 729.0)));
        let k6 = f(t + h
            * (k1 * (9017.0 / 3168.0) - k2 * (355.0 / 33.0)
                + k3 * (46732.0 / 5247.0)
                + k4 * (49.0 / 176.0)
                - k5 * (5103.0 / 18656.0)));
        let y5 = t + h
            * (k1 * (35.0 / 384.0) + k3 * (500.0 / 1113.0) + k4 * (125.0 / 192.0)
                - k5 * (2187.0 / 6784.0)
                + k6 * (11.0 / 84.0));
        let k7 = f(y5);
        let y4 = t + h
            * (k1 * (5179.0 / 57600.0) + k3 * (7571.0 / 16695.0) + k4 * (393.0 / 640.0)
                - k5 * (92097.0 / 339200.0)
                + k6 * (187.0 / 2100.0)
                + k7 * (1.0 / 40.0));
        (y5, (y5 - y4).norm())
    }
}

/// Local start data for a path leaving a stationary point.
#[derive(Debug, Clone, Copy, PartialEq)]
struct LocalStart {
    /// `|a|` of the leading Taylor term `a (t - ξ)^k` of `ωg`.
    coeff: f64,
    order: i32,
    angle: f64,
}

/// A traced steepest-descent path.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentPath {
    start: Complex64,
    start_value: Complex64,
    knots: Vec<(f64, Complex64)>,
    end: PathEnd,
    local: Option<LocalStart>,
}

impl DescentPath {
    pub fn start(&self) -> Complex64 {
        self.start
    }

    /// Accepted integration points `(p, t(p))`, increasing in `p`.
    pub fn knots(&self) -> &[(f64, Complex64)] {
        &self.knots
    }

    pub fn end(&self) -> PathEnd {
        self.end
    }

    /// Largest parameter on the path, or `None` for paths reaching a valley.
    pub fn p_end(&self) -> Option<f64> {
        match self.end {
            PathEnd::Valley(_) => None,
            PathEnd::Obstacle { p, .. } => Some(p),
            PathEnd::Cap => self.knots.last().map(|k| k.0),
        }
    }

    /// `ωg(t0)`.
    pub(crate) fn start_value(&self) -> Complex64 {
        self.start_value
    }

    /// Point `t(p)` on the path.
    pub(crate) fn point_at(&self, sp: &ScaledPhase, p: f64) -> Complex64 {
        let target = self.start_value + Complex64::new(0.0, p);
        if p <= 0.0 {
            return self.start;
        }
        let idx = self.knots.partition_point(|k| k.0 <= p).saturating_sub(1);
        let (pk, tk) = self.knots[idx];
        if idx == 0 {
            if let Some(local) = self.local {
                let r = (p / local.coeff).powf(1.0 / local.order as f64);
                let guess = self.start + Complex64::from_polar(r, local.angle);
                return sp.project(guess, target);
            }
        }
        if idx + 1 == self.knots.len() && matches!(self.end, PathEnd::Valley(_)) {
            let c0 = sp.wg.coeffs()[0];
            let ratio = (target - c0) / (sp.wg.eval(tk) - c0);
            let guess = tk * ratio.powf(1.0 / sp.degree as f64);
            return sp.project(guess, target);
        }
        let h = p - pk;
        if h == 0.0 {
            return tk;
        }
        let (t, _) = sp.dp_step(tk, h);
        sp.project(t, target)
    }
}

/// Circular region the tracer must not enter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Obstacle {
    pub center: Complex64,
    pub radius: f64,
}

/// Parameters of one trace.
pub(crate) struct TraceRequest<'a> {
    pub start: Complex64,
    pub obstacles: &'a [Obstacle],
    pub budget: TraceBudget,
    /// Largest `p` at which the path will be evaluated.
    pub p_needed: f64,
    /// Length scale for the absolute part of the step tolerance.
    pub length_scale: f64,
}

pub(crate) fn trace(
    phase: &PolyPhase,
    sp: &ScaledPhase,
    req: &TraceRequest<'_>,
) -> Result<DescentPath, QuadError> {
    let start_value = sp.wg.eval(req.start);
    let path = DescentPath {
        start: req.start,
        start_value,
        knots: vec![(0.0, req.start)],
        end: PathEnd::Cap,
        local: None,
    };
    continue_trace(phase, sp, req, path)
}

fn continue_trace(
    phase: &PolyPhase,
    sp: &ScaledPhase,
    req: &TraceRequest<'_>,
    mut path: DescentPath,
) -> Result<DescentPath, QuadError> {
    let (mut p, mut t) = *path.knots.last().expect("path has a first knot");
    let mut h = {
        let speed = sp.velocity(t).norm();
        (0.05 * req.length_scale.max(t.norm() * 1e-3) / speed).min(0.05)
    };
    for _ in 0..req.budget.max_steps {
        if p >= req.budget.p_cap {
            path.end = PathEnd::Cap;
            return Ok(path);
        }
        let dom = sp.dominance(t.norm());
        if dom >= FAR_DOMINANCE || (dom >= CLASSIFY_DOMINANCE && p >= req.p_needed) {
            path.end = PathEnd::Valley(nearest_valley(phase, t.arg()));
            return Ok(path);
        }

        // Keep steps short near obstacles so none is jumped over.
        let speed = sp.velocity(t).norm();
        if !speed.is_finite() {
            return Err(QuadError::NonFinite);
        }
        // A floor of a small fraction of the radius lets a path that grazes a
        // boundary step inside, where the crossing is then bisected.
        let clearance = req
            .obstacles
            .iter()
            .map(|o| ((t - o.center).norm() - o.radius).max(1e-3 * o.radius))
            .fold(f64::INFINITY, f64::min);
        let mut h_try = h;
        if clearance.is_finite() {
            h_try = h_try.min(0.3 * clearance / speed);
        }
        h_try = h_try.min(req.budget.p_cap - p).max(f64::MIN_POSITIVE);

        let (t_new, err) = sp.dp_step(t, h_try);
        let scale = RK_TOL * t.norm().max(req.length_scale);
        if !t_new.is_finite() {
            h *= 0.25;
            continue;
        }
        if err > scale {
            let factor = 0.9 * (scale / err).powf(0.2);
            h = h_try * factor.clamp(0.1, 0.9);
            continue;
        }
        let p_new = p + h_try;
        let t_new = sp.project(t_new, path.start_value + Complex64::new(0.0, p_new));

        if let Some(index) = req
            .obstacles
            .iter()
            .position(|o| (t_new - o.center).norm() < o.radius)
        {
            let (p_hit, t_hit) = locate_entry(sp, &path, p, t, p_new, req.obstacles[index]);
            path.knots.push((p_hit, t_hit));
            path.end = PathEnd::Obstacle { index, p: p_hit };
            return Ok(path);
        }

        path.knots.push((p_new, t_new));
        p = p_new;
        t = t_new;
        let grow = if err == 0.0 { 5.0 } else { (0.9 * (scale / err).powf(0.2)).clamp(0.2, 5.0) };
        h = h_try * grow;
    }
    Err(QuadError::PathBudget { at: t })
}

/// Bisection for the parameter at which the path crosses an obstacle boundary.
fn locate_entry(
    sp: &ScaledPhase,
    path: &DescentPath,
    p_lo: f64,
    t_lo: Complex64,
    p_hi: f64,
    obstacle: Obstacle,
) -> (f64, Complex64) {
    let inside = |t: Complex64| (t - obstacle.center).norm() < obstacle.radius;
    let eval = |p: f64| {
        let (t, _) = sp.dp_step(t_lo, p - p_lo);
        sp.project(t, path.start_value + Complex64::new(0.0, p))
    };
    let (mut a, mut b) = (p_lo, p_hi);
    let mut tb = eval(b);
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        let tm = eval(mid);
        if inside(tm) {
            b = mid;
            tb = tm;
        } else {
            a = mid;
        }
        if b - a <= 4.0 * f64::EPSILON * b.abs() {
            break;
        }
    }
    (b, tb)
}

/// Steepest-descent paths leaving `start`: one path from a regular point, or
/// `m + 1` paths from a stationary point of multiplicity `m`.
///
/// Paths stop at `budget.p_cap`, on reaching the far field of a decay sector,
/// or fail with [`QuadError::ClusterEncountered`] when they run into the
/// coalescence disc of another stationary cluster.
pub fn trace_descent_paths(
    phase: &PolyPhase,
    start: Complex64,
    budget: TraceBudget,
) -> Result<Vec<DescentPath>, QuadError> {
    let sp = ScaledPhase::new(phase);
    let stationary = find_stationary_points(phase)?;
    let balls = build_balls(phase, &stationary, super::nsd::DEFAULT_BALL_LEVEL);
    let own = balls.iter().position(|b: &Ball| b.contains(start));
    let obstacles: Vec<Obstacle> = balls
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != own)
        .map(|(_, b)| Obstacle { center: b.center, radius: b.radius })
        .collect();
    let length_scale = balls.iter().map(|b| b.radius).fold(f64::INFINITY, f64::min);
    let length_scale = if length_scale.is_finite() { length_scale } else { 1.0 };
    let p_needed = if budget.p_cap.is_finite() { budget.p_cap } else { 0.0 };

    // Local Taylor expansion of ωg about the start.
    let shifted = sp.wg.shifted(start);
    let coeff_scale = shifted.coefficient_scale().max(f64::MIN_POSITIVE);
    let order = (1..=shifted.degree())
        .find(|&k| shifted.coeffs()[k].norm() > 1e-12 * coeff_scale)
        .unwrap_or(1);

    let mut starts = Vec::new();
    if order == 1 {
        starts.push(DescentPath {
            start,
            start_value: sp.wg.eval(start),
            knots: vec![(0.0, start)],
            end: PathEnd::Cap,
            local: None,
        });
    } else {
        let a = shifted.coeffs()[order];
        let k = order as f64;
        // i a e^{ikφ} real negative  ⇔  kφ + arg a = π/2 + 2πj
        for j in 0..order {
            let angle = (PI / 2.0 - a.arg() + 2.0 * PI * j as f64) / k;
            let local = LocalStart { coeff: a.norm(), order: order as i32, angle };
            let mut path = DescentPath {
                start,
                start_value: sp.wg.eval(start),
                knots: vec![(0.0, start)],
                end: PathEnd::Cap,
                local: Some(local),
            };
            let p1 = 1e-6;
            let t1 = path.point_at(&sp, p1);
            path.knots.push((p1, t1));
            starts.push(path);
        }
    }

    let req = TraceRequest { start, obstacles: &obstacles, budget, p_needed, length_scale };
    let mut out = Vec::with_capacity(starts.len());
    for path in starts {
        let traced = continue_trace(phase, &sp, &req, path)?;
        if let PathEnd::Obstacle { index, p } = traced.end {
            return Err(QuadError::ClusterEncountered { center: obstacles[index].center, p });
        }
        out.push(traced);
    }
    Ok(out)
}
