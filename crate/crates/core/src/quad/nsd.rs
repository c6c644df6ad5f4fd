use num_complex::Complex64;
use std::collections::BinaryHeap;

use super::path::{trace, DescentPath, Obstacle, PathEnd, ScaledPhase, TraceBudget, TraceRequest};
use super::rules::{laguerre_cached, legendre_cached, Rule};
use super::{
    find_stationary_points, sector_index, Endpoint, IntegrandSpec, PolyPhase, QuadError,
    QuadResult, StationaryPoint,
};

/// `|ω(g(t) - g(ξ))|` on the boundary of a stationary-point ball.
pub(crate) const DEFAULT_BALL_LEVEL: f64 = 5.0;

/// Tuning knobs for [`integrate_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NsdOptions {
    /// Gauss–Laguerre nodes per infinite descent path (doubled for the error estimate).
    pub laguerre_nodes: usize,
    /// Gauss–Legendre nodes per chord or finite path panel (doubled likewise).
    pub legendre_nodes: usize,
    /// Phase excursion `|ω(g - g(ξ))|` that fixes the ball radius.
    pub ball_level: f64,
    /// Upper bound on adaptive panels per segment.
    pub max_panels: usize,
}

impl Default for NsdOptions {
    fn default() -> Self {
        Self {
            laguerre_nodes: 30,
            legendre_nodes: 40,
            ball_level: DEFAULT_BALL_LEVEL,
            max_panels: 2000,
        }
    }
}

/// Disc enclosing a cluster of stationary points.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Ball {
    pub center: Complex64,
    pub radius: f64,
    pub multiplicity: usize,
    pub n_points: usize,
}

impl Ball {
    pub fn contains(&self, t: Complex64) -> bool {
        (t - self.center).norm() <= self.radius
    }
}

/// Smallest radius at which `min_θ |ω(g(ξ + r e^{iθ}) - g(ξ))|` reaches `level`.
fn ball_radius(sp: &ScaledPhase, center: Complex64, multiplicity: usize, level: f64) -> f64 {
    let local = sp.wg.shifted(center);
    let order = multiplicity + 1;
    let lead = local
        .coeffs()
        .get(order)
        .map(|c| c.norm())
        .filter(|&c| c > 0.0)
        .unwrap_or_else(|| local.coefficient_scale().max(f64::MIN_POSITIVE));
    let n_samples = 32 * order;
    let excursion = |r: f64| {
        (0..n_samples)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n_samples as f64;
                let s = Complex64::from_polar(r, theta);
                (local.eval(s) - local.coeffs()[0]).norm()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let guess = (level / lead).powf(1.0 / order as f64);
    let (mut lo, mut hi) = (guess, guess);
    for _ in 0..200 {
        if excursion(hi) >= level {
            break;
        }
        hi *= 2.0;
    }
    for _ in 0..200 {
        if excursion(lo) < level {
            break;
        }
        lo *= 0.5;
    }
    for _ in 0..80 {
        let mid = (lo * hi).sqrt();
        if excursion(mid) >= level {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi / lo - 1.0 < 1e-6 {
            break;
        }
    }
    hi
}

/// One ball per stationary point, merged until no two overlap.
pub(crate) fn build_balls(phase: &PolyPhase, stationary: &[StationaryPoint], level: f64) -> Vec<Ball> {
    let sp = ScaledPhase::new(phase);
    // Members are (point, multiplicity, own radius).
    let mut clusters: Vec<Vec<(Complex64, usize, f64)>> = stationary
        .iter()
        .map(|s| vec![(s.point, s.multiplicity, ball_radius(&sp, s.point, s.multiplicity, level))])
        .collect();
    let summarize = |members: &[(Complex64, usize, f64)]| {
        let mult: usize = members.iter().map(|m| m.1).sum();
        let center = members.iter().map(|m| m.0 * m.1 as f64).sum::<Complex64>() / mult as f64;
        let radius = members
            .iter()
            .map(|m| (m.0 - center).norm() + m.2)
            .fold(0.0, f64::max);
        Ball { center, radius, multiplicity: mult, n_points: members.len() }
    };
    loop {
        let balls: Vec<Ball> = clusters.iter().map(|c| summarize(c)).collect();
        let mut merge = None;
        'outer: for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                if (balls[i].center - balls[j].center).norm() < balls[i].radius + balls[j].radius {
                    merge = Some((i, j));
                    break 'outer;
                }
            }
        }
        match merge {
            Some((i, j)) => {
                let moved = clusters.remove(j);
                clusters[i].extend(moved);
            }
            None => return balls,
        }
    }
}

/// Valley exits on a ball boundary: local minima of `Re(iωg)` where the
/// descent direction points outward.
fn ball_exits(sp: &ScaledPhase, ball: &Ball) -> Vec<Complex64> {
    let n = (64 * (ball.multiplicity + 1)).min(2048);
    let point = |theta: f64| ball.center + Complex64::from_polar(ball.radius, theta);
    let height = |theta: f64| -sp.wg.eval(point(theta)).im;
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let h: Vec<f64> = (0..n).map(|j| height(j as f64 * step)).collect();
    let mut exits = Vec::new();
    for j in 0..n {
        let prev = h[(j + n - 1) % n];
        let next = h[(j + 1) % n];
        if !(h[j] < prev && h[j] <= next) {
            continue;
        }
        // Golden-section refinement on the bracketing interval.
        let (mut a, mut b) = ((j as f64 - 1.0) * step, (j as f64 + 1.0) * step);
        let gr = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - gr * (b - a);
        let mut d = a + gr * (b - a);
        let (mut fc, mut fd) = (height(c), height(d));
        for _ in 0..60 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = height(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = height(d);
            }
            if (b - a).abs() < 1e-13 {
                break;
            }
        }
        let t = point(0.5 * (a + b));
        let dir = Complex64::new(0.0, 1.0) / sp.wdg.eval(t);
        if (dir * (t - ball.center).conj()).re > 0.0 {
            exits.push(t);
        }
    }
    exits
}

/// Oriented piece of the deformed contour.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Piece {
    Straight { from: Complex64, to: Complex64 },
    Descent { path: usize, reversed: bool },
}

impl Piece {
    fn reversed(self) -> Self {
        match self {
            Piece::Straight { from, to } => Piece::Straight { from: to, to: from },
            Piece::Descent { path, reversed } => Piece::Descent { path, reversed: !reversed },
        }
    }
}

#[derive(Debug, Clone)]
struct Edge {
    a: usize,
    b: usize,
    pieces: Vec<Piece>,
    height: f64,
}

/// Graph over balls, valleys, and finite endpoints.
struct Skeleton {
    n_nodes: usize,
    node_height: Vec<f64>,
    edges: Vec<Edge>,
    paths: Vec<DescentPath>,
}

const NODE_START: usize = 0;
const NODE_END: usize = 1;

fn straight_height(phase: &PolyPhase, from: Complex64, to: Complex64) -> f64 {
    (0..=8)
        .map(|k| phase.height(from + (to - from) * (k as f64 / 8.0)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Largest Gauss–Laguerre node the quadrature will request.
fn p_needed(opts: &NsdOptions) -> f64 {
    let rule = laguerre_cached(2 * opts.laguerre_nodes);
    rule.nodes.last().copied().unwrap_or(0.0).max(FALLBACK_SPLIT) + 1.0
}

/// Split point between panel quadrature and the Laguerre tail in the fallback.
const FALLBACK_SPLIT: f64 = 50.0;

#[allow(clippy::too_many_arguments)]
fn build_skeleton(
    spec: &IntegrandSpec,
    sp: &ScaledPhase,
    balls: &[Ball],
    opts: &NsdOptions,
    start_valley: Option<usize>,
    end_valley: Option<usize>,
) -> Result<Skeleton, QuadError> {
    let phase = &spec.phase;
    let d = phase.degree();
    // Node layout: start, end, balls, valleys.
    let ball_node = |i: usize| 2 + i;
    let valley_node = |j: usize| 2 + balls.len() + j;
    let n_nodes = 2 + balls.len() + d;
    let mut node_height = vec![f64::NEG_INFINITY; n_nodes];
    for (i, b) in balls.iter().enumerate() {
        node_height[ball_node(i)] = phase.height(b.center);
    }

    let length_scale = balls.iter().map(|b| b.radius).fold(f64::INFINITY, f64::min);
    let length_scale = if length_scale.is_finite() {
        length_scale
    } else {
        phase.poly().root_bound().max(1.0)
    };
    let budget = TraceBudget::default();
    let p_needed = p_needed(opts);

    let mut edges = Vec::new();
    let mut paths = Vec::new();

    let add_traced = |from_node: usize,
                          prefix: Vec<Piece>,
                          start: Complex64,
                          own_ball: Option<usize>,
                          edges: &mut Vec<Edge>,
                          paths: &mut Vec<DescentPath>|
     -> Result<(), QuadError> {
        let obstacle_ids: Vec<usize> = (0..balls.len()).filter(|&i| Some(i) != own_ball).collect();
        let obstacles: Vec<Obstacle> = obstacle_ids
            .iter()
            .map(|&i| Obstacle { center: balls[i].center, radius: balls[i].radius })
            .collect();
        let req = TraceRequest { start, obstacles: &obstacles, budget, p_needed, length_scale };
        let path = trace(phase, sp, &req)?;
        let mut height = phase.height(start);
        for piece in &prefix {
            if let Piece::Straight { from, to } = piece {
                height = height.max(straight_height(phase, *from, *to));
            }
        }
        let mut pieces = prefix;
        let path_id = paths.len();
        pieces.push(Piece::Descent { path: path_id, reversed: false });
        let to_node = match path.end() {
            PathEnd::Valley(j) => valley_node(j),
            PathEnd::Obstacle { index, .. } => {
                let target = obstacle_ids[index];
                let entry = path.knots().last().expect("entered path has knots").1;
                pieces.push(Piece::Straight { from: entry, to: balls[target].center });
                ball_node(target)
            }
            PathEnd::Cap => return Err(QuadError::PathBudget { at: path.knots().last().unwrap().1 }),
        };
        paths.push(path);
        edges.push(Edge { a: from_node, b: to_node, pieces, height });
        Ok(())
    };

    for (i, ball) in balls.iter().enumerate() {
        for exit in ball_exits(sp, ball) {
            let prefix = vec![Piece::Straight { from: ball.center, to: exit }];
            add_traced(ball_node(i), prefix, exit, Some(i), &mut edges, &mut paths)?;
        }
    }

    for (node, endpoint, valley) in [(NODE_START, spec.start, start_valley), (NODE_END, spec.end, end_valley)] {
        match endpoint {
            Endpoint::InfiniteRay(_) => {
                let j = valley.expect("valley resolved for infinite endpoint");
                edges.push(Edge { a: node, b: valley_node(j), pieces: Vec::new(), height: f64::NEG_INFINITY });
            }
            Endpoint::Finite(t) => {
                node_height[node] = phase.height(t);
                if let Some(i) = balls.iter().position(|b| b.contains(t)) {
                    let pieces = vec![Piece::Straight { from: t, to: balls[i].center }];
                    let height = straight_height(phase, t, balls[i].center);
                    edges.push(Edge { a: node, b: ball_node(i), pieces, height });
                } else {
                    add_traced(node, Vec::new(), t, None, &mut edges, &mut paths)?;
                }
            }
        }
    }

    Ok(Skeleton { n_nodes, node_height, edges, paths })
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cost {
    height: f64,
    hops: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct QueueEntry {
    cost: Cost,
    node: usize,
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Reversed: BinaryHeap is a max-heap.
        other
            .cost
            .height
            .total_cmp(&self.cost.height)
            .then(other.cost.hops.cmp(&self.cost.hops))
            .then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Route minimising the highest `Re(iωg)` met along the way, then hop count.
fn route(sk: &Skeleton) -> Option<Vec<Piece>> {
    let mut best: Vec<Option<Cost>> = vec![None; sk.n_nodes];
    let mut via: Vec<Option<(usize, bool)>> = vec![None; sk.n_nodes];
    let start_cost = Cost { height: sk.node_height[NODE_START], hops: 0 };
    best[NODE_START] = Some(start_cost);
    let mut heap = BinaryHeap::new();
    heap.push(QueueEntry { cost: start_cost, node: NODE_START });
    let better = |a: Cost, b: Option<Cost>| match b {
        None => true,
        Some(b) => a.height < b.height || (a.height == b.height && a.hops < b.hops),
    };
    while let Some(QueueEntry { cost, node }) = heap.pop() {
        if best[node] != Some(cost) {
            continue;
        }
        if node == NODE_END {
            break;
        }
        for (k, e) in sk.edges.iter().enumerate() {
            let (next, forward) = if e.a == node {
                (e.b, true)
            } else if e.b == node {
                (e.a, false)
            } else {
                continue;
            };
            let c = Cost {
                height: cost.height.max(e.height).max(sk.node_height[next]),
                hops: cost.hops + 1,
            };
            if better(c, best[next]) {
                best[next] = Some(c);
                via[next] = Some((k, forward));
                heap.push(QueueEntry { cost: c, node: next });
            }
        }
    }
    best[NODE_END]?;
    let mut pieces = Vec::new();
    let mut node = NODE_END;
    while node != NODE_START {
        let (k, forward) = via[node].expect("predecessor recorded");
        let e = &sk.edges[k];
        if forward {
            pieces.extend(e.pieces.iter().rev().copied());
            node = e.a;
        } else {
            pieces.extend(e.pieces.iter().map(|p| p.reversed()));
            node = e.b;
        }
    }
    pieces.reverse();
    Some(pieces)
}

/// Integral estimate at two orders plus the summed term magnitude.
#[derive(Debug, Clone, Copy)]
struct Estimate {
    low: Complex64,
    high: Complex64,
    magnitude: f64,
}

impl Estimate {
    fn error(&self) -> f64 {
        (self.high - self.low).norm()
    }
}

fn apply(rule: &Rule, f: &mut impl FnMut(f64) -> Complex64) -> (Complex64, f64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = w * f(x);
        sum += v;
        mag += v.norm();
    }
    (sum, mag)
}

/// Gauss–Legendre at `n` and `2n` nodes on `[a, b]` for a real-parameter integrand.
fn legendre_pair(
    f: &mut impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    n: usize,
) -> Estimate {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut g = |x: f64| f(mid + half * x) * half;
    let (low, _) = apply(legendre_cached(n), &mut g);
    let (high, magnitude) = apply(legendre_cached(2 * n), &mut g);
    Estimate { low, high, magnitude }
}

/// Adaptive bisection until each panel's two-order difference meets `abs_tol`.
fn adaptive_legendre(
    f: &mut impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    n: usize,
    abs_tol: f64,
    max_panels: usize,
) -> (Complex64, f64) {
    let mut stack = vec![(a, b, legendre_pair(f, a, b, n))];
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut panels = 1;
    let span = (b - a).abs().max(f64::MIN_POSITIVE);
    while let Some((lo, hi, est)) = stack.pop() {
        let share = abs_tol * (hi - lo).abs() / span;
        let floor = 8.0 * f64::EPSILON * est.magnitude;
        if est.error() <= share.max(floor) || panels >= max_panels {
            value += est.high;
            error += est.error();
            continue;
        }
        let mid = 0.5 * (lo + hi);
        panels += 1;
        let left = legendre_pair(f, lo, mid, n);
        let right = legendre_pair(f, mid, hi, n);
        stack.push((mid, hi, right));
        stack.push((lo, mid, left));
    }
    (value, error)
}

struct Evaluator<'a> {
    spec: &'a IntegrandSpec,
    sp: &'a ScaledPhase,
    paths: &'a [DescentPath],
    opts: &'a NsdOptions,
}

impl Evaluator<'_> {
    fn integrand(&self, t: Complex64) -> Complex64 {
        let e = Complex64::new(0.0, 1.0) * self.sp.wg.eval(t);
        self.spec.amplitude.eval(t) * e.exp()
    }

    /// Integrand in the path parameter without the `e^{-p}` factor.
    fn descent_integrand(&self, path: &DescentPath, p: f64) -> Complex64 {
        let t = path.point_at(self.sp, p);
        let dt = Complex64::new(0.0, 1.0) / self.sp.wdg.eval(t);
        let e = Complex64::new(0.0, 1.0) * path.start_value();
        self.spec.amplitude.eval(t) * dt * e.exp()
    }

    fn base(&self, piece: Piece) -> Estimate {
        let n = self.opts.legendre_nodes;
        match piece {
            Piece::Straight { from, to } => {
                let dir = to - from;
                let mut f = |s: f64| self.integrand(from + dir * s) * dir;
                legendre_pair(&mut f, 0.0, 1.0, n)
            }
            Piece::Descent { path, reversed } => {
                let path = &self.paths[path];
                let sign = if reversed { -1.0 } else { 1.0 };
                let mut est = match path.p_end() {
                    Some(p_end) => {
                        let mut f = |p: f64| self.descent_integrand(path, p) * (-p).exp();
                        legendre_pair(&mut f, 0.0, p_end, n)
                    }
                    None => {
                        let m = self.opts.laguerre_nodes;
                        let mut f = |p: f64| self.descent_integrand(path, p);
                        let (low, _) = apply(laguerre_cached(m), &mut f);
                        let (high, magnitude) = apply(laguerre_cached(2 * m), &mut f);
                        Estimate { low, high, magnitude }
                    }
                };
                est.low *= sign;
                est.high *= sign;
                est
            }
        }
    }

    fn refine(&self, piece: Piece, abs_tol: f64) -> (Complex64, f64) {
        let n = self.opts.legendre_nodes;
        let max_panels = self.opts.max_panels;
        match piece {
            Piece::Straight { from, to } => {
                let dir = to - from;
                let mut f = |s: f64| self.integrand(from + dir * s) * dir;
                adaptive_legendre(&mut f, 0.0, 1.0, n, abs_tol, max_panels)
            }
            Piece::Descent { path, reversed } => {
                let path = &self.paths[path];
                let sign = if reversed { -1.0 } else { 1.0 };
                let mut f = |p: f64| self.descent_integrand(path, p) * (-p).exp();
                let (value, error) = match path.p_end() {
                    Some(p_end) => adaptive_legendre(&mut f, 0.0, p_end, n, abs_tol, max_panels),
                    None => {
                        let (head, head_err) =
                            adaptive_legendre(&mut f, 0.0, FALLBACK_SPLIT, n, abs_tol, max_panels);
                        let m = self.opts.laguerre_nodes;
                        let mut tail_f =
                            |x: f64| self.descent_integrand(path, FALLBACK_SPLIT + x) * (-FALLBACK_SPLIT).exp();
                        let (t_low, _) = apply(laguerre_cached(m), &mut tail_f);
                        let (t_high, _) = apply(laguerre_cached(2 * m), &mut tail_f);
                        (head + t_high, head_err + (t_high - t_low).norm())
                    }
                };
                (value * sign, error)
            }
        }
    }
}

/// [`integrate_with`] using default options.
pub fn integrate(spec: &IntegrandSpec, tol: f64) -> Result<QuadResult, QuadError> {
    integrate_with(spec, tol, &NsdOptions::default())
}

/// Integrates `F(t) e^{iωg(t)}` along any contour from `spec.start` to `spec.end`.
///
/// The error estimate is the sum over contour pieces of the difference
/// between the `n`- and `2n`-node rules; pieces whose estimate is too large
/// are refined adaptively. `converged` reports `error_estimate ≤ tol |value|`.
pub fn integrate_with(spec: &IntegrandSpec, tol: f64, opts: &NsdOptions) -> Result<QuadResult, QuadError> {
    if !(tol >= 1e-13) {
        return Err(QuadError::InvalidTolerance(tol));
    }
    let phase = &spec.phase;
    let resolve = |e: Endpoint| -> Result<Option<usize>, QuadError> {
        match e {
            Endpoint::InfiniteRay(angle) => sector_index(phase, angle)
                .map(Some)
                .ok_or(QuadError::EndpointOutsideSector { angle }),
            Endpoint::Finite(t) if !t.is_finite() => Err(QuadError::InvalidIntegrand("non-finite endpoint".into())),
            Endpoint::Finite(_) => Ok(None),
        }
    };
    let start_valley = resolve(spec.start)?;
    let end_valley = resolve(spec.end)?;

    let zero = Complex64::new(0.0, 0.0);
    let trivial = |n_stationary| QuadResult {
        value: zero,
        error_estimate: 0.0,
        n_stationary,
        n_segments: 0,
        converged: true,
    };
    match (spec.start, spec.end) {
        (Endpoint::InfiniteRay(_), Endpoint::InfiniteRay(_)) if start_valley == end_valley => {
            return Ok(trivial(0));
        }
        (Endpoint::Finite(a), Endpoint::Finite(b)) if a == b => return Ok(trivial(0)),
        _ => {}
    }
    if spec.amplitude.is_zero() {
        return Ok(trivial(0));
    }

    let sp = ScaledPhase::new(phase);
    let stationary = find_stationary_points(phase)?;
    let balls = build_balls(phase, &stationary, opts.ball_level);
    let skeleton = build_skeleton(spec, &sp, &balls, opts, start_valley, end_valley)?;
    let pieces = route(&skeleton).ok_or(QuadError::NoRoute)?;
    let pieces: Vec<Piece> = pieces
        .into_iter()
        .filter(|p| !matches!(p, Piece::Straight { from, to } if from == to))
        .collect();

    let eval = Evaluator { spec, sp: &sp, paths: &skeleton.paths, opts };
    let mut estimates: Vec<(Complex64, f64)> = pieces
        .iter()
        .map(|&p| {
            let e = eval.base(p);
            (e.high, e.error())
        })
        .collect();
    let mut value: Complex64 = estimates.iter().map(|e| e.0).sum();
    if !value.is_finite() {
        return Err(QuadError::NonFinite);
    }
    let mut error: f64 = estimates.iter().map(|e| e.1).sum();
    if error > tol * value.norm() {
        let per_piece = tol * value.norm() / pieces.len().max(1) as f64;
        for (k, &piece) in pieces.iter().enumerate() {
            if estimates[k].1 > per_piece {
                let refined = eval.refine(piece, 0.5 * per_piece);
                if refined.1 < estimates[k].1 {
                    estimates[k] = refined;
                }
            }
        }
        value = estimates.iter().map(|e| e.0).sum();
        error = estimates.iter().map(|e| e.1).sum();
        if !value.is_finite() {
            return Err(QuadError::NonFinite);
        }
    }

    let used: usize = balls
        .iter()
        .filter(|b| {
            pieces.iter().any(|p| match p {
                Piece::Straight { from, to } => *from == b.center || *to == b.center,
                Piece::Descent { .. } => false,
            })
        })
        .map(|b| b.n_points)
        .sum();

    Ok(QuadResult {
        value,
        error_estimate: error,
        n_stationary: used,
        n_segments: pieces.len(),
        converged: error <= tol * value.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn airy_spec(x: f64) -> IntegrandSpec {
        let phase = PolyPhase::from_real(&[0.0, x, 0.0, 1.0 / 3.0], 1.0).unwrap();
        IntegrandSpec::new(
            phase,
            Poly::from_real(&[1.0]),
            Endpoint::InfiniteRay(5.0 * PI / 6.0),
            Endpoint::InfiniteRay(PI / 6.0),
        )
        .unwrap()
    }

    #[test]
    fn gaussian_full_line() {
        let phase = PolyPhase::from_real(&[0.0, 0.0, 0.5], 1.0).unwrap();
        let spec = IntegrandSpec::new(
            phase,
            Poly::from_real(&[1.0]),
            Endpoint::InfiniteRay(PI + 0.3),
            Endpoint::InfiniteRay(0.3),
        )
        .unwrap();
        let r = integrate(&spec, 1e-13).unwrap();
        let exact = Complex64::from_polar((2.0 * PI).sqrt(), PI / 4.0);
        assert!((r.value - exact).norm() < 1e-13, "{:?}", r);
        assert!(r.converged);
        assert_eq!(r.n_stationary, 1);
    }

    #[test]
    fn airy_at_origin() {
        let r = integrate(&airy_spec(0.0), 1e-13).unwrap();
        assert!((r.value - c(2.230_707_051_824_495_7, 0.0)).norm() < 1e-13, "{:?}", r);
    }

    #[test]
    fn airy_positive_and_negative() {
        let two_pi = 2.0 * PI;
        for (x, ai) in [
            (5.0, 1.083_444_281_360_744_2e-4),
            (-8.0, -0.052_705_050_356_386_203),
            (8.0, 4.692_207_616_099_231_6e-8),
        ] {
            let r = integrate(&airy_spec(x), 1e-12).unwrap();
            let got = r.value / two_pi;
            assert!((got - c(ai, 0.0)).norm() < 1e-12 * ai.abs().max(1e-3), "x={x} {:?}", got);
        }
    }

    #[test]
    fn quintic_prototype_at_origin() {
        let cc = 4.0 / (15.0 * (4.0f64 / 9.0).sqrt());
        let phase = PolyPhase::from_real(&[0.0, 0.0, 0.0, 0.0, 0.0, cc], 1.0).unwrap();
        let spec = IntegrandSpec::new(
            phase,
            Poly::from_real(&[0.0, 1.0]),
            Endpoint::InfiniteRay(0.9 * PI),
            Endpoint::InfiniteRay(0.5 * PI),
        )
        .unwrap();
        let r = integrate(&spec, 1e-13).unwrap();
        let exact = c(-1.157_821_009_711_956_9, 0.376_198_850_767_685_9);
        assert!((r.value - exact).norm() < 1e-12, "{:?}", r);
    }

    #[test]
    fn finite_endpoint_fresnel() {
        // ∫_0^∞ e^{i t^2 / 2} dt = √(π/2) e^{iπ/4}
        let phase = PolyPhase::from_real(&[0.0, 0.0, 0.5], 1.0).unwrap();
        let spec = IntegrandSpec::new(
            phase,
            Poly::from_real(&[1.0]),
            Endpoint::Finite(c(0.0, 0.0)),
            Endpoint::InfiniteRay(0.2),
        )
        .unwrap();
        let r = integrate(&spec, 1e-13).unwrap();
        let exact = Complex64::from_polar((PI / 2.0).sqrt(), PI / 4.0);
        assert!((r.value - exact).norm() < 1e-13, "{:?}", r);
    }

    #[test]
    fn large_omega_stays_accurate() {
        // ∫ e^{iω(t^3/3 - t)} dt = 2π ω^{-1/3} Ai(-ω^{2/3})
        let omega: f64 = 64.0;
        let phase = PolyPhase::from_real(&[0.0, -1.0, 0.0, 1.0 / 3.0], omega).unwrap();
        let spec = IntegrandSpec::new(
            phase,
            Poly::from_real(&[1.0]),
            Endpoint::InfiniteRay(5.0 * PI / 6.0),
            Endpoint::InfiniteRay(PI / 6.0),
        )
        .unwrap();
        let r = integrate(&spec, 1e-12).unwrap();
        // Ai(-16) from mpmath
        let exact = 2.0 * PI * omega.powf(-1.0 / 3.0) * -0.143_057_931_669_099_7;
        assert!((r.value - c(exact, 0.0)).norm() < 1e-11, "{:?} vs {exact}", r);
    }

    #[test]
    fn rejects_bad_endpoint_and_tolerance() {
        let mut spec = airy_spec(0.0);
        spec.end = Endpoint::InfiniteRay(PI / 2.0);
        assert!(matches!(integrate(&spec, 1e-10), Err(QuadError::EndpointOutsideSector { .. })));
        assert!(matches!(integrate(&airy_spec(0.0), 1e-15), Err(QuadError::InvalidTolerance(_))));
    }
}
