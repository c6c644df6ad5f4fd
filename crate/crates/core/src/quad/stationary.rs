use num_complex::Complex64;

use super::{PolyPhase, QuadError};
use crate::poly::{aberth_roots, Poly};

/// A root of `g'` together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub point: Complex64,
    pub multiplicity: usize,
}

const MAX_ROOT_ITERATIONS: usize = 500;

/// Roots of `g'`, with numerically coalesced roots merged into a single
/// point of higher multiplicity. Sorted by real part, then imaginary part.
pub fn find_stationary_points(phase: &PolyPhase) -> Result<Vec<StationaryPoint>, QuadError> {
    let dg = phase.poly().derivative();
    if dg.degree() == 0 {
        return Ok(Vec::new());
    }
    let report = aberth_roots(&dg, MAX_ROOT_ITERATIONS);
    if !report.converged {
        return Err(QuadError::RootFinding { best_residual: report.max_residual });
    }
    let scale = dg.root_bound().max(f64::MIN_POSITIVE);
    let mut points = coalesce(&report.roots, scale);
    for sp in points.iter_mut().filter(|sp| sp.multiplicity == 1) {
        sp.point = newton_polish(&dg, sp.point);
    }
    points.sort_by(|a, b| {
        a.point
            .re
            .total_cmp(&b.point.re)
            .then(a.point.im.total_cmp(&b.point.im))
    });
    Ok(points)
}

/// Agglomerative clustering: two groups merge when their closest members sit
/// within `10 ε^{1/m} · scale`, `m` being the merged multiplicity.
fn coalesce(roots: &[Complex64], scale: f64) -> Vec<StationaryPoint> {
    let mut groups: Vec<Vec<Complex64>> = roots.iter().map(|&r| vec![r]).collect();
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let dist = groups[i]
                    .iter()
                    .flat_map(|a| groups[j].iter().map(move |b| (a - b).norm()))
                    .fold(f64::INFINITY, f64::min);
                let m = (groups[i].len() + groups[j].len()) as f64;
                let threshold = 10.0 * f64::EPSILON.powf(1.0 / m) * scale;
                if dist <= threshold && best.is_none_or(|(_, _, d)| dist < d) {
                    best = Some((i, j, dist));
                }
            }
        }
        match best {
            Some((i, j, _)) => {
                let merged = groups.remove(j);
                groups[i].extend(merged);
            }
            None => break,
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let n = g.len();
            let mean = g.iter().sum::<Complex64>() / n as f64;
            StationaryPoint { point: mean, multiplicity: n }
        })
        .collect()
}

fn newton_polish(p: &Poly, mut z: Complex64) -> Complex64 {
    for _ in 0..4 {
        let (v, dv) = p.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    z
}
