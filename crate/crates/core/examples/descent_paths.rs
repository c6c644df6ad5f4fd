//! Stationary points and steepest-descent paths of the quintic phase
//! −Yt² − Xt⁴/2 + ct⁵ that defines Ã₃₂(X, Y).
//!
//!     cargo run --release --example descent_paths -- [X] [Y]

use inflecta::quad::{find_stationary_points, trace_descent_paths, PathEnd, PolyPhase, TraceBudget};
use inflecta::wavefield::quintic_coefficient;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (x, y) = (args.first().copied().unwrap_or(2.0), args.get(1).copied().unwrap_or(-1.0));
    let c = quintic_coefficient(4.0 / 9.0);
    let phase = PolyPhase::from_real(&[0.0, 0.0, -y, 0.0, -x / 2.0, c], 1.0)?;

    println!("phase −({y})t² − ({x}/2)t⁴ + {c}t⁵");
    for sp in find_stationary_points(&phase)? {
        println!("stationary point {:.6} (multiplicity {})", sp.point, sp.multiplicity);
        for path in trace_descent_paths(&phase, sp.point, TraceBudget::default())? {
            let end = match path.end() {
                PathEnd::Valley(k) => format!("valley {k}"),
                PathEnd::Obstacle { index, p } => format!("ball {index} at p = {p:.3}"),
                PathEnd::Cap => "cap".to_string(),
            };
            let last = path.knots().last().map(|k| k.1).unwrap_or(path.start());
            println!("    {:>4} knots, ends near {last:.3} -> {end}", path.knots().len());
        }
    }
    Ok(())
}
