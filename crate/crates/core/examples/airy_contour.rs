//! 2πAi(x) as the contour integral ∫ exp(i(t³/3 + xt)) dt between the
//! valleys at 5π/6 and π/6, against the direct Airy implementation.
//!
//!     cargo run --release --example airy_contour

use inflecta::poly::Poly;
use inflecta::quad::{integrate, Endpoint, IntegrandSpec, PolyPhase};
use inflecta::special::airy_ai;
use std::f64::consts::PI;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>24} {:>24} {:>10} {:>3}", "x", "contour / 2π", "Ai(x)", "rel err", "sp");
    for x in [-12.0, -6.0, -2.0, 0.0, 1.0, 3.0, 6.0] {
        let phase = PolyPhase::from_real(&[0.0, x, 0.0, 1.0 / 3.0], 1.0)?;
        let spec = IntegrandSpec::new(
            phase,
            Poly::from_real(&[1.0]),
            Endpoint::InfiniteRay(5.0 * PI / 6.0),
            Endpoint::InfiniteRay(PI / 6.0),
        )?;
        let r = integrate(&spec, 1e-13)?;
        let v = r.value.re / (2.0 * PI);
        let ai = airy_ai(x);
        println!(
            "{x:>6} {v:>24.16e} {ai:>24.16e} {:>10.1e} {:>3}",
            ((v - ai) / ai).abs(),
            r.n_stationary
        );
    }
    Ok(())
}
