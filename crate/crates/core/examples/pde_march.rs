//! Crank–Nicolson march of A_NN + 2iA_S + 4γNS·A = 0 from an integral-
//! evaluated line, compared with the integral downstream.
//!
//! By default this runs a short march S = −2 → 2 on a small lattice, which
//! takes seconds; pass `full` for the S = −8 → 8 default lattice (minutes).
//!
//!     cargo run --release --example pde_march [full]

use inflecta::pde::{initial_line, march_popov, max_relative_deviation, MarchConfig};
use inflecta::wavefield::eval_a;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma = 4.0 / 9.0;
    let full = std::env::args().any(|a| a == "full");
    let (cfg, window) = if full {
        (MarchConfig::default_lattice(gamma), (-40.0, 40.0))
    } else {
        let (n_min, n_max) = (-40.0, 30.0);
        let cfg = MarchConfig {
            s_start: -2.0,
            s_end: 2.0,
            n_min,
            n_max,
            sponge_width: 0.15 * (n_max - n_min),
            ..MarchConfig::default_lattice(gamma)
        };
        (cfg, (-10.0, 2.0))
    };
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let t0 = std::time::Instant::now();
    let init = initial_line(&cfg, 1e-10, jobs)?;
    println!("initial line: {} points in {:.1?}", init.len(), t0.elapsed());
    let grid = march_popov(&cfg, &init, 5)?;
    println!("march: {} steps in {:.1?}", cfg.s_steps(), t0.elapsed());
    let (dev, at) = max_relative_deviation(&cfg, &grid, window.0, window.1, 50, |n| {
        Ok(eval_a(cfg.s_end, n, gamma, 1e-10)?.value.norm())
    })?;
    println!("max relative |A| deviation at S = {}: {dev:.3e} (N = {at})", cfg.s_end);
    Ok(())
}
