//! |A(S, N)| on a coarse (S, N) grid, written as CSV to stdout.
//!
//!     cargo run --release --example field_sn > field.csv

use inflecta::wavefield::{grid_eval, AxisSpec, FieldMode, Frame, DEFAULT_GRID_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma = 4.0 / 9.0;
    let s = AxisSpec::new(-10.0, 10.0, 41);
    let n = AxisSpec::new(-20.0, 60.0, 41);
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let grid = grid_eval(Frame::Sn, s, n, gamma, FieldMode::A, DEFAULT_GRID_TOL, jobs)?;
    eprintln!("{} samples, {} unconverged", grid.samples.len(), grid.unconverged.len());
    grid.write_csv(std::io::stdout().lock())?;
    Ok(())
}
