//! The modulated-carrier field −2e^{ikx} Ã₃₂(k^{1/5}x, k^{3/5}y) at k = 40.
//! Prints a coarse ASCII map of its modulus.
//!
//!     cargo run --release --example field_cartesian

use inflecta::wavefield::{grid_eval, AxisSpec, FieldMode, Frame, DEFAULT_GRID_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (gamma, k) = (4.0 / 9.0, 40.0);
    let x = AxisSpec::new(-1.0, 2.0, 61);
    let y = AxisSpec::new(-0.6, 0.3, 19);
    let grid = grid_eval(Frame::Cartesian, x, y, gamma, FieldMode::Cartesian { k }, DEFAULT_GRID_TOL, 1)?;
    // Rows of the map are y (top = largest), columns are x.
    let peak = grid.samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    for j in (0..y.count).rev() {
        let row: String = (0..x.count)
            .map(|i| {
                let v = grid.get(i, j).norm() / peak;
                shades[((v * 9.0).round() as usize).min(9)]
            })
            .collect();
        println!("{:>6.2} |{row}|", y.value(j));
    }
    println!("peak |field| = {peak:.4}");
    Ok(())
}
