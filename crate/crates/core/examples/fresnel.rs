//! Half-line Fresnel integrals ∫_a^∞ exp(−iv²/2) dv by steepest descent.
//! The two halves at ±a always add up to the full-line value.
//!
//!     cargo run --release --example fresnel

use inflecta::special::{fresnel_full, fresnel_halfline};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let full = fresnel_full();
    println!("full line: {full}");
    for a in [0.0, 0.5, 1.5, 3.0, 10.0] {
        let right = fresnel_halfline(a)?;
        let left = fresnel_halfline(-a)?;
        println!("a = {a:>4}: {right:.15}  sum error {:.1e}", (right + left - full).norm());
    }
    Ok(())
}
