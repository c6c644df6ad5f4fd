//! The closed-form asymptotic pieces on their own: the bright-side root τ₀,
//! the stationary-point term of I₊, the far dark-side end-point term of I₋
//! and the Fresnel-layer form.
//!
//!     cargo run --release --example asymptotic_forms

use inflecta::asymptotics::{asym_fresnel, asym_iminus_far, asym_iplus_bright, tau0};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (gamma, s) = (4.0 / 9.0, 10.0f64);
    for k in [-0.05, -0.5, -2.0] {
        let n = s.powi(3) * (k + gamma / 3.0);
        println!("K = {k:>5}: τ₀ = {:.12}  I₊ ~ {:.6}", tau0(k, gamma)?, asym_iplus_bright(s, n, gamma)?);
    }
    for k in [0.5, 2.0] {
        let n = s.powi(3) * (k + gamma / 3.0);
        println!("K = {k:>5}: I₋ end-point term {:.6e}", asym_iminus_far(s, n, gamma)?);
    }
    for kbar in [-1.0, 0.0, 1.0] {
        let n = gamma * s.powi(3) / 3.0 + kbar * s.sqrt();
        println!("K̄ = {kbar:>4}: Fresnel-layer form {:.6}", asym_fresnel(s, n, gamma)?);
    }
    Ok(())
}
