//! Before the inflection point the field is close to the incoming Airy wave
//! 2π(−4γS)^{1/3} Ai((−4γS)^{1/3} N). Compares |A| with it along S = −10.
//!
//!     cargo run --release --example incoming_slice

use inflecta::asymptotics::asym_incoming;
use inflecta::wavefield::eval_a;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (gamma, s) = (4.0 / 9.0, -10.0);
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    println!("{:>6} {:>12} {:>12}", "N", "|A|", "|Airy|");
    for i in 0..=38 {
        let n = -10.0 + 0.5 * i as f64;
        let a = eval_a(s, n, gamma, 1e-10)?.value.norm();
        let airy = asym_incoming(s, n, gamma)?.abs();
        worst = worst.max((a - airy).abs());
        peak = peak.max(airy);
        println!("{n:>6.1} {a:>12.6} {airy:>12.6}");
    }
    println!("max deviation / peak = {:.4}", worst / peak);
    Ok(())
}
