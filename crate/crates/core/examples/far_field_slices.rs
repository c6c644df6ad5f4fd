//! |A| after the inflection point against the regime forms, as a function
//! of K̂ = N/S − γS²/3 at S = 5, 10 and 20.
//!
//!     cargo run --release --example far_field_slices

use inflecta::asymptotics::asymptotic_estimate;
use inflecta::wavefield::eval_a;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma = 4.0 / 9.0;
    for s in [5.0f64, 10.0, 20.0] {
        println!("S = {s}");
        println!("{:>6} {:>12} {:>12} {:>13} {:>8}", "K̂", "|A|", "asymptotic", "regime", "rel");
        for i in 0..=16 {
            let khat = -4.0 + 0.5 * i as f64;
            let n = s * khat + gamma * s.powi(3) / 3.0;
            let a = eval_a(s, n, gamma, 1e-10)?.value.norm();
            let est = asymptotic_estimate(s, n, gamma)?;
            let m = est.magnitude();
            println!("{khat:>6.2} {a:>12.5e} {m:>12.5e} {:>13} {:>8.4}", est.regime.tag(), (a - m).abs() / m);
        }
    }
    Ok(())
}
