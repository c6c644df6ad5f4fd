//! A(S, N) by the three independent routes: the quintic contour integral,
//! the split I₊ + I₋ (S > 0 only) and the direct λ-integral.
//!
//!     cargo run --release --example compare_routes -- [S] [N]

use inflecta::wavefield::{eval_a, eval_a_direct_lambda, eval_split, LambdaOracleOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (s, n) = (args.first().copied().unwrap_or(2.0), args.get(1).copied().unwrap_or(1.0));
    let gamma = 4.0 / 9.0;
    let a = eval_a(s, n, gamma, 1e-12)?;
    println!("contour   {:.15}  (err est {:.1e})", a.value, a.error_estimate);
    if s > 0.0 {
        let sp = eval_split(s, n, gamma, 1e-12)?;
        println!("I+ + I-   {:.15}  gap {:.1e}", sp.value, (sp.value - a.value).norm() / a.value.norm());
    }
    let l = eval_a_direct_lambda(s, n, gamma, &LambdaOracleOptions::default())?;
    println!(
        "lambda    {:.15}  gap {:.1e}  (err est {:.1e})",
        l.value,
        (l.value - a.value).norm() / a.value.norm(),
        l.error_estimate()
    );
    Ok(())
}
