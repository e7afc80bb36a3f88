//! Chebyshev's ψ(s)/s and the least prime p ≡ 1 (mod 8) not dividing
//! lcm(1..s), with a fitted linear envelope in log lcm(1..s).

use vabgrowth::rfgrowth::{chebyshev_psi, fit_prime_bound};
use vabgrowth::Config;

fn main() -> vabgrowth::Result<()> {
    let config = Config::default();
    for s in [100u64, 500, 1000, 2000, 5000] {
        println!("ψ({s})/{s} = {:.4}", chebyshev_psi(s) / s as f64);
    }
    let fit = fit_prime_bound(300, 8, config.prime_search_bound)?;
    for &(s, log_lcm, p) in fit.samples.iter().step_by(50) {
        println!("s = {s:>3}: log lcm = {log_lcm:>7.2}, p = {p}");
    }
    println!(
        "p ≤ {:.3}·log lcm + {:.3}, max residual {:.3}",
        fit.a, fit.b, fit.max_residual
    );
    Ok(())
}
