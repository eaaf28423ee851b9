//! Critical probability of K3 and K4 percolation by coupled bisection.
//!
//! `cargo run --release --example pc_estimate -- 2048` sets the largest `n`.

use graph_bootstrap::engine::Rule;
use graph_bootstrap::montecarlo::estimate_pc;

fn main() -> graph_bootstrap::Result<()> {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(512);
    let mut n = 128;
    while n <= max_n {
        let k3 = estimate_pc(n, &Rule::Clique(3), 200, 0.05, 1)?;
        let k4 = estimate_pc(n, &Rule::Clique(4), 200, 0.1, 1)?;
        let nf = n as f64;
        println!(
            "n={n:>5}  K3 p_c={:.5} (x n/ln n = {:.3})  K4 p_c={:.5} in [{:.5}, {:.5}] (x sqrt(n ln n) = {:.3})",
            k3.point,
            k3.point * nf / nf.ln(),
            k4.point,
            k4.p_low,
            k4.p_high,
            k4.point * (nf * nf.ln()).sqrt()
        );
        n *= 2;
    }
    Ok(())
}
