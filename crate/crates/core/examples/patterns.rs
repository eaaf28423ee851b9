//! Pattern statistics: lambda, balancedness, lambda*, weak saturation and threshold windows.

use graph_bootstrap::pattern::{
    is_balanced, kr_threshold_window, lambda, lambda_star, named_pattern, wsat_bound,
};

fn main() -> graph_bootstrap::Result<()> {
    for name in ["K4", "K5", "K6", "C5", "K2,3", "DD3", "DD4"] {
        let h = named_pattern(name)?;
        let lam = lambda(&h).map(|l| l.to_string()).unwrap_or_else(|_| "-".into());
        let balanced = is_balanced(&h).map(|b| b.to_string()).unwrap_or_else(|_| "-".into());
        println!(
            "{name:<5} v={} e={:<2} lambda={lam:<5} balanced={balanced:<5} lambda*={}",
            h.vertex_count(),
            h.edge_count(),
            lambda_star(&h)?
        );
    }
    for (n, r) in [(1000, 4), (1_000_000, 4), (10_000, 5)] {
        let (lo, hi) = kr_threshold_window(n, r)?;
        println!("n={n} r={r}: wsat={} window [{lo:.3e}, {hi:.3e}]", wsat_bound(n, r)?);
    }
    Ok(())
}
