//! Probability that `G(l, p)` is internally spanned, next to the lower and upper bounds.

use graph_bootstrap::montecarlo::estimate_spanning_prob;

fn main() -> graph_bootstrap::Result<()> {
    for l in 3..=6 {
        for scale in [1.0, 0.5] {
            let p = scale / (l * l) as f64;
            let s = estimate_spanning_prob(l, p, 50_000, 8)?;
            println!(
                "l={l} p={p:.4}: {:.2e} [{:.2e}, {:.2e}]  bounds [{:.2e}, {:.2e}]  consistent: {}",
                s.estimate.point,
                s.estimate.ci_low,
                s.estimate.ci_high,
                s.lower_bound,
                s.upper_bound,
                s.consistent_with_bounds()
            );
        }
    }
    Ok(())
}
