//! K3 percolation (connectivity) at `p = (ln n + c)/n` against `exp(-exp(-c))`.

use graph_bootstrap::montecarlo::er_limit_check;

fn main() -> graph_bootstrap::Result<()> {
    for c in [-1.0, 0.0, 1.0, 2.0] {
        let r = er_limit_check(2000, c, 500, 3)?;
        println!(
            "c={c:>4}: estimate {:.3} [{:.3}, {:.3}], limit {:.4}",
            r.estimate.point, r.estimate.ci_low, r.estimate.ci_high, r.limit
        );
    }
    Ok(())
}
