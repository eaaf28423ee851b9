//! Witness sets and red-edge traces of infected edges, checked against the extremal bounds.

use graph_bootstrap::graph::{erdos_renyi, Edge};
use graph_bootstrap::pattern::{build_gadget, complete_pattern};
use graph_bootstrap::witness::{check_extremal, check_tech, Witnesses};

fn main() -> graph_bootstrap::Result<()> {
    let gd = build_gadget(&complete_pattern(4)?, 10)?;
    let mut w = Witnesses::new(&gd.graph, 4)?;
    let f = w.witness_set(gd.root)?;
    println!("gadget root {}: e(F) = {}, v(F) = {}", gd.root, f.edge_count, f.vertex_count);
    if let Some(g) = w.scale_scan(gd.root, 3)? {
        println!("scale 3: edge {g} with e(F) = {}", w.witness_set(g)?.edge_count);
    }

    let g = erdos_renyi(12, 0.45, 2024)?;
    let mut w = Witnesses::new(&g, 4)?;
    let infected: Vec<Edge> = w.trace().order().map(|ev| ev.edge).collect();
    println!("G(12, 0.45): {} seed edges, {} infected", g.edge_count(), infected.len());
    let mut worst = None;
    for e in infected {
        let f = w.witness_set(e)?;
        let t = w.red_edge_trace(e)?;
        let ok = check_extremal(&f, 4)? && (1..=t.steps()).all(|s| check_tech(&t, 4, s).unwrap_or(false));
        assert!(ok, "bound violated at {e}");
        // slack in e(F) >= 2 (v(F) - 2) + 1
        let slack = f.edge_count as i64 - (2 * (f.vertex_count as i64 - 2) + 1);
        if worst.map_or(true, |(s, _)| slack < s) {
            worst = Some((slack, e));
        }
    }
    if let Some((slack, e)) = worst {
        println!("tightest witness: {e} with slack {slack}");
    }
    Ok(())
}
