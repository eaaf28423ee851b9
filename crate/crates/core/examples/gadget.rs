//! Rooted gadgets `H_d`: the root is infected in round exactly `d`, and no seed edge is redundant.

use graph_bootstrap::engine::close_kr;
use graph_bootstrap::pattern::{build_gadget, complete_pattern};

fn main() -> graph_bootstrap::Result<()> {
    for r in 4..=6 {
        let h = complete_pattern(r)?;
        for d in [1, 3, 6] {
            let gd = build_gadget(&h, d)?;
            let (_, trace) = close_kr(&gd.graph, r)?;
            println!(
                "K{r} d={d}: v={} e={} root {} infected in round {:?}",
                gd.graph.vertex_count(),
                gd.graph.edge_count(),
                gd.root,
                trace.infection_round(gd.root)
            );
        }
    }
    let gd = build_gadget(&complete_pattern(4)?, 3)?;
    let essential = gd
        .graph
        .edges()
        .into_iter()
        .filter(|&e| !close_kr(&gd.graph.without_edge(e), 4).map(|(c, _)| c.contains_edge(gd.root)).unwrap_or(true))
        .count();
    println!("K4 d=3: {essential} of {} seed edges are needed for the root", gd.graph.edge_count());
    Ok(())
}
