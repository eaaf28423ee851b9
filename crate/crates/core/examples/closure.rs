//! Closure of a small seed graph under several patterns, with the round-by-round trace.

use graph_bootstrap::engine::{close, Rule};
use graph_bootstrap::graph::SimpleGraph;

fn main() -> graph_bootstrap::Result<()> {
    // a "fan": vertex 0 joined to the path 1-2-3-4-5
    let g = SimpleGraph::parse_edge_list("n=6\n0 1\n0 2\n0 3\n0 4\n0 5\n1 2\n2 3\n3 4\n4 5\n")?;
    for name in ["K3", "K4", "C4", "K2,3"] {
        let rule = Rule::named(name)?;
        let (c, trace) = close(&g, &rule)?;
        println!(
            "{name}: {} -> {} edges in {} rounds, percolates: {}",
            g.edge_count(),
            c.edge_count(),
            trace.round_count(),
            c.is_complete()
        );
        for (t, round) in trace.rounds.iter().enumerate() {
            let edges: Vec<String> = round.iter().map(|ev| format!("{} via {:?}", ev.edge, ev.witness)).collect();
            println!("  round {}: {}", t + 1, edges.join(", "));
        }
    }
    Ok(())
}
