//! The K4 clique process: merges, terminal collection and internally spanned cliques.

use graph_bootstrap::clique::{al_scan, clique_process, MergeKind};
use graph_bootstrap::graph::erdos_renyi;

fn main() -> graph_bootstrap::Result<()> {
    let g = erdos_renyi(40, 0.12, 7)?;
    let coll = clique_process(&g);
    let triangles = coll.history.iter().filter(|h| h.kind == MergeKind::Triangle).count();
    println!(
        "{} seed edges, {} merges ({} triangle merges), {} terminal cliques",
        g.edge_count(),
        coll.history.len(),
        triangles,
        coll.items.len()
    );
    let mut sizes: Vec<usize> = coll.items.iter().map(|it| it.vertices.len()).filter(|&s| s > 2).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    println!("cliques larger than an edge: {sizes:?}");
    println!("percolates: {}", coll.percolates());
    if coll.percolates() {
        for l in [2, 5, 10, 20] {
            let k = al_scan(&coll, l).expect("percolating collections have every scale");
            println!("scale {l}: internally spanned clique on {} vertices", k.len());
        }
    }
    Ok(())
}
