#![allow(dead_code)]

use graph_bootstrap::graph::{Edge, SimpleGraph};
use graph_bootstrap::pattern::PatternGraph;

/// Whether some injective map of `h` into `g + e` uses `e` and only edges of `g + e`.
pub fn completes(g: &SimpleGraph, h: &SimpleGraph, e: Edge) -> bool {
    let k = h.vertex_count();
    let n = g.vertex_count();
    if k > n {
        return false;
    }
    let plus = g.with_edge(e);
    let h_edges = h.edges();
    let mut phi = vec![usize::MAX; k];
    let mut used = vec![false; n];
    fn rec(
        i: usize,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        plus: &SimpleGraph,
        h_edges: &[Edge],
        e: Edge,
    ) -> bool {
        let k = phi.len();
        if i == k {
            return h_edges.iter().any(|f| Edge::new(phi[f.u()], phi[f.v()]) == e);
        }
        for v in 0..plus.vertex_count() {
            if used[v] {
                continue;
            }
            phi[i] = v;
            let ok = h_edges
                .iter()
                .filter(|f| f.v() == i)
                .all(|f| plus.has_edge(phi[f.u()], v));
            if ok {
                used[v] = true;
                if rec(i + 1, phi, used, plus, h_edges, e) {
                    used[v] = false;
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    rec(0, &mut phi, &mut used, &plus, &h_edges, e)
}

/// The round-synchronous process by full rescans: every round tests every missing pair.
pub fn naive_rounds(g: &SimpleGraph, h: &PatternGraph) -> Vec<Vec<Edge>> {
    let base = h.graph();
    let mut cur = g.clone();
    let mut rounds = Vec::new();
    loop {
        let n = cur.vertex_count();
        let mut new = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let e = Edge::new(u, v);
                if !cur.has_edge(u, v) && completes(&cur, base, e) {
                    new.push(e);
                }
            }
        }
        if new.is_empty() {
            return rounds;
        }
        for &e in &new {
            cur.add_edge(e.u(), e.v());
        }
        rounds.push(new);
    }
}

pub fn naive_closure(g: &SimpleGraph, h: &PatternGraph) -> SimpleGraph {
    let mut c = g.clone();
    for e in naive_rounds(g, h).into_iter().flatten() {
        c.add_edge(e.u(), e.v());
    }
    c
}
