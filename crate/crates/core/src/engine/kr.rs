//! The `K_r` engine: a missing edge `xy` is infected once the common
//! neighbourhood of `x` and `y` contains an `(r-2)`-clique.

use std::collections::HashSet;

use crate::bitset::{iter_words, VertexSet};
use crate::graph::{find_clique_in, Edge, SimpleGraph};

use super::trace::{InfectionEvent, InfectionTrace};

/// Sorted vertex set of the lexicographically least `K_r` completing `xy`, if any.
pub(crate) fn clique_witness(g: &SimpleGraph, x: usize, y: usize, r: usize) -> Option<Vec<usize>> {
    let words: Vec<u64> = g.row(x).iter().zip(g.row(y)).map(|(a, b)| a & b).collect();
    let q = match r {
        2 => Vec::new(),
        3 => vec![iter_words(&words).next()?],
        4 => {
            let mut found = None;
            for a in iter_words(&words) {
                let b = g
                    .row(a)
                    .iter()
                    .zip(&words)
                    .enumerate()
                    .find_map(|(i, (ra, w))| {
                        let m = ra & w;
                        (m != 0).then(|| i * 64 + m.trailing_zeros() as usize)
                    });
                if let Some(b) = b {
                    found = Some(vec![a, b]);
                    break;
                }
            }
            found?
        }
        _ => {
            let w = VertexSet::from_words(g.vertex_count(), &words);
            find_clique_in(g, &w, r - 2)?
        }
    };
    let mut s = q;
    s.push(x);
    s.push(y);
    s.sort_unstable();
    Some(s)
}

/// Missing pairs that may have gained a completing `K_r` through the edges in `fresh`.
fn candidates(g: &SimpleGraph, fresh: &[Edge], r: usize) -> Vec<Edge> {
    let mut out: HashSet<Edge> = HashSet::new();
    for f in fresh {
        let (a, b) = f.endpoints();
        if r == 2 {
            continue;
        }
        for (x, y) in [(a, b), (b, a)] {
            // pairs (x, z) with z adjacent to y but not to x
            let row_x = g.row(x);
            for (i, (ry, rx)) in g.row(y).iter().zip(row_x).enumerate() {
                let mut m = ry & !rx;
                while m != 0 {
                    let z = i * 64 + m.trailing_zeros() as usize;
                    m &= m - 1;
                    if z != x {
                        out.insert(Edge::new(x, z));
                    }
                }
            }
        }
        if r >= 4 {
            let common: Vec<usize> =
                iter_words(&g.row(a).iter().zip(g.row(b)).map(|(p, q)| p & q).collect::<Vec<_>>())
                    .collect();
            for (i, &x) in common.iter().enumerate() {
                for &y in &common[i + 1..] {
                    if !g.has_edge(x, y) {
                        out.insert(Edge::new(x, y));
                    }
                }
            }
        }
    }
    let mut v: Vec<Edge> = out.into_iter().collect();
    v.sort_unstable();
    v
}

fn all_missing(g: &SimpleGraph) -> Vec<Edge> {
    let n = g.vertex_count();
    let mut v = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if !g.has_edge(x, y) {
                v.push(Edge::new(x, y));
            }
        }
    }
    v
}

/// Round-synchronous `K_r` closure. With `record` unset the trace is left empty.
pub(crate) fn run(g: &SimpleGraph, r: usize, record: bool) -> (SimpleGraph, InfectionTrace) {
    let mut cur = g.clone();
    let mut trace = InfectionTrace::new(if record { g.edges() } else { Vec::new() });
    let mut fresh: Option<Vec<Edge>> = None;
    loop {
        let cands = match &fresh {
            None if r == 2 => all_missing(&cur),
            None => candidates(&cur, &g.edges(), r),
            Some(f) => candidates(&cur, f, r),
        };
        let mut events = Vec::new();
        for e in cands {
            if let Some(w) = clique_witness(&cur, e.u(), e.v(), r) {
                events.push(InfectionEvent { edge: e, witness: w });
            }
        }
        if events.is_empty() {
            break;
        }
        for ev in &events {
            cur.add_edge(ev.edge.u(), ev.edge.v());
        }
        let new_edges: Vec<Edge> = events.iter().map(|ev| ev.edge).collect();
        if record {
            trace.push_round(events);
        }
        fresh = Some(new_edges);
    }
    (cur, trace)
}
