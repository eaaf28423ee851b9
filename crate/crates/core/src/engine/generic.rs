//! Pattern engine: anchor-first backtracking over the completion templates `H - e`.

use crate::bitset::{iter_words, VertexSet};
use crate::graph::{Edge, SimpleGraph};
use crate::pattern::PatternGraph;

use super::trace::{InfectionEvent, InfectionTrace};

const UNSET: usize = usize::MAX;

struct Template {
    adj: Vec<u32>,
    anchors: (usize, usize),
}

pub(crate) struct Matcher {
    k: usize,
    templates: Vec<Template>,
}

impl Matcher {
    pub(crate) fn new(h: &PatternGraph) -> Self {
        let templates = h
            .completions()
            .iter()
            .map(|c| Template {
                adj: (0..c.template.vertex_count())
                    .map(|u| c.template.neighbor_iter(u).fold(0u32, |m, v| m | (1 << v)))
                    .collect(),
                anchors: c.anchors(),
            })
            .collect();
        Matcher {
            k: h.vertex_count(),
            templates,
        }
    }

    /// Whether some copy of `H` in `g + xy` has `xy` as its only edge outside `g`.
    pub(crate) fn completes(&self, g: &SimpleGraph, x: usize, y: usize) -> bool {
        let mut phi = vec![UNSET; self.k];
        for t in &self.templates {
            for (p, q) in [(x, y), (y, x)] {
                phi.fill(UNSET);
                phi[t.anchors.0] = p;
                phi[t.anchors.1] = q;
                if extend(g, &t.adj, &mut phi) {
                    return true;
                }
            }
        }
        false
    }

    /// Lexicographically least tuple `(phi(0), ..., phi(k-1))` over all completing embeddings.
    pub(crate) fn least_witness(&self, g: &SimpleGraph, x: usize, y: usize) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for t in &self.templates {
            for (p, q) in [(x, y), (y, x)] {
                let mut phi = vec![UNSET; self.k];
                phi[t.anchors.0] = p;
                phi[t.anchors.1] = q;
                if !extend(g, &t.adj, &mut phi.clone()) {
                    continue;
                }
                let cand = self.fill_in_order(g, &t.adj, phi, best.as_deref());
                if let Some(c) = cand {
                    if best.as_ref().map_or(true, |b| c < *b) {
                        best = Some(c);
                    }
                }
            }
        }
        best
    }

    /// Fixes pattern vertices in index order, each to the smallest feasible host vertex.
    /// Gives up once the prefix exceeds `bound`.
    fn fill_in_order(
        &self,
        g: &SimpleGraph,
        adj: &[u32],
        mut phi: Vec<usize>,
        bound: Option<&[usize]>,
    ) -> Option<Vec<usize>> {
        let n = g.vertex_count();
        let mut tight = bound.is_some();
        for i in 0..self.k {
            if phi[i] == UNSET {
                let mut chosen = None;
                for c in 0..n {
                    if tight && c > bound.unwrap()[i] {
                        return None;
                    }
                    if phi.contains(&c) || !fits(g, adj, &phi, i, c) {
                        continue;
                    }
                    phi[i] = c;
                    let mut trial = phi.clone();
                    if extend(g, adj, &mut trial) {
                        chosen = Some(c);
                        break;
                    }
                    phi[i] = UNSET;
                }
                chosen?;
            }
            if tight {
                let b = bound.unwrap()[i];
                if phi[i] > b {
                    return None;
                }
                if phi[i] < b {
                    tight = false;
                }
            }
        }
        Some(phi)
    }
}

fn fits(g: &SimpleGraph, adj: &[u32], phi: &[usize], i: usize, c: usize) -> bool {
    let mut m = adj[i];
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        m &= m - 1;
        if phi[j] != UNSET && !g.has_edge(phi[j], c) {
            return false;
        }
    }
    true
}

/// Completes the partial embedding `phi` of the template into `g`, if possible.
fn extend(g: &SimpleGraph, adj: &[u32], phi: &mut [usize]) -> bool {
    let k = phi.len();
    let mut assigned = 0u32;
    for (i, &p) in phi.iter().enumerate() {
        if p != UNSET {
            assigned |= 1 << i;
        }
    }
    if assigned.count_ones() as usize == k {
        return true;
    }
    // most constrained unassigned vertex first
    let mut next = UNSET;
    let mut best_links = 0;
    for i in 0..k {
        if assigned & (1 << i) == 0 {
            let links = (adj[i] & assigned).count_ones();
            if next == UNSET || links > best_links {
                next = i;
                best_links = links;
            }
        }
    }
    let n = g.vertex_count();
    let mut cand: Vec<u64> = if best_links == 0 {
        VertexSet::full(n).words().to_vec()
    } else {
        let mut w = vec![u64::MAX; g.row(0).len()];
        let mut m = adj[next] & assigned;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            for (a, b) in w.iter_mut().zip(g.row(phi[j])) {
                *a &= *b;
            }
        }
        w
    };
    for &p in phi.iter() {
        if p != UNSET {
            cand[p / 64] &= !(1u64 << (p % 64));
        }
    }
    let list: Vec<usize> = iter_words(&cand).collect();
    for c in list {
        phi[next] = c;
        if extend(g, adj, phi) {
            return true;
        }
    }
    phi[next] = UNSET;
    false
}

/// Vertices within distance `radius` of an endpoint of some edge in `fresh`.
fn near_vertices(g: &SimpleGraph, fresh: &[Edge], radius: usize) -> VertexSet {
    let n = g.vertex_count();
    let mut seen = VertexSet::new(n);
    let mut frontier: Vec<usize> = Vec::new();
    for e in fresh {
        for x in [e.u(), e.v()] {
            if !seen.contains(x) {
                seen.insert(x);
                frontier.push(x);
            }
        }
    }
    for _ in 0..radius {
        let mut next = Vec::new();
        for &u in &frontier {
            for v in g.neighbor_iter(u) {
                if !seen.contains(v) {
                    seen.insert(v);
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// Round-synchronous closure under `h`. With `record` unset the trace is left empty.
pub(crate) fn run(g: &SimpleGraph, h: &PatternGraph, record: bool) -> (SimpleGraph, InfectionTrace) {
    let matcher = Matcher::new(h);
    let n = g.vertex_count();
    let radius = h.vertex_count().saturating_sub(2);
    let mut cur = g.clone();
    let mut trace = InfectionTrace::new(if record { g.edges() } else { Vec::new() });
    let mut fresh: Option<Vec<Edge>> = None;
    loop {
        let near = fresh.as_ref().map(|f| near_vertices(&cur, f, radius));
        let mut events = Vec::new();
        for x in 0..n {
            let x_near = near.as_ref().map_or(true, |s| s.contains(x));
            for y in x + 1..n {
                if cur.has_edge(x, y) {
                    continue;
                }
                if !x_near && !near.as_ref().map_or(true, |s| s.contains(y)) {
                    continue;
                }
                if record {
                    if let Some(w) = matcher.least_witness(&cur, x, y) {
                        events.push(InfectionEvent { edge: Edge::new(x, y), witness: w });
                    }
                } else if matcher.completes(&cur, x, y) {
                    events.push(InfectionEvent { edge: Edge::new(x, y), witness: Vec::new() });
                }
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
