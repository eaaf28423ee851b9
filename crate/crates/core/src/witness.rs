//! Witness sets `F(e)` and the red-edge bookkeeping for `K_r` closures.
//!
//! Infection order and clique choice are the engine's canonical ones: rounds in
//! order, edges lexicographic within a round, and the lexicographically least
//! completing clique.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::engine::{close_kr, InfectionTrace};
use crate::error::{Error, Result};
use crate::graph::{Edge, SimpleGraph};
use crate::pattern::{lambda_clique, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSet {
    pub target: Edge,
    pub edges: Vec<Edge>,
    /// Vertices touched by `edges`, together with the endpoints of `target`.
    pub vertex_count: usize,
    pub edge_count: usize,
}

/// `ell_t` (components of the clique graph) and `k_t = sum_v (c_t(v) - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub components: usize,
    pub k: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RedEdgeTrace {
    pub target: Edge,
    pub r: usize,
    pub cliques: Vec<Vec<usize>>,
    pub red: Vec<Edge>,
    pub b_graphs: Vec<Vec<Edge>>,
    /// `v(B_t)`, counted as the vertices of `K^(1) ∪ ... ∪ K^(t)`.
    pub b_vertex_counts: Vec<usize>,
    pub component_stats: Vec<ComponentStats>,
}

impl RedEdgeTrace {
    pub fn steps(&self) -> usize {
        self.red.len()
    }
}

fn check_r(r: usize) -> Result<()> {
    if r < 4 {
        return Err(Error::Domain(format!("witness tracing needs r >= 4, got {r}")));
    }
    Ok(())
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn clique_edges(vs: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    vs.iter()
        .enumerate()
        .flat_map(move |(i, &a)| vs[i + 1..].iter().map(move |&b| Edge::new(a, b)))
}

/// A `K_r` closure of a fixed seed graph with memoised witness sets.
pub struct Witnesses {
    seed: SimpleGraph,
    r: usize,
    closure: SimpleGraph,
    trace: InfectionTrace,
    memo: HashMap<Edge, Rc<BTreeSet<Edge>>>,
}

impl Witnesses {
    pub fn new(g: &SimpleGraph, r: usize) -> Result<Self> {
        check_r(r)?;
        let (closure, trace) = close_kr(g, r)?;
        Ok(Witnesses {
            seed: g.clone(),
            r,
            closure,
            trace,
            memo: HashMap::new(),
        })
    }

    pub fn closure(&self) -> &SimpleGraph {
        &self.closure
    }

    pub fn trace(&self) -> &InfectionTrace {
        &self.trace
    }

    fn check_infected(&self, e: Edge) -> Result<()> {
        let n = self.seed.vertex_count();
        if e.v() >= n {
            return Err(Error::InvalidInput(format!("edge {e} is out of range for n={n}")));
        }
        if !self.closure.contains_edge(e) {
            return Err(Error::NotInfected(e.to_string()));
        }
        Ok(())
    }

    fn f_set(&mut self, e: Edge) -> Rc<BTreeSet<Edge>> {
        if let Some(s) = self.memo.get(&e) {
            return s.clone();
        }
        let set = if self.seed.contains_edge(e) {
            BTreeSet::from([e])
        } else {
            let clique = self.trace.event(e).expect("infected edge has an event").witness.clone();
            let mut s = BTreeSet::new();
            for f in clique_edges(&clique) {
                if f != e {
                    s.extend(self.f_set(f).iter().copied());
                }
            }
            s
        };
        let rc = Rc::new(set);
        self.memo.insert(e, rc.clone());
        rc
    }

    pub fn witness_set(&mut self, e: Edge) -> Result<WitnessSet> {
        self.check_infected(e)?;
        let f = self.f_set(e);
        let mut verts: BTreeSet<usize> = BTreeSet::from([e.u(), e.v()]);
        for x in f.iter() {
            verts.insert(x.u());
            verts.insert(x.v());
        }
        Ok(WitnessSet {
            target: e,
            edges: f.iter().copied().collect(),
            vertex_count: verts.len(),
            edge_count: f.len(),
        })
    }

    pub fn red_edge_trace(&mut self, e: Edge) -> Result<RedEdgeTrace> {
        self.check_infected(e)?;
        if self.seed.contains_edge(e) {
            return Err(Error::TrivialWitness(e.to_string()));
        }
        let target = self.f_set(e);
        let last = self.trace.position(e).expect("infected");
        let order: Vec<(Edge, Vec<usize>)> = self
            .trace
            .order()
            .take(last + 1)
            .map(|ev| (ev.edge, ev.witness.clone()))
            .collect();
        let mut cliques = Vec::new();
        let mut red = Vec::new();
        for (f, clique) in order {
            if self.f_set(f).is_subset(&target) {
                cliques.push(clique);
                red.push(f);
            }
        }
        let n = self.seed.vertex_count();
        let m = red.len();
        let mut covered: BTreeSet<Edge> = BTreeSet::new();
        let mut red_so_far: BTreeSet<Edge> = BTreeSet::new();
        let mut in_vertices = vec![false; n];
        let mut vertex_total = 0;
        let mut parent: Vec<usize> = Vec::with_capacity(m);
        let mut b_graphs = Vec::with_capacity(m);
        let mut b_vertex_counts = Vec::with_capacity(m);
        let mut component_stats = Vec::with_capacity(m);
        for t in 0..m {
            covered.extend(clique_edges(&cliques[t]));
            red_so_far.insert(red[t]);
            for &v in &cliques[t] {
                if !in_vertices[v] {
                    in_vertices[v] = true;
                    vertex_total += 1;
                }
            }
            b_graphs.push(covered.difference(&red_so_far).copied().collect::<Vec<_>>());
            b_vertex_counts.push(vertex_total);

            parent.push(t);
            for s in 0..t {
                let shared = cliques[s].iter().filter(|v| cliques[t].contains(v)).count();
                if shared >= 2 {
                    let (a, b) = (find(&mut parent, s), find(&mut parent, t));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
            let mut roots_at: HashMap<usize, BTreeSet<usize>> = HashMap::new();
            let mut roots = BTreeSet::new();
            for s in 0..=t {
                let root = find(&mut parent, s);
                roots.insert(root);
                for &v in &cliques[s] {
                    roots_at.entry(v).or_default().insert(root);
                }
            }
            let k = roots_at.values().map(|c| c.len() - 1).sum();
            component_stats.push(ComponentStats {
                components: roots.len(),
                k,
            });
        }
        Ok(RedEdgeTrace {
            target: e,
            r: self.r,
            cliques,
            red,
            b_graphs,
            b_vertex_counts,
            component_stats,
        })
    }

    /// Walks down from `e` towards the child with the largest witness set until
    /// `e(F(f)) <= binom(r,2) * l`.
    pub fn scale_scan(&mut self, e: Edge, l: usize) -> Result<Option<Edge>> {
        self.check_infected(e)?;
        if l == 0 {
            return Err(Error::Domain("scale must be at least 1".into()));
        }
        let cap = binom2(self.r) * l;
        let mut f = e;
        let mut size = self.f_set(f).len();
        if size < cap {
            return Ok(None);
        }
        while size > cap {
            let clique = self.trace.event(f).expect("non-seed edge").witness.clone();
            let mut best: Option<(usize, Edge)> = None;
            for c in clique_edges(&clique) {
                if c == f {
                    continue;
                }
                let s = self.f_set(c).len();
                if best.map_or(true, |(bs, _)| s > bs) {
                    best = Some((s, c));
                }
            }
            let (s, c) = best.expect("clique has other edges");
            f = c;
            size = s;
        }
        Ok(Some(f))
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub fn witness_set(g: &SimpleGraph, r: usize, e: Edge) -> Result<WitnessSet> {
    Witnesses::new(g, r)?.witness_set(e)
}

pub fn red_edge_trace(g: &SimpleGraph, r: usize, e: Edge) -> Result<RedEdgeTrace> {
    Witnesses::new(g, r)?.red_edge_trace(e)
}

pub fn witness_scale_scan(g: &SimpleGraph, r: usize, e: Edge, l: usize) -> Result<Option<Edge>> {
    Witnesses::new(g, r)?.scale_scan(e, l)
}

/// `e(F) >= lambda(r) (v(F) - 2) + 1`.
pub fn check_extremal(w: &WitnessSet, r: usize) -> Result<bool> {
    let lam = lambda_clique(r)?;
    let rhs = lam * Rational::from_integer(w.vertex_count as i64 - 2) + Rational::from_integer(1);
    Ok(Rational::from_integer(w.edge_count as i64) >= rhs)
}

/// `e(B_t) >= lambda(r) (v(B_t) + k_t - ell_t r) + ell_t (binom(r,2) - 1)` at step `t` (1-based).
pub fn check_tech(trace: &RedEdgeTrace, r: usize, t: usize) -> Result<bool> {
    if t == 0 || t > trace.steps() {
        return Err(Error::Domain(format!("step {t} outside 1..={}", trace.steps())));
    }
    let lam = lambda_clique(r)?;
    let stats = trace.component_stats[t - 1];
    let ell = stats.components as i64;
    let v = trace.b_vertex_counts[t - 1] as i64;
    let e = trace.b_graphs[t - 1].len() as i64;
    let rhs = lam * Rational::from_integer(v + stats.k as i64 - ell * r as i64)
        + Rational::from_integer(ell * (binom2(r) as i64 - 1));
    Ok(Rational::from_integer(e) >= rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{build_gadget, complete_pattern};

    #[test]
    fn seed_edge_witness() {
        let g = SimpleGraph::complete(4).without_edge(Edge::new(2, 3));
        let w = witness_set(&g, 4, Edge::new(0, 1)).unwrap();
        assert_eq!(w.edges, vec![Edge::new(0, 1)]);
        assert!(matches!(red_edge_trace(&g, 4, Edge::new(0, 1)), Err(Error::TrivialWitness(_))));
    }

    #[test]
    fn k4_minus_edge() {
        let g = SimpleGraph::complete(4).without_edge(Edge::new(2, 3));
        let e = Edge::new(2, 3);
        let w = witness_set(&g, 4, e).unwrap();
        assert_eq!((w.vertex_count, w.edge_count), (4, 5));
        assert!(check_extremal(&w, 4).unwrap());
        let tr = red_edge_trace(&g, 4, e).unwrap();
        assert_eq!(tr.steps(), 1);
        assert_eq!(tr.b_vertex_counts[0], 4);
        assert_eq!(tr.b_graphs[0].len(), 5);
        assert_eq!(tr.component_stats[0], ComponentStats { components: 1, k: 0 });
        assert!(check_tech(&tr, 4, 1).unwrap());
        assert!(check_tech(&tr, 4, 2).is_err());
    }

    #[test]
    fn not_infected() {
        let g = SimpleGraph::parse_edge_list("n=5\n0 1\n1 2").unwrap();
        assert!(matches!(witness_set(&g, 4, Edge::new(3, 4)), Err(Error::NotInfected(_))));
    }

    #[test]
    fn gadget_witness() {
        let gd = build_gadget(&complete_pattern(4).unwrap(), 2).unwrap();
        let w = witness_set(&gd.graph, 4, gd.root).unwrap();
        assert_eq!((w.vertex_count, w.edge_count), (6, 9));
        let gd = build_gadget(&complete_pattern(5).unwrap(), 2).unwrap();
        let tr = red_edge_trace(&gd.graph, 5, gd.root).unwrap();
        assert_eq!(tr.steps(), 2);
        assert_eq!(*tr.b_graphs.last().unwrap(), gd.graph.edges());
    }

    #[test]
    fn scale_scan_on_long_gadget() {
        let gd = build_gadget(&complete_pattern(4).unwrap(), 10).unwrap();
        let f = witness_scale_scan(&gd.graph, 4, gd.root, 3).unwrap().unwrap();
        let w = witness_set(&gd.graph, 4, f).unwrap();
        assert!((3..=18).contains(&w.edge_count));
        assert_eq!(witness_set(&gd.graph, 4, gd.root).unwrap().edge_count, 41);
        assert_eq!(witness_scale_scan(&gd.graph, 4, gd.root, 7).unwrap(), None);
    }

    #[test]
    fn path_violates_extremal() {
        let w = WitnessSet {
            target: Edge::new(0, 3),
            edges: vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3)],
            vertex_count: 4,
            edge_count: 3,
        };
        assert!(!check_extremal(&w, 4).unwrap());
    }
}
