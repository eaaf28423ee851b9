//! Dense labeled graphs on `0..n` with bitset adjacency.

use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::bitset::{iter_words, words_for, VertexSet};
use crate::error::{Error, Result};
use crate::sampling;

/// An unordered vertex pair, normalised so that `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: u32,
    v: u32,
}

impl Edge {
    /// Builds the edge `{a, b}`. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "loop edge {a}-{a}");
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge {
            u: u as u32,
            v: v as u32,
        }
    }

    #[inline]
    pub fn u(&self) -> usize {
        self.u as usize
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.v as usize
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u(), self.v())
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u() == x || self.v() == x
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.u()) || self.touches(other.v())
    }

    /// Parses `"u,v"`.
    pub fn parse(s: &str) -> Result<Edge> {
        let mut it = s.split(',').map(|t| t.trim().parse::<usize>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) if a != b => Ok(Edge::new(a, b)),
            (Some(Ok(a)), Some(Ok(b)), None) if a == b => {
                Err(Error::InvalidInput(format!("loop edge {a},{b}")))
            }
            _ => Err(Error::InvalidInput(format!("expected an edge `u,v`, got `{s}`"))),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.u)?;
        t.serialize_element(&self.v)?;
        t.end()
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Row `u` of the adjacency matrix is a bitset of `words` 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    m: usize,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        SimpleGraph {
            n,
            words,
            adj: vec![0; n * words],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> Self {
        let mut g = SimpleGraph::new(n);
        for e in edges {
            g.add_edge(e.u(), e.v());
        }
        g
    }

    /// Inserts `{u, v}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop edge {u}-{u}");
        assert!(u < self.n && v < self.n, "edge {u}-{v} out of range for n={}", self.n);
        if self.has_edge(u, v) {
            return false;
        }
        self.adj[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1u64 << (u % 64);
        self.m += 1;
        true
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.words + v / 64] & (1u64 << (v % 64)) != 0
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u(), e.v())
    }

    /// Neighbourhood of `u` as raw words.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(u))
    }

    pub fn neighbor_iter(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_words(self.row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.neighbor_iter(u) {
                if v > u {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    /// Every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    pub fn with_edge(&self, e: Edge) -> SimpleGraph {
        let mut g = self.clone();
        g.add_edge(e.u(), e.v());
        g
    }

    /// The graph with `e` removed.
    pub fn without_edge(&self, e: Edge) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, self.edges().into_iter().filter(|&f| f != e))
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        let twice: usize = s
            .iter()
            .map(|u| {
                self.row(u)
                    .iter()
                    .zip(s.words())
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum::<usize>()
            })
            .sum();
        twice / 2
    }

    /// Vertices incident to at least one edge.
    pub fn non_isolated(&self) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.n, (0..self.n).filter(|&u| self.degree(u) > 0))
    }

    /// Parses the edge-list text format: `u v` lines, `#` comments, optional `n=<k>` header.
    pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
        let mut declared_n: Option<usize> = None;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut seen_content = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                if seen_content {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "the `n=<k>` header must come first".into(),
                    });
                }
                let k = rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad vertex count `{rest}`"),
                })?;
                declared_n = Some(k);
                seen_content = true;
                continue;
            }
            seen_content = true;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `u v`, got `{line}`"),
                });
            }
            let parse = |t: &str| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad vertex label `{t}`"),
                })
            };
            let (a, b) = (parse(toks[0])?, parse(toks[1])?);
            if a == b {
                return Err(Error::InvalidInput(format!("loop edge `{a} {b}` on line {line_no}")));
            }
            pairs.push((a, b));
        }
        let max_label = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        let n = match declared_n {
            Some(k) if k < max_label => {
                return Err(Error::InvalidInput(format!(
                    "header declares n={k} but label {} appears",
                    max_label - 1
                )))
            }
            Some(k) => k,
            None => max_label,
        };
        let mut g = SimpleGraph::new(n);
        for (a, b) in pairs {
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Serialises to the edge-list format with an `n=<k>` header and sorted lines.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for e in self.edges() {
            s.push_str(&format!("{} {}\n", e.u(), e.v()));
        }
        s
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Samples `G(n, p)`; identical `(n, p, seed)` give identical graphs.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::Domain("G(n,p) needs n >= 1".into()));
    }
    let edges = sampling::coupled_edges(n, p, seed)?;
    Ok(SimpleGraph::from_edges(n, edges))
}

pub fn is_connected(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    let mut seen = VertexSet::new(n);
    let mut frontier = vec![0usize];
    seen.insert(0);
    let mut count = 1;
    while let Some(u) = frontier.pop() {
        for v in g.neighbor_iter(u) {
            if !seen.contains(v) {
                seen.insert(v);
                count += 1;
                frontier.push(v);
            }
        }
    }
    count == n
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn components(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = VertexSet::new(n);
    let mut out = Vec::new();
    for s in 0..n {
        if seen.contains(s) {
            continue;
        }
        seen.insert(s);
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in g.neighbor_iter(u) {
                if !seen.contains(v) {
                    seen.insert(v);
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn common_neighbors(g: &SimpleGraph, u: usize, v: usize) -> Result<VertexSet> {
    if u == v {
        return Err(Error::Domain(format!("common_neighbors needs distinct vertices, got {u},{u}")));
    }
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(Error::Domain(format!("vertex out of range for n={n}")));
    }
    let mut s = g.neighbors(u);
    s.intersect_with(g.row(v));
    Ok(s)
}

/// Whether the subgraph induced on `s` contains a `k`-clique.
pub fn has_clique_in(g: &SimpleGraph, s: &VertexSet, k: usize) -> bool {
    match k {
        0 => true,
        1 => !s.is_empty(),
        2 => s.iter().any(|x| s.intersects(g.row(x))),
        _ => find_clique_in(g, s, k).is_some(),
    }
}

/// The lexicographically smallest `k`-clique (sorted ascending) inside `s`, if any.
pub fn find_clique_in(g: &SimpleGraph, s: &VertexSet, k: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(k);
    if extend_clique(g, s.clone(), k, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn extend_clique(g: &SimpleGraph, cand: VertexSet, k: usize, chosen: &mut Vec<usize>) -> bool {
    if k == 0 {
        return true;
    }
    if cand.len() < k {
        return false;
    }
    for x in cand.iter() {
        let mut next = cand.clone();
        next.intersect_with(g.row(x));
        // only larger labels, so the first hit is lexicographically least
        for y in 0..=x {
            next.remove(y);
        }
        chosen.push(x);
        if extend_clique(g, next, k - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SimpleGraph {
        SimpleGraph::parse_edge_list("0 1\n1 2").unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = path3();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), vec![Edge::new(0, 1), Edge::new(1, 2)]);

        let g = SimpleGraph::parse_edge_list("n=5\n0 1").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 1));
        assert_eq!(g.degree(3), 0);

        let g = SimpleGraph::parse_edge_list("0 1\n1 0").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn parse_comments_and_errors() {
        let g = SimpleGraph::parse_edge_list("# a triangle\n0 1 # first\n\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(matches!(
            SimpleGraph::parse_edge_list("0 1\n1 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SimpleGraph::parse_edge_list("0 1 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(SimpleGraph::parse_edge_list("3 3"), Err(Error::InvalidInput(_))));
        assert!(SimpleGraph::parse_edge_list("n=2\n0 5").is_err());
        assert_eq!(SimpleGraph::parse_edge_list("").unwrap().vertex_count(), 0);
    }

    #[test]
    fn serialise_round_trip() {
        let g = SimpleGraph::parse_edge_list("n=6\n4 1\n0 5\n2 1").unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "n=6\n0 5\n1 2\n1 4\n");
        assert_eq!(SimpleGraph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn erdos_renyi_extremes() {
        let g = erdos_renyi(4, 0.0, 7).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = erdos_renyi(4, 1.0, 7).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(matches!(erdos_renyi(4, 1.5, 7), Err(Error::Domain(_))));
        assert!(matches!(erdos_renyi(4, -0.1, 7), Err(Error::Domain(_))));
        assert!(matches!(erdos_renyi(4, f64::NAN, 7), Err(Error::Domain(_))));
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&path3()));
        assert!(!is_connected(&SimpleGraph::parse_edge_list("n=3\n0 1").unwrap()));
        let k4_minus_star = SimpleGraph::parse_edge_list("n=4\n0 1\n0 2\n1 2").unwrap();
        assert!(!is_connected(&k4_minus_star));
        assert!(is_connected(&SimpleGraph::new(0)));
        assert!(is_connected(&SimpleGraph::new(1)));
        assert_eq!(components(&k4_minus_star), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn common_neighbor_examples() {
        let k4 = SimpleGraph::complete(4);
        assert_eq!(common_neighbors(&k4, 0, 1).unwrap().iter().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(common_neighbors(&path3(), 0, 2).unwrap().iter().collect::<Vec<_>>(), vec![1]);
        let single = SimpleGraph::parse_edge_list("0 1").unwrap();
        assert!(common_neighbors(&single, 0, 1).unwrap().is_empty());
        assert!(matches!(common_neighbors(&k4, 2, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn clique_examples() {
        let k5 = SimpleGraph::complete(5);
        assert!(has_clique_in(&k5, &VertexSet::full(5), 3));
        let c5 = SimpleGraph::parse_edge_list("0 1\n1 2\n2 3\n3 4\n0 4").unwrap();
        assert!(!has_clique_in(&c5, &VertexSet::full(5), 3));
        assert!(has_clique_in(&c5, &VertexSet::new(5), 0));
        assert!(!has_clique_in(&c5, &VertexSet::new(5), 1));
        assert!(has_clique_in(&c5, &VertexSet::full(5), 2));
        assert_eq!(find_clique_in(&k5, &VertexSet::from_iter_with_capacity(5, [1, 3, 4]), 2), Some(vec![1, 3]));
    }
}
