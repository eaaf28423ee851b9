//! Pattern graphs `H`: density parameters, balancedness, the rooted gadget
//! chain `H_d`, weak-saturation constructions and threshold windows.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{is_connected, Edge, SimpleGraph};

pub type Rational = Ratio<i64>;

/// Largest pattern accepted by the exhaustive subgraph maximisations.
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 16;

/// `H - e` with the endpoints of `e` marked as anchors.
#[derive(Clone, Debug)]
pub struct Completion {
    pub removed: Edge,
    pub template: SimpleGraph,
}

impl Completion {
    pub fn anchors(&self) -> (usize, usize) {
        self.removed.endpoints()
    }
}

/// A connected pattern graph together with its per-edge completion templates.
#[derive(Clone, Debug)]
pub struct PatternGraph {
    name: String,
    base: SimpleGraph,
    completions: Vec<Completion>,
}

impl PatternGraph {
    pub fn new(base: SimpleGraph) -> Result<Self> {
        let name = format!("graph(v={},e={})", base.vertex_count(), base.edge_count());
        Self::with_name(name, base)
    }

    pub fn with_name(name: impl Into<String>, base: SimpleGraph) -> Result<Self> {
        if base.edge_count() == 0 {
            return Err(Error::InvalidInput("a pattern needs at least one edge".into()));
        }
        if !is_connected(&base) {
            return Err(Error::InvalidInput("a pattern must be connected".into()));
        }
        let completions = base
            .edges()
            .into_iter()
            .map(|e| Completion {
                removed: e,
                template: base.without_edge(e),
            })
            .collect();
        Ok(PatternGraph {
            name: name.into(),
            base,
            completions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.base
    }

    pub fn completions(&self) -> &[Completion] {
        &self.completions
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count()
    }

    /// `Some(r)` when the pattern is the complete graph `K_r`.
    pub fn clique_order(&self) -> Option<usize> {
        if self.base.is_complete() {
            Some(self.base.vertex_count())
        } else {
            None
        }
    }
}

/// `lambda(K_r) = (binom(r,2) - 2) / (r - 2)`.
pub fn lambda_clique(r: usize) -> Result<Rational> {
    if r < 3 {
        return Err(Error::Domain(format!("lambda(K_r) needs r >= 3, got {r}")));
    }
    let r = r as i64;
    Ok(Rational::new(r * (r - 1) / 2 - 2, r - 2))
}

/// `lambda(H) = (e(H) - 2) / (v(H) - 2)`.
pub fn lambda(h: &PatternGraph) -> Result<Rational> {
    let v = h.vertex_count() as i64;
    if v < 3 {
        return Err(Error::Domain(format!("lambda(H) needs v(H) >= 3, got {v}")));
    }
    Ok(Rational::new(h.edge_count() as i64 - 2, v - 2))
}

fn adjacency_masks(g: &SimpleGraph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|u| g.neighbor_iter(u).fold(0u32, |m, v| m | (1 << v)))
        .collect()
}

fn induced_edges(masks: &[u32], set: u32) -> i64 {
    let mut twice = 0u32;
    let mut rest = set;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        twice += (masks[u] & set).count_ones();
    }
    (twice / 2) as i64
}

fn check_exhaustive_size(h: &SimpleGraph) -> Result<()> {
    if h.vertex_count() > EXHAUSTIVE_VERTEX_LIMIT {
        return Err(Error::SizeLimit(format!(
            "exhaustive subgraph search supports v(H) <= {EXHAUSTIVE_VERTEX_LIMIT}, got {}",
            h.vertex_count()
        )));
    }
    Ok(())
}

/// Whether `H` satisfies `e(H) >= 2v(H) - 2` and `(e(F)-1)/(v(F)-2) <= lambda(H)`
/// for every proper subgraph `F` with at least three vertices.
///
/// All subgraphs are considered, not only induced ones. For a fixed vertex set
/// the induced subgraph has the most edges, except on the full vertex set where
/// the largest proper subgraph is `H` minus one edge.
pub fn is_balanced(h: &PatternGraph) -> Result<bool> {
    let g = h.graph();
    let v = g.vertex_count();
    if v < 4 {
        return Err(Error::Domain(format!("balancedness needs v(H) >= 4, got {v}")));
    }
    check_exhaustive_size(g)?;
    let e = g.edge_count() as i64;
    if e < 2 * v as i64 - 2 {
        return Ok(false);
    }
    let masks = adjacency_masks(g);
    let full: u32 = if v == 32 { u32::MAX } else { (1u32 << v) - 1 };
    for set in 1..=full {
        let size = set.count_ones() as i64;
        if size < 3 {
            continue;
        }
        let edges = if set == full { e - 1 } else { induced_edges(&masks, set) };
        // (edges - 1) / (size - 2) <= (e - 2) / (v - 2)
        if (edges - 1) * (v as i64 - 2) > (e - 2) * (size - 2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `max_F e(F)/v(F)` over nonempty subgraphs `F` of `g`.
pub fn max_density(g: &SimpleGraph) -> Result<Rational> {
    check_exhaustive_size(g)?;
    let v = g.vertex_count();
    if v == 0 {
        return Err(Error::Domain("density of the empty graph".into()));
    }
    let masks = adjacency_masks(g);
    let full: u32 = (1u32 << v) - 1;
    let mut best = Rational::from_integer(0);
    for set in 1..=full {
        let r = Rational::new(induced_edges(&masks, set), set.count_ones() as i64);
        if r > best {
            best = r;
        }
    }
    Ok(best)
}

/// `lambda*(H) = min_e max_{F ⊆ H - e} e(F)/v(F)`.
pub fn lambda_star(h: &PatternGraph) -> Result<Rational> {
    check_exhaustive_size(h.graph())?;
    let mut best: Option<Rational> = None;
    for c in h.completions() {
        let d = max_density(&c.template)?;
        best = Some(match best {
            Some(b) if b <= d => b,
            _ => d,
        });
    }
    best.ok_or_else(|| Error::Domain("lambda* needs e(H) >= 1".into()))
}

/// The rooted chain `H_d` built from `d` copies of `H`.
#[derive(Clone, Debug)]
pub struct GadgetResult {
    pub graph: SimpleGraph,
    pub root: Edge,
    pub depth: usize,
    /// Host vertex set `V_j` of each copy.
    pub copies: Vec<Vec<usize>>,
    /// Host images of the edge sequence `e_1, ..., e_d` (`e_1` is the root).
    pub sequence: Vec<Edge>,
}

/// The lexicographically first pair of vertex-disjoint edges of `h`.
pub fn first_disjoint_pair(h: &SimpleGraph) -> Option<(Edge, Edge)> {
    let edges = h.edges();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if !e.shares_endpoint(f) {
                return Some((*e, *f));
            }
        }
    }
    None
}

/// Chains `d` copies of `H`, gluing consecutive copies along the endpoints of
/// `e_{j+1}` and deleting `e_1` and every glued edge. The edge sequence
/// alternates between the lexicographically first disjoint pair `(e, e')`.
pub fn build_gadget(h: &PatternGraph, d: usize) -> Result<GadgetResult> {
    if d == 0 {
        return Err(Error::Domain("gadget depth must be at least 1".into()));
    }
    let base = h.graph();
    let (e_odd, e_even) = first_disjoint_pair(base).ok_or_else(|| {
        Error::UnsupportedPattern(format!("{} has no two disjoint edges", h.name()))
    })?;
    let seq = |j: usize| if j % 2 == 1 { e_odd } else { e_even };
    let v = base.vertex_count();
    let total_vertices = (v - 2) * d + 2;
    let mut graph = SimpleGraph::new(total_vertices);
    let mut copies = Vec::with_capacity(d);
    let mut sequence = Vec::with_capacity(d);
    let mut prev_map: Vec<usize> = (0..v).collect();
    let mut next_label = v;
    for j in 1..=d {
        let map: Vec<usize> = if j == 1 {
            prev_map.clone()
        } else {
            let glue = seq(j);
            (0..v)
                .map(|x| {
                    if glue.touches(x) {
                        prev_map[x]
                    } else {
                        next_label += 1;
                        next_label - 1
                    }
                })
                .collect()
        };
        let drop_here = seq(j);
        let drop_next = if j < d { Some(seq(j + 1)) } else { None };
        for e in base.edges() {
            if e == drop_here || Some(e) == drop_next {
                continue;
            }
            graph.add_edge(map[e.u()], map[e.v()]);
        }
        sequence.push(Edge::new(map[drop_here.u()], map[drop_here.v()]));
        let mut vj = map.clone();
        vj.sort_unstable();
        copies.push(vj);
        prev_map = map;
    }
    debug_assert_eq!(next_label, total_vertices);
    Ok(GadgetResult {
        graph,
        root: sequence[0],
        depth: d,
        copies,
        sequence,
    })
}

fn check_wsat_args(n: usize, r: usize) -> Result<()> {
    if r < 3 || n < r {
        return Err(Error::Domain(format!("weak saturation needs n >= r >= 3, got n={n}, r={r}")));
    }
    Ok(())
}

/// `binom(n,2) - binom(n-r+2,2)`.
pub fn wsat_bound(n: usize, r: usize) -> Result<u64> {
    check_wsat_args(n, r)?;
    let c2 = |k: usize| (k as u64) * (k as u64).saturating_sub(1) / 2;
    Ok(c2(n) - c2(n - r + 2))
}

/// All edges of `K_n` meeting `{0, ..., r-3}`.
pub fn wsat_construction(n: usize, r: usize) -> Result<SimpleGraph> {
    check_wsat_args(n, r)?;
    let core = r - 2;
    let mut g = SimpleGraph::new(n);
    for u in 0..core {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// Threshold window for `K_r`-percolation, natural logs, clamped to `[0, 1]`.
///
/// `r = 4` uses the constants `1/4` and `24` around `(n ln n)^{-1/2}`; `r >= 5`
/// uses `n^{-1/lambda(r)}` divided and multiplied by `ln n` (the unknown lower
/// constant is taken as 1, so the low end is only an order-of-magnitude guide).
pub fn kr_threshold_window(n: usize, r: usize) -> Result<(f64, f64)> {
    if r < 4 {
        return Err(Error::Domain(format!("threshold window needs r >= 4, got {r}")));
    }
    if n < 3 {
        return Err(Error::Domain(format!("threshold window needs n >= 3, got {n}")));
    }
    let nf = n as f64;
    let ln = nf.ln();
    let (low, high) = if r == 4 {
        let s = (nf * ln).sqrt();
        (0.25 / s, 24.0 / s)
    } else {
        let lam = lambda_clique(r)?;
        let lam = *lam.numer() as f64 / *lam.denom() as f64;
        let base = nf.powf(-1.0 / lam);
        (base / ln, base * ln)
    };
    Ok((low.clamp(0.0, 1.0), high.clamp(0.0, 1.0)))
}

fn parse_count(s: &str, what: &str, name: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::Parse { line: 1, msg: format!("bad {what} in pattern name `{name}`") })
}

/// Complete graph `K_r`.
pub fn complete_pattern(r: usize) -> Result<PatternGraph> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("K{r} has no edges")));
    }
    PatternGraph::with_name(format!("K{r}"), SimpleGraph::complete(r))
}

/// Builds `K<r>`, `C<k>`, `K<s>,<t>` or `DD<r>` (two disjoint `K_r` joined by two disjoint edges).
pub fn named_pattern(name: &str) -> Result<PatternGraph> {
    let trimmed = name.trim();
    let unknown = || Error::Parse { line: 1, msg: format!("unknown pattern name `{name}`") };
    if let Some(rest) = trimmed.strip_prefix("DD") {
        let r = parse_count(rest, "clique order", name)?;
        if r < 2 {
            return Err(Error::InvalidInput(format!("DD{r} needs r >= 2")));
        }
        let mut g = SimpleGraph::new(2 * r);
        for side in [0, r] {
            for u in 0..r {
                for v in u + 1..r {
                    g.add_edge(side + u, side + v);
                }
            }
        }
        g.add_edge(0, r);
        g.add_edge(1, r + 1);
        return PatternGraph::with_name(format!("DD{r}"), g);
    }
    if let Some(rest) = trimmed.strip_prefix('C') {
        let k = parse_count(rest, "cycle length", name)?;
        if k < 3 {
            return Err(Error::InvalidInput(format!("C{k} needs k >= 3")));
        }
        let mut g = SimpleGraph::new(k);
        for i in 0..k {
            g.add_edge(i, (i + 1) % k);
        }
        return PatternGraph::with_name(format!("C{k}"), g);
    }
    if let Some(rest) = trimmed.strip_prefix('K') {
        if let Some((a, b)) = rest.split_once(',') {
            let s = parse_count(a, "part size", name)?;
            let t = parse_count(b, "part size", name)?;
            if s == 0 || t == 0 {
                return Err(Error::InvalidInput(format!("K{s},{t} needs nonempty parts")));
            }
            let mut g = SimpleGraph::new(s + t);
            for u in 0..s {
                for v in s..s + t {
                    g.add_edge(u, v);
                }
            }
            return PatternGraph::with_name(format!("K{s},{t}"), g);
        }
        let r = parse_count(rest, "clique order", name)?;
        return complete_pattern(r);
    }
    Err(unknown())
}
