//! The `K_4` clique process.
//!
//! Every seed edge starts as a 2-vertex clique. Two cliques sharing at least two
//! vertices are replaced by the clique on their union, and so are three cliques
//! that pairwise meet in three distinct single vertices (a triangle of cliques).
//! The terminal collection is pair-free and triangle-free, and the `K_4` closure
//! of the seed is the union of the complete graphs on its vertex sets.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::graph::{Edge, SimpleGraph};

// cliques at least this large carry a membership bitset
const BIG: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeKind {
    Pair,
    Triangle,
}

/// One merge. Clique ids are the seed-edge indices (lexicographic edge order);
/// the merged clique keeps the id of its largest participant.
#[derive(Clone, Debug, Serialize)]
pub struct MergeEvent {
    pub kind: MergeKind,
    pub participants: Vec<usize>,
    pub participant_sizes: Vec<usize>,
    pub result: usize,
    pub size: usize,
    pub vertices: Vec<usize>,
    pub seed_count: usize,
}

/// A clique `R` (sorted vertex set) and the seed edges `A` that span it.
#[derive(Clone, Debug, Serialize)]
pub struct CliqueItem {
    pub id: usize,
    pub vertices: Vec<usize>,
    pub seeds: Vec<Edge>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueCollection {
    pub n: usize,
    pub items: Vec<CliqueItem>,
    pub history: Vec<MergeEvent>,
    /// Seed edges in id order.
    #[serde(skip)]
    initial: Vec<Edge>,
}

struct Cliques {
    verts: Vec<Vec<u32>>,
    alive: Vec<bool>,
    of: Vec<Vec<u32>>,
    seeds: Option<Vec<Vec<Edge>>>,
    history: Option<Vec<MergeEvent>>,
    pair_q: Vec<(u32, u32)>,
    tri_q: Vec<(u32, u32)>,
    max_size: usize,
    // membership bitsets for cliques of at least BIG vertices
    members: Vec<Option<VertexSet>>,
    // a slot is marked when its stamp equals the current epoch
    clique_stamp: Vec<u32>,
    x_stamp: Vec<u32>,
    a_stamp: Vec<u32>,
    owner: Vec<u32>,
    epoch: u32,
}

impl Cliques {
    fn new(n: usize, record: bool) -> Self {
        Cliques {
            verts: Vec::new(),
            alive: Vec::new(),
            of: vec![Vec::new(); n],
            seeds: record.then(Vec::new),
            history: record.then(Vec::new),
            pair_q: Vec::new(),
            tri_q: Vec::new(),
            max_size: 0,
            members: Vec::new(),
            clique_stamp: Vec::new(),
            x_stamp: vec![0; n],
            a_stamp: vec![0; n],
            owner: vec![0; n],
            epoch: 0,
        }
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.clique_stamp.fill(0);
            self.x_stamp.fill(0);
            self.a_stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    #[inline]
    fn contains(&self, c: u32, v: u32) -> bool {
        match &self.members[c as usize] {
            Some(set) => set.contains(v as usize),
            None => self.of[v as usize].contains(&c),
        }
    }

    fn in_common_clique(&mut self, a: usize, b: usize) -> bool {
        let ep = self.next_epoch();
        for &c in &self.of[a] {
            self.clique_stamp[c as usize] = ep;
        }
        self.of[b].iter().any(|&c| self.clique_stamp[c as usize] == ep)
    }

    fn add_edge_clique(&mut self, e: Edge) {
        let id = self.verts.len() as u32;
        let (a, b) = (e.u() as u32, e.v() as u32);
        self.verts.push(vec![a, b]);
        self.alive.push(true);
        self.clique_stamp.push(0);
        self.members.push(None);
        self.of[a as usize].push(id);
        self.of[b as usize].push(id);
        if let Some(s) = self.seeds.as_mut() {
            s.push(vec![e]);
        }
        for v in [a, b] {
            self.pair_q.push((id, v));
            self.tri_q.push((id, v));
        }
        self.max_size = self.max_size.max(2);
    }

    /// A clique other than `x` sharing `u` and at least one more vertex with `x`.
    fn find_pair(&mut self, x: u32, u: u32) -> Option<u32> {
        let at_u: usize = self.of[u as usize]
            .iter()
            .filter(|&&d| d != x)
            .map(|&d| self.verts[d as usize].len())
            .sum();
        if self.verts[x as usize].len() <= at_u {
            let ep = self.next_epoch();
            for &d in &self.of[u as usize] {
                self.clique_stamp[d as usize] = ep;
            }
            for &y in &self.verts[x as usize] {
                if y == u {
                    continue;
                }
                for &d in &self.of[y as usize] {
                    if d != x && self.clique_stamp[d as usize] == ep {
                        return Some(d);
                    }
                }
            }
            None
        } else {
            self.of[u as usize].iter().copied().find(|&d| {
                d != x && self.verts[d as usize].iter().any(|&v| v != u && self.contains(x, v))
            })
        }
    }

    /// Whether clique `b` meets clique `c` away from `u`. `marks`, when given, holds
    /// the stamp array and epoch under which exactly the vertices of `c` are marked.
    fn meets_away(&self, b: u32, c: u32, u: u32, marks: Option<(&[u32], u32)>) -> bool {
        let bv = &self.verts[b as usize];
        let cv = &self.verts[c as usize];
        if bv.len() <= cv.len() {
            match (marks, &self.members[c as usize]) {
                (_, Some(set)) => bv.iter().any(|&v| v != u && set.contains(v as usize)),
                (Some((st, ep)), None) => bv.iter().any(|&v| v != u && st[v as usize] == ep),
                (None, None) => bv.iter().any(|&v| v != u && self.contains(c, v)),
            }
        } else {
            cv.iter().any(|&v| v != u && self.contains(b, v))
        }
    }

    /// A triangle `(x, a, b)` in which `x` and `a` meet at `u`, returned as `(a, b)`.
    /// Assumes the collection is pair-free, so any two cliques share at most one vertex.
    fn find_triangle(&mut self, x: u32, u: u32) -> Option<(u32, u32)> {
        if self.of[u as usize].len() < 2 {
            return None;
        }
        let ep = self.next_epoch();
        let x_len = self.verts[x as usize].len();
        let mut small_walk = 0usize;
        let mut small_total = 0usize;
        for &a in &self.of[u as usize] {
            if a != x && self.members[a as usize].is_none() {
                small_total += self.verts[a as usize].len();
                small_walk += self.verts[a as usize]
                    .iter()
                    .map(|&z| self.of[z as usize].len())
                    .sum::<usize>();
            }
        }
        if small_total > 0 {
            let mut x_walk = 0usize;
            for &y in &self.verts[x as usize] {
                x_walk += self.of[y as usize].len();
                if x_walk > small_walk {
                    break;
                }
            }
            let found = if small_total + x_walk <= small_walk {
                self.triangle_from_x(x, u, ep)
            } else {
                self.triangle_from_small(x, u, ep)
            };
            if found.is_some() {
                return found;
            }
        }
        for i in 0..self.of[u as usize].len() {
            let a = self.of[u as usize][i];
            if a == x || self.members[a as usize].is_none() {
                continue;
            }
            let (walk, other) = if self.verts[a as usize].len() <= x_len { (a, x) } else { (x, a) };
            for &z in &self.verts[walk as usize] {
                if z == u {
                    continue;
                }
                for &b in &self.of[z as usize] {
                    if b != a && b != x && self.meets_away(b, other, u, None) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    /// Marks the vertices of the small cliques at `u` with their owner and walks `x`.
    fn triangle_from_x(&mut self, x: u32, u: u32, ep: u32) -> Option<(u32, u32)> {
        let mut marked = Vec::new();
        for &a in &self.of[u as usize] {
            if a == x || self.members[a as usize].is_some() {
                continue;
            }
            for &z in &self.verts[a as usize] {
                if z != u {
                    self.a_stamp[z as usize] = ep;
                    self.owner[z as usize] = a;
                    marked.push(z);
                }
            }
        }
        for &y in &self.verts[x as usize] {
            if y == u {
                continue;
            }
            for &b in &self.of[y as usize] {
                if b == x {
                    continue;
                }
                let bv = &self.verts[b as usize];
                let hit = if bv.len() <= marked.len() {
                    bv.iter().find_map(|&z| {
                        let a = self.owner[z as usize];
                        (self.a_stamp[z as usize] == ep && a != b).then_some(a)
                    })
                } else {
                    marked.iter().find_map(|&z| {
                        let a = self.owner[z as usize];
                        (a != b && self.contains(b, z)).then_some(a)
                    })
                };
                if let Some(a) = hit {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Walks the small cliques at `u` and tests the cliques through them against `x`.
    fn triangle_from_small(&mut self, x: u32, u: u32, ep: u32) -> Option<(u32, u32)> {
        if self.members[x as usize].is_none() {
            for &v in &self.verts[x as usize] {
                self.x_stamp[v as usize] = ep;
            }
        }
        let marks = Some((self.x_stamp.as_slice(), ep));
        for &a in &self.of[u as usize] {
            if a == x || self.members[a as usize].is_some() {
                continue;
            }
            for &z in &self.verts[a as usize] {
                if z == u {
                    continue;
                }
                for &b in &self.of[z as usize] {
                    if b != a && b != x && self.meets_away(b, x, u, marks) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    fn merge(&mut self, parts: &[u32], kind: MergeKind) -> u32 {
        let survivor = *parts
            .iter()
            .max_by(|&&p, &&q| {
                self.verts[p as usize]
                    .len()
                    .cmp(&self.verts[q as usize].len())
                    .then(q.cmp(&p))
            })
            .unwrap();
        let sizes: Vec<usize> = parts.iter().map(|&p| self.verts[p as usize].len()).collect();
        for &d in parts {
            if d == survivor {
                continue;
            }
            let moved = std::mem::take(&mut self.verts[d as usize]);
            self.alive[d as usize] = false;
            self.members[d as usize] = None;
            for &v in &moved {
                let list = &mut self.of[v as usize];
                if let Some(pos) = list.iter().position(|&c| c == d) {
                    list.swap_remove(pos);
                }
                if !list.contains(&survivor) {
                    list.push(survivor);
                    self.verts[survivor as usize].push(v);
                    if let Some(set) = self.members[survivor as usize].as_mut() {
                        set.insert(v as usize);
                    }
                }
                self.pair_q.push((survivor, v));
                self.tri_q.push((survivor, v));
            }
            if let Some(s) = self.seeds.as_mut() {
                let a = std::mem::take(&mut s[d as usize]);
                s[survivor as usize].extend(a);
            }
        }
        let size = self.verts[survivor as usize].len();
        self.max_size = self.max_size.max(size);
        if size >= BIG && self.members[survivor as usize].is_none() {
            let n = self.of.len();
            let set = VertexSet::from_iter_with_capacity(
                n,
                self.verts[survivor as usize].iter().map(|&v| v as usize),
            );
            self.members[survivor as usize] = Some(set);
        }
        if let Some(h) = self.history.as_mut() {
            let mut vertices: Vec<usize> =
                self.verts[survivor as usize].iter().map(|&v| v as usize).collect();
            vertices.sort_unstable();
            h.push(MergeEvent {
                kind,
                participants: parts.iter().map(|&p| p as usize).collect(),
                participant_sizes: sizes,
                result: survivor as usize,
                size,
                vertices,
                seed_count: self.seeds.as_ref().map_or(0, |s| s[survivor as usize].len()),
            });
        }
        survivor
    }

    /// Runs merges until the collection is pair-free and triangle-free, or a clique
    /// reaches `stop_at` vertices.
    fn settle(&mut self, stop_at: usize) {
        loop {
            if self.max_size >= stop_at {
                return;
            }
            if let Some((x, u)) = self.pair_q.pop() {
                if !self.alive[x as usize] || !self.contains(x, u) {
                    continue;
                }
                if let Some(d) = self.find_pair(x, u) {
                    let s = self.merge(&[x, d], MergeKind::Pair);
                    self.pair_q.push((s, u));
                }
                continue;
            }
            if let Some((x, u)) = self.tri_q.pop() {
                if !self.alive[x as usize] || !self.contains(x, u) {
                    continue;
                }
                if let Some((a, b)) = self.find_triangle(x, u) {
                    let s = self.merge(&[x, a, b], MergeKind::Triangle);
                    self.tri_q.push((s, u));
                }
                continue;
            }
            return;
        }
    }
}

/// Runs the clique process on `g` from singleton seed edges, recording every merge.
pub fn clique_process(g: &SimpleGraph) -> CliqueCollection {
    let n = g.vertex_count();
    let initial = g.edges();
    let mut st = Cliques::new(n, true);
    for &e in &initial {
        st.add_edge_clique(e);
    }
    st.settle(usize::MAX);
    let seeds = st.seeds.take().unwrap();
    let mut items: Vec<CliqueItem> = st
        .verts
        .iter()
        .enumerate()
        .filter(|&(i, _)| st.alive[i])
        .map(|(i, vs)| {
            let mut vertices: Vec<usize> = vs.iter().map(|&v| v as usize).collect();
            vertices.sort_unstable();
            let mut a = seeds[i].clone();
            a.sort_unstable();
            CliqueItem { id: i, vertices, seeds: a }
        })
        .collect();
    items.sort_by(|p, q| p.vertices.cmp(&q.vertices));
    CliqueCollection {
        n,
        items,
        history: st.history.take().unwrap(),
        initial,
    }
}

/// Union of the complete graphs on the terminal cliques; equals the `K_4` closure.
pub fn k4_closure_via_cliques(g: &SimpleGraph) -> SimpleGraph {
    let coll = clique_process(g);
    let mut out = SimpleGraph::new(g.vertex_count());
    for item in &coll.items {
        for (i, &u) in item.vertices.iter().enumerate() {
            for &v in &item.vertices[i + 1..] {
                out.add_edge(u, v);
            }
        }
    }
    out
}

/// Sizes of every clique present at some point of the process: 2 for each seed
/// edge, then the size of each merge result.
pub fn internally_spanned_sizes(coll: &CliqueCollection) -> Vec<usize> {
    let mut sizes = vec![2; coll.initial.len()];
    sizes.extend(coll.history.iter().map(|h| h.size));
    sizes
}

/// A recorded internally spanned clique with `l <= size <= 3l`, earliest first.
pub fn al_scan(coll: &CliqueCollection, l: usize) -> Option<Vec<usize>> {
    if (l..=3 * l).contains(&2) {
        if let Some(e) = coll.initial.first() {
            return Some(vec![e.u(), e.v()]);
        }
    }
    coll.history
        .iter()
        .find(|h| h.size >= l && h.size <= 3 * l)
        .map(|h| h.vertices.clone())
}

impl CliqueCollection {
    pub fn seed_edges(&self) -> &[Edge] {
        &self.initial
    }

    pub fn percolates(&self) -> bool {
        self.n <= 1 || self.items.iter().any(|it| it.vertices.len() == self.n)
    }
}

/// `K_4` percolation of the graph with edge list `edges`, processing edges one at a
/// time and stopping as soon as one clique covers all `n` vertices.
pub fn percolates_k4_edges(n: usize, edges: &[Edge]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut st = Cliques::new(n, false);
    for &e in edges {
        if st.in_common_clique(e.u(), e.v()) {
            continue;
        }
        st.add_edge_clique(e);
        st.settle(n);
        if st.max_size >= n {
            return true;
        }
    }
    false
}
