//! Brute-force checks of small combinatorial statements by exhaustive or
//! randomised enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{closure, closure_generic, Rule};
use crate::error::{Error, Result};
use crate::graph::{Edge, SimpleGraph};
use crate::pattern::{
    build_gadget, complete_pattern, is_balanced, lambda, lambda_clique, wsat_bound, PatternGraph,
    Rational,
};
use crate::sampling::mix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub lemma: String,
    pub parameter_space: String,
    pub cases_checked: u64,
    pub counterexample: Option<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn all_pairs(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v))).collect()
}

fn graph_from_mask(n: usize, pairs: &[Edge], mask: u64) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        g.add_edge(pairs[i].u(), pairs[i].v());
    }
    g
}

/// All `k`-subsets of `0..total` as bitmasks, in increasing numeric order.
fn masks_of_size(total: usize, k: usize) -> Vec<u64> {
    if k > total {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let limit = 1u64 << total;
    let mut x: u64 = (1u64 << k) - 1;
    while x < limit {
        out.push(x);
        // next subset with the same popcount
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// First mask (in enumeration order) whose graph satisfies `bad`, together with the case count.
fn search_masks<F>(n: usize, masks: &[u64], bad: F) -> (u64, Option<SimpleGraph>)
where
    F: Fn(&SimpleGraph) -> bool + Sync,
{
    let pairs = all_pairs(n);
    let hit = masks
        .par_iter()
        .position_first(|&m| bad(&graph_from_mask(n, &pairs, m)));
    (masks.len() as u64, hit.map(|i| graph_from_mask(n, &pairs, masks[i])))
}

fn describe(g: &SimpleGraph) -> String {
    g.to_edge_list()
}

/// No graph on `n` vertices with `wsat_bound(n, r) - 1` edges percolates under `K_r`.
pub fn verify_wsat_lower(n: usize, r: usize) -> Result<OracleReport> {
    let bound = wsat_bound(n, r)?;
    if n > 6 {
        return Err(Error::SizeLimit(format!("exhaustive weak-saturation check needs n <= 6, got {n}")));
    }
    let k = bound as usize - 1;
    let h = complete_pattern(r)?;
    let masks = masks_of_size(n * (n - 1) / 2, k);
    let (cases, hit) = search_masks(n, &masks, |g| {
        closure_generic(g, &h).map(|c| c.is_complete()).unwrap_or(false)
    });
    Ok(OracleReport {
        lemma: "wsat-lower".into(),
        parameter_space: format!("all labelled graphs on {n} vertices with {k} edges, K{r} rule"),
        cases_checked: cases,
        counterexample: hit.as_ref().map(describe),
    })
}

/// No graph on `l` vertices with at most `2l - 4` edges has `K_4`-closure `K_l`.
pub fn verify_2lminus3(l: usize) -> Result<OracleReport> {
    if l < 4 {
        return Err(Error::Domain(format!("the 2l-3 check needs l >= 4, got {l}")));
    }
    if l > 7 {
        return Err(Error::SizeLimit(format!("the 2l-3 check supports l <= 7, got {l}")));
    }
    let h = complete_pattern(4)?;
    let total = l * (l - 1) / 2;
    let masks: Vec<u64> = (0..=2 * l - 4).flat_map(|k| masks_of_size(total, k)).collect();
    let (cases, hit) = search_masks(l, &masks, |g| {
        closure_generic(g, &h).map(|c| c.is_complete()).unwrap_or(false)
    });
    Ok(OracleReport {
        lemma: "2lminus3".into(),
        parameter_space: format!(
            "all labelled graphs on {l} vertices with at most {} edges, K4 rule",
            2 * l - 4
        ),
        cases_checked: cases,
        counterexample: hit.as_ref().map(describe),
    })
}

/// Multiplicity vectors over the nonempty subsets of `[m]` (bitmask `s` at index `s - 1`)
/// with total at most `r`.
fn multiplicity_vectors(m: usize, r: usize, out: &mut Vec<Vec<u8>>) {
    fn rec(idx: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if idx == cur.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur[idx] = a as u8;
            rec(idx + 1, left - a, cur, out);
        }
        cur[idx] = 0;
    }
    let mut cur = vec![0u8; (1 << m) - 1];
    rec(0, r, &mut cur, out);
}

/// Double covers `A` of `[m]` with `|A| <= r` satisfy
/// `#{ {A,B} : A ∩ B ≠ ∅ } <= lambda(r) (sum |A| - 2m) + m`.
pub fn verify_double_cover(m: usize, r: usize) -> Result<OracleReport> {
    if !(2..=4).contains(&m) || !(4..=7).contains(&r) {
        return Err(Error::SizeLimit(format!(
            "double-cover check supports 2 <= m <= 4 and 4 <= r <= 7, got m={m}, r={r}"
        )));
    }
    let lam = lambda_clique(r)?;
    let mut vectors = Vec::new();
    multiplicity_vectors(m, r, &mut vectors);
    let mut cases = 0u64;
    let mut counterexample = None;
    for a in &vectors {
        let covered = (0..m).all(|j| {
            a.iter()
                .enumerate()
                .filter(|&(i, _)| (i + 1) & (1 << j) != 0)
                .map(|(_, &c)| c as usize)
                .sum::<usize>()
                >= 2
        });
        if !covered {
            continue;
        }
        cases += 1;
        let mut lhs: i64 = 0;
        let mut total_size: i64 = 0;
        for (i, &ai) in a.iter().enumerate() {
            let ai = ai as i64;
            total_size += ai * (i + 1).count_ones() as i64;
            lhs += ai * (ai - 1) / 2;
            for (j, &aj) in a.iter().enumerate().skip(i + 1) {
                if (i + 1) & (j + 1) != 0 {
                    lhs += ai * aj as i64;
                }
            }
        }
        let rhs = lam * Rational::from_integer(total_size - 2 * m as i64)
            + Rational::from_integer(m as i64);
        if Rational::from_integer(lhs) > rhs {
            let family: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0)
                .map(|(i, &c)| {
                    let set: Vec<String> =
                        (0..m).filter(|j| (i + 1) & (1 << j) != 0).map(|j| (j + 1).to_string()).collect();
                    format!("{}x{{{}}}", c, set.join(","))
                })
                .collect();
            counterexample = Some(family.join(" "));
            break;
        }
    }
    Ok(OracleReport {
        lemma: "double-cover".into(),
        parameter_space: format!("multi-families of nonempty subsets of [{m}] with at most {r} members that double-cover [{m}]"),
        cases_checked: cases,
        counterexample,
    })
}

/// Every proper subgraph `F` of `H_d` containing both root endpoints has
/// `e(F) <= (v(F) - 2) lambda(H)`.
pub fn verify_var_ext(h: &PatternGraph, d: usize) -> Result<OracleReport> {
    if h.vertex_count() < 4 || !is_balanced(h)? {
        return Err(Error::Domain(format!("{} is not balanced", h.name())));
    }
    let gadget = build_gadget(h, d)?;
    let g = &gadget.graph;
    let v = g.vertex_count();
    if v > 12 || g.edge_count() > 26 {
        return Err(Error::SizeLimit(format!(
            "var-ext enumeration needs v(H_d) <= 12 and e(H_d) <= 26, got v={v}, e={}",
            g.edge_count()
        )));
    }
    let lam = lambda(h)?;
    let (num, den) = (*lam.numer(), *lam.denom());
    let (ra, rb) = gadget.root.endpoints();
    let others: Vec<usize> = (0..v).filter(|&x| x != ra && x != rb).collect();
    let all_edges = g.edges();
    let mut cases = 0u64;
    let mut counterexample = None;
    'outer: for sub in 0u32..(1 << others.len()) {
        let mut in_set = vec![false; v];
        in_set[ra] = true;
        in_set[rb] = true;
        for (i, &x) in others.iter().enumerate() {
            if sub & (1 << i) != 0 {
                in_set[x] = true;
            }
        }
        let size = in_set.iter().filter(|&&b| b).count() as i64;
        let induced: Vec<Edge> =
            all_edges.iter().copied().filter(|e| in_set[e.u()] && in_set[e.v()]).collect();
        let full_set = size as usize == v;
        for mask in 0u64..(1u64 << induced.len()) {
            let e_count = mask.count_ones() as usize;
            if full_set && e_count == all_edges.len() {
                continue;
            }
            cases += 1;
            // e(F) <= (v(F) - 2) * num / den
            if e_count as i64 * den > (size - 2) * num {
                let chosen: Vec<String> = induced
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| format!("{} {}", e.u(), e.v()))
                    .collect();
                let verts: Vec<String> =
                    (0..v).filter(|&x| in_set[x]).map(|x| x.to_string()).collect();
                counterexample = Some(format!(
                    "vertices [{}] edges [{}]",
                    verts.join(","),
                    chosen.join(", ")
                ));
                break 'outer;
            }
        }
    }
    Ok(OracleReport {
        lemma: "var-ext".into(),
        parameter_space: format!(
            "proper subgraphs of the depth-{d} gadget of {} containing the root endpoints",
            h.name()
        ),
        cases_checked: cases,
        counterexample,
    })
}

/// Randomised check: if `R` is internally spanned by `G ∪ K_S` under `K_4`, then `G`
/// has at least `2(|R| - |S|)` edges outside `K_S`.
pub fn verify_dext(r_size: usize, s_size: usize, trials: u64, seed: u64) -> Result<OracleReport> {
    if !(3 <= s_size && s_size < r_size && r_size <= 12) {
        return Err(Error::Domain(format!(
            "dext check needs 3 <= S < R <= 12, got S={s_size}, R={r_size}"
        )));
    }
    let pairs = all_pairs(r_size);
    let rule = Rule::Clique(4);
    let outcomes: Vec<(bool, Option<String>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, t));
            let density = 0.2 + 0.1 * rng.gen_range(0..7) as f64;
            let mut g = SimpleGraph::new(r_size);
            let mut outside = 0usize;
            for e in &pairs {
                let in_s = e.v() < s_size;
                if rng.gen::<f64>() < density {
                    g.add_edge(e.u(), e.v());
                    if !in_s {
                        outside += 1;
                    }
                } else if in_s {
                    g.add_edge(e.u(), e.v());
                }
            }
            let spans = closure(&g, &rule).map(|c| c.is_complete()).unwrap_or(false);
            if spans && outside < 2 * (r_size - s_size) {
                (true, Some(format!("trial {t}: {outside} edges outside K_S\n{}", g.to_edge_list())))
            } else {
                (spans, None)
            }
        })
        .collect();
    let cases = outcomes.iter().filter(|(s, _)| *s).count() as u64;
    let counterexample = outcomes.into_iter().find_map(|(_, c)| c);
    Ok(OracleReport {
        lemma: "dext".into(),
        parameter_space: format!(
            "{trials} random graphs on {r_size} vertices with densities 0.2..0.8 and a planted K{s_size}; cases are the spanning ones"
        ),
        cases_checked: cases,
        counterexample,
    })
}
