//! Seeded, edge-coupled sampling of `G(n, p)`.
//!
//! Every edge `e` of `K_n` carries a uniform variate `U_e` fixed by the seed,
//! and the sample at density `p` is `{e : U_e < p}`. Samples at `p < p'` drawn
//! from the same seed are therefore nested.
//!
//! The variates are generated shell by shell from the bottom up, so the cost
//! is proportional to `p * binom(n, 2)` rather than to `binom(n, 2)`. Shell `k`
//! holds the variates in `[2^-(k+1), 2^-k)`; the deepest shell holds `[0, 2^-DEEPEST)`.
//! Edges not yet placed in a deeper shell fall into shell `k` independently with
//! probability `P(U in shell k | U >= 2^-(k+1))`, which is drawn by geometric
//! skipping. Inside a shell the variate is uniform. The random stream for a
//! shell does not depend on `p`, only on the seed and on the shells below it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Edge;

const DEEPEST: u32 = 60;

#[inline]
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of trial `index` from a master seed.
pub fn mix(master_seed: u64, index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(index))
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} is outside [0, 1]")));
    }
    Ok(())
}

/// The shell `k` with `2^-(k+1) < p <= 2^-k`, for `0 < p < 1`.
fn shell_of(p: f64) -> u32 {
    let mut k = 0;
    let mut lower = 0.5;
    while k < DEEPEST && p <= lower {
        k += 1;
        lower *= 0.5;
    }
    k
}

fn shell_bounds(k: u32) -> (f64, f64) {
    let upper = 0.5f64.powi(k as i32);
    let lower = if k == DEEPEST { 0.0 } else { upper * 0.5 };
    (lower, upper)
}

/// Sorted indices `i < total` with `U_i < p`.
pub(crate) fn coupled_indices(total: u64, p: f64, seed: u64) -> Vec<u64> {
    if total == 0 || p <= 0.0 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (0..total).collect();
    }
    let target = shell_of(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut included: Vec<u64> = Vec::new();
    let mut fresh: Vec<u64> = Vec::new();
    for k in (target..=DEEPEST).rev() {
        let (lower, upper) = shell_bounds(k);
        let q = (upper - lower) / (1.0 - lower);
        let log_miss = (-q).ln_1p();
        fresh.clear();
        let mut cursor = 0usize;
        let mut pos: u64 = 0;
        let mut first = true;
        loop {
            let skip = if q >= 1.0 {
                0.0
            } else {
                let u: f64 = 1.0 - rng.gen::<f64>();
                (u.ln() / log_miss).floor()
            };
            let next = if first { skip } else { pos as f64 + 1.0 + skip };
            if next >= total as f64 {
                break;
            }
            first = false;
            pos = next as u64;
            let w: f64 = rng.gen();
            while cursor < included.len() && included[cursor] < pos {
                cursor += 1;
            }
            if cursor < included.len() && included[cursor] == pos {
                continue;
            }
            if k == target && lower + (upper - lower) * w >= p {
                continue;
            }
            fresh.push(pos);
        }
        if !fresh.is_empty() {
            included = merge_sorted(&included, &fresh);
        }
    }
    included
}

fn merge_sorted(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// The edge set `{e : U_e < p}` of `K_n` in lexicographic order.
pub fn coupled_edges(n: usize, p: f64, seed: u64) -> Result<Vec<Edge>> {
    check_probability(p)?;
    let total = (n as u64) * (n as u64).saturating_sub(1) / 2;
    let idx = coupled_indices(total, p, seed);
    Ok(decode_sorted(n, &idx))
}

/// Decodes lexicographic pair indices (sorted) into edges.
fn decode_sorted(n: usize, idx: &[u64]) -> Vec<Edge> {
    let mut out = Vec::with_capacity(idx.len());
    let mut u = 0usize;
    let mut row_start: u64 = 0;
    let mut row_len: u64 = n.saturating_sub(1) as u64;
    for &i in idx {
        while i >= row_start + row_len {
            row_start += row_len;
            u += 1;
            row_len -= 1;
        }
        let v = u + 1 + (i - row_start) as usize;
        out.push(Edge::new(u, v));
    }
    out
}
