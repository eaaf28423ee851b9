//! Seeded Monte Carlo estimates of percolation probabilities.
//!
//! Trial `i` draws its graph from the edge-coupled sampler with seed
//! `mix(master_seed, i)`, so samples at different `p` are nested and every
//! estimate is independent of the thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::clique::percolates_k4_edges;
use crate::engine::{closure, Rule, GENERIC_MAX_HOST, GENERIC_MAX_PATTERN, KR_MAX_HOST};
use crate::error::{Error, Result};
use crate::graph::{Edge, SimpleGraph};
use crate::sampling::{check_probability, coupled_edges, mix};

const Z95: f64 = 1.959963984540054;
/// Host limit for the `K_3` and `K_4` trial paths, which never build a dense matrix.
pub const SPARSE_MAX_HOST: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbEstimate {
    pub successes: u64,
    pub trials: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl ProbEstimate {
    /// Point estimate with its Wilson 95% interval.
    pub fn wilson(successes: u64, trials: u64) -> ProbEstimate {
        assert!(trials > 0 && successes <= trials);
        let n = trials as f64;
        let phat = successes as f64 / n;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / n;
        let center = (phat + z2 / (2.0 * n)) / denom;
        let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        ProbEstimate {
            successes,
            trials,
            point: phat,
            ci_low: (center - half).clamp(0.0, 1.0).min(phat),
            ci_high: (center + half).clamp(0.0, 1.0).max(phat),
        }
    }

    pub fn ci_contains(&self, x: f64) -> bool {
        self.ci_low <= x && x <= self.ci_high
    }
}

fn check_rule(n: usize, rule: &Rule) -> Result<()> {
    match rule {
        Rule::Clique(r) if *r < 2 => {
            Err(Error::Domain(format!("clique order must be at least 2, got {r}")))
        }
        Rule::Clique(r) if *r <= 4 && n > SPARSE_MAX_HOST => Err(Error::SizeLimit(format!(
            "K{r} trials support n <= {SPARSE_MAX_HOST}, got {n}"
        ))),
        Rule::Clique(r) if *r >= 5 && n > KR_MAX_HOST => {
            Err(Error::SizeLimit(format!("K{r} trials support n <= {KR_MAX_HOST}, got {n}")))
        }
        Rule::Pattern(h) if h.vertex_count() > GENERIC_MAX_PATTERN || n > GENERIC_MAX_HOST => {
            Err(Error::SizeLimit(format!(
                "pattern trials support v(H) <= {GENERIC_MAX_PATTERN} and n <= {GENERIC_MAX_HOST}"
            )))
        }
        _ => Ok(()),
    }
}

fn connected_edges(n: usize, edges: &[Edge]) -> bool {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn root(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    let mut components = n;
    for e in edges {
        let (a, b) = (root(&mut parent, e.u() as u32), root(&mut parent, e.v() as u32));
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
            components -= 1;
            if components == 1 {
                return true;
            }
        }
    }
    components <= 1
}

/// Whether the seeded sample `G(n, p)` percolates under `rule`.
pub fn trial_percolates(n: usize, rule: &Rule, p: f64, seed: u64) -> Result<bool> {
    check_probability(p)?;
    check_rule(n, rule)?;
    if n <= 1 || p >= 1.0 {
        return Ok(true);
    }
    let edges = coupled_edges(n, p, seed)?;
    Ok(match rule {
        Rule::Clique(2) => true,
        Rule::Clique(3) => connected_edges(n, &edges),
        Rule::Clique(4) => percolates_k4_edges(n, &edges),
        _ => closure(&SimpleGraph::from_edges(n, edges), rule)?.is_complete(),
    })
}

/// Fraction of `trials` seeded samples of `G(n, p)` that percolate.
pub fn percolation_probability(
    n: usize,
    rule: &Rule,
    p: f64,
    trials: u64,
    master_seed: u64,
) -> Result<ProbEstimate> {
    check_probability(p)?;
    check_rule(n, rule)?;
    if trials == 0 {
        return Err(Error::Domain("at least one trial is needed".into()));
    }
    let successes = (0..trials)
        .into_par_iter()
        .map(|i| trial_percolates(n, rule, p, mix(master_seed, i)).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(ProbEstimate::wilson(successes, trials))
}

#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub p: f64,
    pub estimate: ProbEstimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct PcEstimate {
    pub n: usize,
    pub pattern: String,
    pub p_low: f64,
    pub p_high: f64,
    pub point: f64,
    pub trials_per_eval: u64,
    pub master_seed: u64,
    pub evaluations: Vec<Evaluation>,
}

#[derive(Serialize)]
struct PcSummary<'a> {
    n: usize,
    pattern: &'a str,
    p_c_estimate: f64,
    p_low: f64,
    p_high: f64,
    trials_per_eval: u64,
    master_seed: u64,
}

impl PcEstimate {
    /// The summary record written by the command-line tool.
    pub fn summary_json(&self) -> String {
        serde_json::to_string(&PcSummary {
            n: self.n,
            pattern: &self.pattern,
            p_c_estimate: self.point,
            p_low: self.p_low,
            p_high: self.p_high,
            trials_per_eval: self.trials_per_eval,
            master_seed: self.master_seed,
        })
        .expect("plain record")
    }
}

/// Locates the `p` at which the estimated percolation probability crosses 1/2.
///
/// The search starts at the largest power of two not above `1 / binom(n, 2)` and
/// doubles `p` until the estimate reaches 1/2 (halving instead if it already does),
/// then bisects the dyadic bracket until `(p_high - p_low) / p_high < rel_tol`.
/// Samples are nested across `p`, so estimates are monotone and the bracket is the
/// one a search down from `p = 1` would find. The reported bracket is widened to
/// every evaluated `p` whose interval contains 1/2.
pub fn estimate_pc(
    n: usize,
    rule: &Rule,
    trials_per_eval: u64,
    rel_tol: f64,
    master_seed: u64,
) -> Result<PcEstimate> {
    if trials_per_eval < 100 {
        return Err(Error::Domain(format!("need at least 100 trials per evaluation, got {trials_per_eval}")));
    }
    if !(rel_tol >= 0.01) {
        return Err(Error::Domain(format!("relative tolerance must be at least 0.01, got {rel_tol}")));
    }
    if n < 2 {
        return Err(Error::Domain(format!("critical probability needs n >= 2, got {n}")));
    }
    check_rule(n, rule)?;
    let mut evaluations = Vec::new();
    let mut eval = |p: f64| -> Result<ProbEstimate> {
        let est = percolation_probability(n, rule, p, trials_per_eval, master_seed)?;
        evaluations.push(Evaluation { p, estimate: est });
        Ok(est)
    };
    let pairs = (n * (n - 1) / 2) as f64;
    let mut lo = 0.5f64.powi(pairs.log2().ceil() as i32);
    let mut hi;
    if eval(lo)?.point >= 0.5 {
        loop {
            hi = lo;
            lo *= 0.5;
            if lo < 1e-15 {
                return Err(Error::Internal("percolation probability stays above 1/2 as p -> 0".into()));
            }
            if eval(lo)?.point < 0.5 {
                break;
            }
        }
    } else {
        loop {
            hi = (2.0 * lo).min(1.0);
            if eval(hi)?.point >= 0.5 {
                break;
            }
            if hi >= 1.0 {
                return Err(Error::Internal("percolation probability below 1/2 at p = 1".into()));
            }
            lo = hi;
        }
    }
    while (hi - lo) / hi >= rel_tol {
        let mid = 0.5 * (lo + hi);
        if eval(mid)?.point >= 0.5 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let point = 0.5 * (lo + hi);
    let (mut p_low, mut p_high) = (lo, hi);
    for ev in &evaluations {
        if ev.estimate.ci_contains(0.5) {
            p_low = p_low.min(ev.p);
            p_high = p_high.max(ev.p);
        }
    }
    Ok(PcEstimate {
        n,
        pattern: rule.to_string(),
        p_low,
        p_high,
        point,
        trials_per_eval,
        master_seed,
        evaluations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub successes: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub master_seed: u64,
}

/// One record per `(n, p)` cell, `n` major.
pub fn sweep(
    n_list: &[usize],
    p_grid: &[f64],
    rule: &Rule,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<SweepRecord>> {
    if n_list.is_empty() || p_grid.is_empty() {
        return Err(Error::InvalidInput("sweep needs nonempty n and p lists".into()));
    }
    let mut out = Vec::with_capacity(n_list.len() * p_grid.len());
    for &n in n_list {
        for &p in p_grid {
            let est = percolation_probability(n, rule, p, trials, master_seed)?;
            out.push(SweepRecord {
                n,
                p,
                trials,
                successes: est.successes,
                point: est.point,
                ci_low: est.ci_low,
                ci_high: est.ci_high,
                master_seed,
            });
        }
    }
    Ok(out)
}

/// CSV with header `n,p,trials,successes,point,ci_low,ci_high,master_seed`.
pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
}

/// Bounds `((1/(2e^2))^l (lp)^(2l-3), 4^3 (e/4)^(2l) (lp)^(2l-3))` on the
/// probability that `G(l, p)` internally spans `K_l`; valid when `p l^2 <= 1`.
pub fn plp_bounds(l: usize, p: f64) -> (f64, f64) {
    let e = std::f64::consts::E;
    let lf = l as f64;
    let core = (lf * p).powi(2 * l as i32 - 3);
    let lower = (1.0 / (2.0 * e * e)).powi(l as i32) * core;
    let upper = 64.0 * (e / 4.0).powi(2 * l as i32) * core;
    (lower.clamp(0.0, 1.0), upper.clamp(0.0, 1.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanningEstimate {
    pub l: usize,
    pub p: f64,
    pub estimate: ProbEstimate,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// Set when `p l^2 > 1`, where the bounds are not guaranteed.
    pub warning: bool,
}

impl SpanningEstimate {
    pub fn consistent_with_bounds(&self) -> bool {
        self.estimate.ci_high >= self.lower_bound && self.estimate.ci_low <= self.upper_bound
    }
}

/// Probability that `G(l, p)` has `K_4`-closure `K_l`.
pub fn estimate_spanning_prob(l: usize, p: f64, trials: u64, master_seed: u64) -> Result<SpanningEstimate> {
    if !(3..=64).contains(&l) {
        return Err(Error::Domain(format!("spanning probability needs 3 <= l <= 64, got {l}")));
    }
    let estimate = percolation_probability(l, &Rule::Clique(4), p, trials, master_seed)?;
    let (lower_bound, upper_bound) = plp_bounds(l, p);
    Ok(SpanningEstimate {
        l,
        p,
        estimate,
        lower_bound,
        upper_bound,
        warning: p * (l * l) as f64 > 1.0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ErLimitEstimate {
    pub n: usize,
    pub c: f64,
    pub p: f64,
    pub estimate: ProbEstimate,
    /// `exp(-exp(-c))`.
    pub limit: f64,
}

/// `K_3` percolation probability at `p = (ln n + c)/n`, next to its limit `exp(-exp(-c))`.
pub fn er_limit_check(n: usize, c: f64, trials: u64, master_seed: u64) -> Result<ErLimitEstimate> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    let p = ((n as f64).ln() + c) / n as f64;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p = (ln n + c)/n = {p} is outside [0, 1]")));
    }
    let estimate = percolation_probability(n, &Rule::Clique(3), p, trials, master_seed)?;
    Ok(ErLimitEstimate {
        n,
        c,
        p,
        estimate,
        limit: (-(-c).exp()).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::close_kr;
    use crate::graph::{erdos_renyi, is_connected};

    #[test]
    fn wilson_interval() {
        let e = ProbEstimate::wilson(0, 10);
        assert_eq!(e.ci_low, 0.0);
        assert!(e.ci_high > 0.2 && e.ci_high < 0.4);
        let e = ProbEstimate::wilson(50, 100);
        assert!((e.ci_low - 0.4038).abs() < 1e-3 && (e.ci_high - 0.5962).abs() < 1e-3);
        let e = ProbEstimate::wilson(7, 7);
        assert_eq!((e.point, e.ci_high), (1.0, 1.0));
    }

    #[test]
    fn fast_paths_match_engine() {
        for seed in 0..150u64 {
            let n = 6 + (seed as usize % 12);
            let p = [0.1, 0.2, 0.3, 0.5][seed as usize % 4];
            let g = erdos_renyi(n, p, seed).unwrap();
            assert_eq!(trial_percolates(n, &Rule::Clique(3), p, seed).unwrap(), is_connected(&g));
            let k4 = close_kr(&g, 4).unwrap().0.is_complete();
            assert_eq!(trial_percolates(n, &Rule::Clique(4), p, seed).unwrap(), k4);
        }
    }

    #[test]
    fn certain_and_impossible() {
        let e = percolation_probability(30, &Rule::Clique(4), 1.0, 20, 1).unwrap();
        assert_eq!(e.point, 1.0);
        let e = percolation_probability(30, &Rule::Clique(4), 0.0, 20, 1).unwrap();
        assert_eq!(e.point, 0.0);
        assert!(percolation_probability(30, &Rule::Clique(3), 1.5, 20, 1).is_err());
    }

    #[test]
    fn sweep_is_monotone() {
        let grid = [0.02, 0.05, 0.1, 0.2, 0.4];
        let rec = sweep(&[40], &grid, &Rule::Clique(3), 200, 9).unwrap();
        for w in rec.windows(2) {
            assert!(w[0].successes <= w[1].successes);
        }
        let csv = sweep_csv(&rec);
        assert!(csv.starts_with("n,p,trials,successes,point,ci_low,ci_high,master_seed\n"));
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn spanning_triangle() {
        let s = estimate_spanning_prob(3, 0.3, 20_000, 4).unwrap();
        assert!(s.estimate.ci_contains(0.027), "{:?}", s.estimate);
        assert!(s.warning);
        assert_eq!(estimate_spanning_prob(4, 0.0, 100, 4).unwrap().estimate.point, 0.0);
    }

    #[test]
    fn pc_small() {
        let est = estimate_pc(60, &Rule::Clique(3), 100, 0.05, 3).unwrap();
        assert!(est.p_low < est.p_high);
        assert!(est.point > 0.02 && est.point < 0.2, "{}", est.point);
        assert!(est.summary_json().contains("\"p_c_estimate\""));
    }
}
