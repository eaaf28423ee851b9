//! Exact closure computation for the round-synchronous process
//! `G_{t+1} = G_t ∪ {e : e is the only missing edge of a copy of H in G_t + e}`.

mod generic;
mod kr;
mod trace;

use std::fmt;

pub use trace::{infection_round, InfectionEvent, InfectionTrace};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::pattern::{named_pattern, PatternGraph};

pub const GENERIC_MAX_PATTERN: usize = 8;
pub const GENERIC_MAX_HOST: usize = 4096;
/// Host limit of the dense `K_r` engine for `r <= 4`; the adjacency matrix alone is `n^2/8` bytes.
pub const KR_MAX_HOST_SMALL_R: usize = 32_768;
pub const KR_MAX_HOST: usize = 4096;

/// The infection rule: a clique order or an arbitrary pattern.
#[derive(Clone, Debug)]
pub enum Rule {
    Clique(usize),
    Pattern(PatternGraph),
}

impl Rule {
    /// Complete patterns are turned into [`Rule::Clique`].
    pub fn from_pattern(h: PatternGraph) -> Rule {
        match h.clique_order() {
            Some(r) => Rule::Clique(r),
            None => Rule::Pattern(h),
        }
    }

    /// A named pattern (`K4`, `C5`, `K2,3`, `DD4`).
    pub fn named(name: &str) -> Result<Rule> {
        named_pattern(name).map(Rule::from_pattern)
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Rule::Clique(r) => *r,
            Rule::Pattern(h) => h.vertex_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Rule::Clique(r) => r * (r - 1) / 2,
            Rule::Pattern(h) => h.edge_count(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Clique(r) => write!(f, "K{r}"),
            Rule::Pattern(h) => write!(f, "{}", h.name()),
        }
    }
}

fn check_generic(g: &SimpleGraph, h: &PatternGraph) -> Result<()> {
    if h.vertex_count() > GENERIC_MAX_PATTERN {
        return Err(Error::SizeLimit(format!(
            "generic engine supports v(H) <= {GENERIC_MAX_PATTERN}, got {}",
            h.vertex_count()
        )));
    }
    if g.vertex_count() > GENERIC_MAX_HOST {
        return Err(Error::SizeLimit(format!(
            "generic engine supports n <= {GENERIC_MAX_HOST}, got {}",
            g.vertex_count()
        )));
    }
    Ok(())
}

fn check_kr(g: &SimpleGraph, r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::Domain(format!("clique order must be at least 2, got {r}")));
    }
    let limit = if r <= 4 { KR_MAX_HOST_SMALL_R } else { KR_MAX_HOST };
    if g.vertex_count() > limit {
        return Err(Error::SizeLimit(format!(
            "K{r} engine supports n <= {limit}, got {}",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// `<g>_H` via the pattern engine, with the full trace.
pub fn close_generic(g: &SimpleGraph, h: &PatternGraph) -> Result<(SimpleGraph, InfectionTrace)> {
    check_generic(g, h)?;
    Ok(generic::run(g, h, true))
}

/// `<g>_{K_r}` via the clique engine, with the full trace.
pub fn close_kr(g: &SimpleGraph, r: usize) -> Result<(SimpleGraph, InfectionTrace)> {
    check_kr(g, r)?;
    Ok(kr::run(g, r, true))
}

/// Closure under `rule`, dispatching cliques to the `K_r` engine.
pub fn close(g: &SimpleGraph, rule: &Rule) -> Result<(SimpleGraph, InfectionTrace)> {
    match rule {
        Rule::Clique(r) => close_kr(g, *r),
        Rule::Pattern(h) => close_generic(g, h),
    }
}

/// The closure alone; skips witness bookkeeping.
pub fn closure(g: &SimpleGraph, rule: &Rule) -> Result<SimpleGraph> {
    match rule {
        Rule::Clique(r) => {
            check_kr(g, *r)?;
            Ok(kr::run(g, *r, false).0)
        }
        Rule::Pattern(h) => {
            check_generic(g, h)?;
            Ok(generic::run(g, h, false).0)
        }
    }
}

/// Closure of `g` under the generic engine without a trace.
pub fn closure_generic(g: &SimpleGraph, h: &PatternGraph) -> Result<SimpleGraph> {
    check_generic(g, h)?;
    Ok(generic::run(g, h, false).0)
}

/// Whether `<g>_H` is the complete graph.
pub fn percolates(g: &SimpleGraph, rule: &Rule) -> Result<bool> {
    if g.is_complete() {
        return Ok(true);
    }
    Ok(closure(g, rule)?.is_complete())
}
