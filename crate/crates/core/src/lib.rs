//! H-bootstrap percolation on the complete graph `K_n`.
//!
//! A seed graph `G` grows round by round: a missing edge is added as soon as it
//! is the only missing edge of some copy of the pattern `H`. The crate provides
//! exact closure engines (a generic pattern engine and a `K_r` fast path), the
//! witness-set and red-edge tracing algorithms, the `K_4` clique process,
//! brute-force oracles for the small combinatorial lemmas, and a seeded Monte
//! Carlo harness for critical probabilities.
//!
//! ```
//! use graph_bootstrap::{engine, graph::SimpleGraph};
//!
//! let g = SimpleGraph::parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3").unwrap();
//! let (closure, trace) = engine::close_kr(&g, 4).unwrap();
//! assert!(closure.is_complete());
//! assert_eq!(trace.infection_round(graph_bootstrap::graph::Edge::new(2, 3)), Some(1));
//! ```

pub mod bitset;
pub mod clique;
pub mod cli;
pub mod engine;
pub mod error;
pub mod graph;
pub mod montecarlo;
pub mod oracles;
pub mod pattern;
pub mod sampling;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Edge, SimpleGraph};
pub use pattern::PatternGraph;
