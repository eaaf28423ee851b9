//! The `gbp` command-line front end.
//!
//! Every subcommand writes one machine-readable document (JSON, or CSV for
//! `sweep`) to standard output, or to `--out` when given. `close`, `gadget` and
//! `wsat --construct` produce a graph as well; with `--out` that graph is written
//! to the file in edge-list format and the JSON summary still goes to standard
//! output.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 size-limit refusal.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::engine::{close, closure, Rule};
use crate::error::{Error, Result};
use crate::graph::{Edge, SimpleGraph};
use crate::montecarlo::{
    er_limit_check, estimate_pc, estimate_spanning_prob, sweep, sweep_csv,
};
use crate::oracles::{
    verify_2lminus3, verify_double_cover, verify_dext, verify_var_ext, verify_wsat_lower,
};
use crate::pattern::{
    build_gadget, kr_threshold_window, lambda_clique, named_pattern, wsat_bound,
    wsat_construction, PatternGraph,
};
use crate::witness::Witnesses;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gbp", version, about = "H-bootstrap percolation on complete host graphs")]
struct Cli {
    /// Master seed for randomised commands.
    #[arg(long, global = true, env = "HBP_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for Monte Carlo and oracle commands (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file (standard output when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closure of a seed graph.
    Close {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: String,
        /// Include the round-by-round infection trace.
        #[arg(long)]
        trace: bool,
    },
    /// Prints `true` if the closure is complete.
    Percolates {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// Witness set and red-edge trace of an infected edge under `K_r`.
    Witness {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_parser = parse_edge)]
        edge: Edge,
    },
    /// The depth-`d` gadget of a pattern.
    Gadget {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        depth: usize,
    },
    /// Weak saturation number of `K_r` in `K_n`.
    Wsat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Also emit a percolating graph with that many edges.
        #[arg(long)]
        construct: bool,
    },
    /// Critical probability by coupled bisection.
    EstimatePc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0.1)]
        rtol: f64,
    },
    /// Percolation probability on an `(n, p)` grid, as CSV.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        p_grid: Vec<f64>,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        trials: u64,
    },
    /// Probability that `G(l, p)` is internally spanned under `K_4`.
    SpanningProb {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
    },
    /// `K_3` percolation at `p = (ln n + c) / n`.
    ErLimit {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        trials: u64,
    },
    /// Runs a brute-force oracle.
    Verify(VerifyArgs),
    /// Weak saturation bound, `lambda(K_r)` and the threshold window.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// One of wsat-lower, 2lminus3, double-cover, var-ext, dext.
    #[arg(long)]
    lemma: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    r_size: Option<usize>,
    #[arg(long)]
    s_size: Option<usize>,
    #[arg(long)]
    trials: Option<u64>,
}

fn parse_edge(s: &str) -> std::result::Result<Edge, String> {
    Edge::parse(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

/// Parses `argv` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Data(Error::Internal(e.to_string()))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::SizeLimit(_) => EXIT_SIZE_LIMIT,
                _ => EXIT_INVALID,
            }
        }
    }
}

fn read_graph(path: &Path) -> Result<SimpleGraph> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    SimpleGraph::parse_edge_list(&text)
}

/// A pattern name, or else a path to an edge-list file.
fn read_pattern(spec: &str) -> Result<PatternGraph> {
    match named_pattern(spec) {
        Ok(h) => Ok(h),
        Err(named_err) => {
            let path = Path::new(spec);
            if path.is_file() {
                PatternGraph::with_name(spec, read_graph(path)?)
            } else {
                Err(named_err)
            }
        }
    }
}

fn read_rule(spec: &str) -> Result<Rule> {
    read_pattern(spec).map(Rule::from_pattern)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Internal(e.to_string()))
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string(v).map_err(|e| Error::Internal(e.to_string()))?;
    text.push('\n');
    emit(out, &text)
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

fn dispatch(cli: &Cli) -> std::result::Result<(), Failure> {
    let out = cli.out.as_deref();
    let seed = cli.seed;
    match &cli.command {
        Command::Close { graph, pattern, trace } => {
            let g = read_graph(graph)?;
            let rule = read_rule(pattern)?;
            let (c, t) = close(&g, &rule)?;
            let mut doc = json!({
                "n": g.vertex_count(),
                "pattern": rule.to_string(),
                "seed_edges": g.edge_count(),
                "closure_edges": c.edge_count(),
                "percolates": c.is_complete(),
                "rounds": t.round_count(),
                "closure": c.edges(),
            });
            if *trace {
                doc["trace"] = to_value(&t)?;
            }
            if let Some(path) = out {
                write_file(path, &c.to_edge_list())?;
            }
            emit_json(None, &doc)?;
        }
        Command::Percolates { graph, pattern } => {
            let g = read_graph(graph)?;
            let rule = read_rule(pattern)?;
            let done = g.is_complete() || closure(&g, &rule)?.is_complete();
            emit(out, &format!("{done}\n"))?;
        }
        Command::Witness { graph, pattern, edge } => {
            let g = read_graph(graph)?;
            let r = match read_rule(pattern)? {
                Rule::Clique(r) => r,
                Rule::Pattern(h) => {
                    return Err(Error::UnsupportedPattern(format!(
                        "witness tracing needs a clique pattern, got {}",
                        h.name()
                    ))
                    .into())
                }
            };
            if edge.v() >= g.vertex_count() {
                return Err(Error::InvalidInput(format!(
                    "edge {edge} is outside the vertex range 0..{}",
                    g.vertex_count()
                ))
                .into());
            }
            let mut w = Witnesses::new(&g, r)?;
            let set = w.witness_set(*edge)?;
            let trace = w.red_edge_trace(*edge)?;
            emit_json(
                out,
                &json!({
                    "pattern": format!("K{r}"),
                    "witness_set": to_value(&set)?,
                    "red_edge_trace": to_value(&trace)?,
                }),
            )?;
        }
        Command::Gadget { pattern, depth } => {
            let h = read_pattern(pattern)?;
            let gd = build_gadget(&h, *depth)?;
            let mut doc = json!({
                "pattern": h.name(),
                "depth": gd.depth,
                "vertices": gd.graph.vertex_count(),
                "edges": gd.graph.edge_count(),
                "root": gd.root,
                "sequence": gd.sequence,
                "copies": gd.copies,
            });
            match out {
                Some(path) => write_file(path, &gd.graph.to_edge_list())?,
                None => doc["graph"] = to_value(&gd.graph.edges())?,
            }
            emit_json(None, &doc)?;
        }
        Command::Wsat { n, r, construct } => {
            let bound = wsat_bound(*n, *r)?;
            let mut doc = json!({ "n": n, "r": r, "bound": bound });
            if *construct {
                let g = wsat_construction(*n, *r)?;
                match out {
                    Some(path) => write_file(path, &g.to_edge_list())?,
                    None => doc["graph"] = to_value(&g.edges())?,
                }
            }
            emit_json(None, &doc)?;
        }
        Command::EstimatePc { n, pattern, trials, rtol } => {
            let rule = read_rule(pattern)?;
            let est = estimate_pc(*n, &rule, *trials, *rtol, seed)?;
            emit(out, &format!("{}\n", est.summary_json()))?;
        }
        Command::Sweep { n_list, p_grid, pattern, trials } => {
            let rule = read_rule(pattern)?;
            let records = sweep(n_list, p_grid, &rule, *trials, seed)?;
            emit(out, &sweep_csv(&records))?;
        }
        Command::SpanningProb { l, p, trials } => {
            let est = estimate_spanning_prob(*l, *p, *trials, seed)?;
            if est.warning {
                eprintln!("warning: p * l^2 > 1, the bracket is not guaranteed");
            }
            let mut doc = to_value(&est)?;
            doc["master_seed"] = json!(seed);
            emit_json(out, &doc)?;
        }
        Command::ErLimit { n, c, trials } => {
            let est = er_limit_check(*n, *c, *trials, seed)?;
            let mut doc = to_value(&est)?;
            doc["master_seed"] = json!(seed);
            emit_json(out, &doc)?;
        }
        Command::Verify(args) => {
            let report = run_oracle(args, seed)?;
            emit_json(out, &to_value(&report)?)?;
        }
        Command::Bounds { n, r } => {
            let bound = wsat_bound(*n, *r)?;
            let lambda = if *r >= 3 { Some(lambda_clique(*r)?.to_string()) } else { None };
            let window = if *r >= 4 { Some(kr_threshold_window(*n, *r)?) } else { None };
            emit_json(
                out,
                &json!({
                    "n": n,
                    "r": r,
                    "wsat_bound": bound,
                    "lambda": lambda,
                    "threshold_low": window.map(|w| w.0),
                    "threshold_high": window.map(|w| w.1),
                }),
            )?;
        }
    }
    Ok(())
}

fn need<T: Copy>(v: Option<T>, flag: &str, lemma: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("verify --lemma {lemma} needs --{flag}")))
}

fn run_oracle(a: &VerifyArgs, seed: u64) -> std::result::Result<crate::oracles::OracleReport, Failure> {
    let lemma = a.lemma.as_str();
    let report = match lemma {
        "wsat-lower" => verify_wsat_lower(need(a.n, "n", lemma)?, a.r.unwrap_or(4))?,
        "2lminus3" => verify_2lminus3(need(a.l, "l", lemma)?)?,
        "double-cover" => verify_double_cover(need(a.m, "m", lemma)?, need(a.r, "r", lemma)?)?,
        "var-ext" => {
            let name = a
                .pattern
                .as_deref()
                .ok_or_else(|| Failure::Usage("verify --lemma var-ext needs --pattern".into()))?;
            verify_var_ext(&read_pattern(name)?, need(a.depth, "depth", lemma)?)?
        }
        "dext" => verify_dext(
            need(a.r_size, "r-size", lemma)?,
            need(a.s_size, "s-size", lemma)?,
            a.trials.unwrap_or(1000),
            seed,
        )?,
        other => {
            return Err(Failure::Usage(format!(
                "unknown lemma `{other}` (expected wsat-lower, 2lminus3, double-cover, var-ext or dext)"
            )))
        }
    };
    Ok(report)
}
