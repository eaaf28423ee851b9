//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so that the report is always printed.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use graph_bootstrap::clique::{al_scan, clique_process, k4_closure_via_cliques};
use graph_bootstrap::cli;
use graph_bootstrap::engine::{close_kr, percolates, Rule};
use graph_bootstrap::graph::{erdos_renyi, is_connected, Edge, SimpleGraph};
use graph_bootstrap::oracles::{
    verify_2lminus3, verify_double_cover, verify_var_ext, verify_wsat_lower,
};
use graph_bootstrap::pattern::{build_gadget, complete_pattern, wsat_bound, wsat_construction};
use graph_bootstrap::witness::{check_extremal, check_tech, Witnesses};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

struct Report {
    lines: Vec<(usize, bool, String)>,
}

impl Report {
    fn record(&mut self, id: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> Duration {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        self.push(id, title, budget, took, o);
        took
    }

    fn push(&mut self, id: usize, title: &str, budget: Duration, took: Duration, o: Outcome) {
        let in_time = took <= budget;
        let pass = o.pass && in_time;
        let mut detail = format!("{title}: {} ({:.1}s of {}s)", o.detail, took.as_secs_f64(), budget.as_secs());
        if !in_time {
            detail.push_str(" over the time budget");
        }
        println!("criterion {id:>2} [{}] {detail}", if pass { "PASS" } else { "FAIL" });
        self.lines.push((id, pass, detail));
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn gbp(args: &[&str]) -> i32 {
    cli::run(std::iter::once("gbp").chain(args.iter().copied()))
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).expect("output file")).expect("json output")
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = 0;
    let mut connected = 0;
    for i in 0..500u64 {
        let n = rng.gen_range(2..=64usize);
        let c = rng.gen_range(-2.0..3.0);
        let p = (((n as f64).ln() + c) / n as f64).clamp(0.0, 1.0);
        let g = erdos_renyi(n, p, 1000 + i).unwrap();
        let conn = is_connected(&g);
        connected += conn as usize;
        if percolates(&g, &Rule::Clique(3)).unwrap() != conn {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("500 instances ({connected} connected), {mismatches} mismatches"),
    )
}

fn er_limit_runs(dir: &Path, threads: &str) -> Vec<Value> {
    [("0", "c0"), ("2", "c2")]
        .iter()
        .map(|(c, tag)| {
            let path = dir.join(format!("er_{tag}_t{threads}.json"));
            let code = gbp(&[
                "--threads", threads, "--seed", "2", "--out", path.to_str().unwrap(),
                "er-limit", "--n", "5000", "--c", c, "--trials", "2000",
            ]);
            assert_eq!(code, 0, "er-limit exit code");
            read_json(&path)
        })
        .collect()
}

fn criterion_2(docs: &[Value]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for d in docs {
        let point = d["estimate"]["point"].as_f64().unwrap();
        let limit = d["limit"].as_f64().unwrap();
        pass &= (point - limit).abs() <= 0.05;
        parts.push(format!("c={} point {point:.4} vs {limit:.4}", d["c"]));
    }
    outcome(pass, parts.join(", "))
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    for n in 4..=20 {
        let g = wsat_construction(n, 4).unwrap();
        pass &= g.edge_count() as u64 == wsat_bound(n, 4).unwrap();
        pass &= percolates(&g, &Rule::Clique(4)).unwrap();
    }
    let mut cases = 0;
    for n in 4..=6 {
        let r = verify_wsat_lower(n, 4).unwrap();
        pass &= r.passed();
        cases += r.cases_checked;
    }
    outcome(pass, format!("constructions n=4..20 percolate; {cases} graphs with wsat-1 edges, none percolates"))
}

fn criterion_4() -> Outcome {
    let mut pass = true;
    let mut cases = 0;
    for l in 4..=6 {
        let r = verify_2lminus3(l).unwrap();
        pass &= r.passed();
        cases += r.cases_checked;
    }
    outcome(pass, format!("l=4,5,6, {cases} graphs, no counterexample"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut witnesses = 0usize;
    let mut steps = 0usize;
    let mut violations = Vec::new();
    for r in [4usize, 5] {
        for i in 0..500u64 {
            let p = rng.gen_range(0.25..0.75);
            let g = erdos_renyi(12, p, 50_000 + 1000 * r as u64 + i).unwrap();
            let mut w = Witnesses::new(&g, r).unwrap();
            let infected: Vec<Edge> = w.trace().order().map(|ev| ev.edge).collect();
            for e in infected {
                let set = w.witness_set(e).unwrap();
                witnesses += 1;
                if !check_extremal(&set, r).unwrap() {
                    violations.push(format!("extremal r={r} graph {i} edge {e}"));
                }
                let trace = w.red_edge_trace(e).unwrap();
                for t in 1..=trace.steps() {
                    steps += 1;
                    if !check_tech(&trace, r, t).unwrap() {
                        violations.push(format!("tech r={r} graph {i} edge {e} step {t}"));
                    }
                }
                let last = trace.component_stats.last().unwrap();
                if last.components != 1 || last.k != 0 {
                    violations.push(format!("termination r={r} graph {i} edge {e}"));
                }
            }
        }
    }
    let first = violations.first().cloned().unwrap_or_default();
    outcome(
        violations.is_empty(),
        format!("{witnesses} witness sets, {steps} trace steps, {} violations {first}", violations.len()),
    )
}

fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut failures = Vec::new();
    for r in 4..=7usize {
        let h = complete_pattern(r).unwrap();
        let (v, e) = (r, r * (r - 1) / 2);
        for d in 1..=10 {
            let gd = build_gadget(&h, d).unwrap();
            let shape = gd.graph.vertex_count() == (v - 2) * d + 2
                && gd.graph.edge_count() == (e - 2) * d + 1;
            let (_, t) = close_kr(&gd.graph, r).unwrap();
            let round = t.infection_round(gd.root) == Some(d);
            if !(shape && round) {
                pass = false;
                failures.push(format!("K{r} d={d}"));
            }
        }
    }
    let h = complete_pattern(4).unwrap();
    for d in 1..=3 {
        let gd = build_gadget(&h, d).unwrap();
        for e in gd.graph.edges() {
            let (c, _) = close_kr(&gd.graph.without_edge(e), 4).unwrap();
            if c.contains_edge(gd.root) {
                pass = false;
                failures.push(format!("K4 d={d} minus {e}"));
            }
        }
    }
    outcome(pass, format!("K4..K7, d=1..10 and K4 edge deletions d<=3; failures: {failures:?}"))
}

fn triangle_free(items: &[Vec<usize>]) -> bool {
    let meet = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter().copied().filter(|x| b.contains(x)).collect()
    };
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            let ij = meet(&items[i], &items[j]);
            if ij.len() != 1 {
                continue;
            }
            for k in j + 1..items.len() {
                let ik = meet(&items[i], &items[k]);
                let jk = meet(&items[j], &items[k]);
                if ik.len() == 1 && jk.len() == 1 && ij[0] != ik[0] && ij[0] != jk[0] && ik[0] != jk[0] {
                    return false;
                }
            }
        }
    }
    true
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let mut percolating = 0;
    for i in 0..1000u64 {
        let n = rng.gen_range(4..=24usize);
        let p = rng.gen_range(0.1..0.6);
        let g = erdos_renyi(n, p, 70_000 + i).unwrap();
        let (closed, _) = close_kr(&g, 4).unwrap();
        if k4_closure_via_cliques(&g) != closed {
            failures.push(format!("closure mismatch on graph {i}"));
        }
        let coll = clique_process(&g);
        let items: Vec<Vec<usize>> = coll.items.iter().map(|it| it.vertices.clone()).collect();
        let mut covered = SimpleGraph::new(n);
        for vs in &items {
            for (a, &u) in vs.iter().enumerate() {
                for &v in &vs[a + 1..] {
                    if covered.has_edge(u, v) {
                        failures.push(format!("overlapping cliques on graph {i}"));
                    }
                    covered.add_edge(u, v);
                }
            }
        }
        for a in 0..items.len() {
            for b in a + 1..items.len() {
                if items[a].iter().filter(|x| items[b].contains(x)).count() > 1 {
                    failures.push(format!("pair left on graph {i}"));
                }
            }
        }
        if !triangle_free(&items) {
            failures.push(format!("triangle left on graph {i}"));
        }
        if coll.percolates() {
            percolating += 1;
            for l in 1..=n {
                match al_scan(&coll, l) {
                    Some(k) if k.len() >= l && k.len() <= 3 * l => {}
                    _ => failures.push(format!("no clique in [{l}, {}] on graph {i}", 3 * l)),
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("1000 graphs ({percolating} percolating), {} failures {}", failures.len(), failures.first().cloned().unwrap_or_default()),
    )
}

const PLP_LS: [usize; 4] = [3, 4, 5, 6];
const PLP_SCALES: [f64; 3] = [1.0, 0.7, 0.5];

fn plp_runs(dir: &Path, threads: &str) -> Vec<Value> {
    let mut docs = Vec::new();
    for l in PLP_LS {
        for s in PLP_SCALES {
            let p = format!("{}", s / (l * l) as f64);
            let path = dir.join(format!("plp_{l}_{s}_t{threads}.json"));
            let code = gbp(&[
                "--threads", threads, "--seed", "8", "--out", path.to_str().unwrap(),
                "spanning-prob", "--l", &l.to_string(), "--p", &p, "--trials", "100000",
            ]);
            assert_eq!(code, 0, "spanning-prob exit code");
            docs.push(read_json(&path));
        }
    }
    docs
}

fn criterion_8(docs: &[Value]) -> Outcome {
    let mut pass = true;
    let mut bad = Vec::new();
    for d in docs {
        let l = d["l"].as_u64().unwrap();
        let p = d["p"].as_f64().unwrap();
        let lo = d["estimate"]["ci_low"].as_f64().unwrap();
        let hi = d["estimate"]["ci_high"].as_f64().unwrap();
        let ok = if l == 3 {
            let exact = p * p * p;
            lo <= exact && exact <= hi
        } else {
            let lb = d["lower_bound"].as_f64().unwrap();
            let ub = d["upper_bound"].as_f64().unwrap();
            hi >= lb && lo <= ub
        };
        if !ok {
            pass = false;
            bad.push(format!("l={l} p={p}"));
        }
    }
    outcome(pass, format!("{} cells of 1e5 trials, inconsistent cells: {bad:?}", docs.len()))
}

const PC_NS: [usize; 3] = [1024, 2048, 4096];

fn pc_runs(dir: &Path, threads: &str) -> Vec<Value> {
    PC_NS
        .iter()
        .map(|n| {
            let path = dir.join(format!("pc_{n}_t{threads}.json"));
            let code = gbp(&[
                "--threads", threads, "--seed", "9", "--out", path.to_str().unwrap(),
                "estimate-pc", "--n", &n.to_string(), "--pattern", "K4", "--trials", "400", "--rtol", "0.1",
            ]);
            assert_eq!(code, 0, "estimate-pc exit code");
            read_json(&path)
        })
        .collect()
}

fn criterion_9(docs: &[Value]) -> Outcome {
    let mut pass = true;
    let mut norms = Vec::new();
    let mut points = Vec::new();
    for d in docs {
        let n = d["n"].as_u64().unwrap() as f64;
        let point = d["p_c_estimate"].as_f64().unwrap();
        let norm = point * (n * n.ln()).sqrt();
        pass &= (0.1..=50.0).contains(&norm);
        norms.push(norm);
        points.push(point);
    }
    for w in norms.windows(2) {
        pass &= (0.5..=2.0).contains(&(w[1] / w[0]));
    }
    let decreasing = points.windows(2).all(|w| w[1] < w[0]);
    outcome(
        pass,
        format!(
            "p_c = {points:.5?}, p_c*sqrt(n ln n) = {norms:.3?}, point decreasing in n: {decreasing}"
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut pass = true;
    let mut cases = 0;
    for m in 2..=3 {
        for r in 4..=6 {
            let rep = verify_double_cover(m, r).unwrap();
            pass &= rep.passed();
            cases += rep.cases_checked;
        }
    }
    for (r, d) in [(4, 1), (4, 2), (5, 1)] {
        let rep = verify_var_ext(&complete_pattern(r).unwrap(), d).unwrap();
        pass &= rep.passed();
        cases += rep.cases_checked;
    }
    outcome(pass, format!("double cover m=2..3, r=4..6 and var-ext (K4, d<=2), (K5, 1): {cases} cases"))
}

fn files_identical(dir: &Path, a: &str, b: &str) -> bool {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|name| name.ends_with(a))
        .collect();
    names.sort();
    !names.is_empty()
        && names.iter().all(|name| {
            let other = name.replace(a, b);
            fs::read(dir.join(name)).ok() == fs::read(dir.join(&other)).ok()
        })
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut report = Report { lines: Vec::new() };

    report.record(1, "K3 percolation equals connectivity", secs(10), criterion_1);

    let start = Instant::now();
    let er1 = er_limit_runs(dir.path(), "1");
    report.push(2, "Erdos-Renyi limit", secs(300), start.elapsed(), criterion_2(&er1));

    report.record(3, "weak saturation", secs(120), criterion_3);
    report.record(4, "2l-3 edges", secs(300), criterion_4);
    report.record(5, "witness extremal bound", secs(300), criterion_5);
    report.record(6, "gadgets", secs(60), criterion_6);
    report.record(7, "clique process", secs(120), criterion_7);

    let start = Instant::now();
    let plp1 = plp_runs(dir.path(), "1");
    report.push(8, "spanning probability bracket", secs(600), start.elapsed(), criterion_8(&plp1));

    let start = Instant::now();
    let pc1 = pc_runs(dir.path(), "1");
    report.push(9, "K4 threshold scaling", secs(1800), start.elapsed(), criterion_9(&pc1));

    report.record(10, "double cover and gadget extension oracles", secs(120), criterion_10);

    let start = Instant::now();
    er_limit_runs(dir.path(), "4");
    plp_runs(dir.path(), "4");
    pc_runs(dir.path(), "4");
    let same = files_identical(dir.path(), "_t1.json", "_t4.json");
    let took = start.elapsed();
    report.push(
        11,
        "determinism",
        secs(3600),
        took,
        outcome(same, "criteria 2, 8, 9 outputs with --threads 1 and 4 are byte-identical"),
    );

    let failed: Vec<usize> = report.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", report.lines.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
