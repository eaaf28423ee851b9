mod common;

use graph_bootstrap::engine::{close, close_generic, close_kr, Rule};
use graph_bootstrap::graph::{erdos_renyi, Edge, SimpleGraph};
use graph_bootstrap::pattern::{complete_pattern, named_pattern, PatternGraph};

use common::{completes, naive_rounds};

fn round_edges(rounds: &[Vec<graph_bootstrap::engine::InfectionEvent>]) -> Vec<Vec<Edge>> {
    rounds.iter().map(|r| r.iter().map(|ev| ev.edge).collect()).collect()
}

fn state_before(g: &SimpleGraph, rounds: &[Vec<Edge>], t: usize) -> SimpleGraph {
    let mut cur = g.clone();
    for e in rounds[..t - 1].iter().flatten() {
        cur.add_edge(e.u(), e.v());
    }
    cur
}

/// The witness of every event is a copy of `H` completed by the event's edge in the
/// graph of the previous round.
fn check_generic_witnesses(g: &SimpleGraph, h: &PatternGraph, rounds: &[Vec<graph_bootstrap::engine::InfectionEvent>]) {
    let edges = round_edges(rounds);
    for (t, round) in rounds.iter().enumerate() {
        let before = state_before(g, &edges, t + 1);
        let plus_all = |ev: &graph_bootstrap::engine::InfectionEvent| before.with_edge(ev.edge);
        for ev in round {
            let phi = &ev.witness;
            assert_eq!(phi.len(), h.vertex_count());
            let plus = plus_all(ev);
            let mut uses_edge = false;
            for f in h.graph().edges() {
                let img = Edge::new(phi[f.u()], phi[f.v()]);
                assert!(plus.contains_edge(img), "witness edge {img} missing for {}", ev.edge);
                uses_edge |= img == ev.edge;
            }
            assert!(uses_edge);
        }
    }
}

#[test]
fn generic_engine_matches_full_rescan() {
    let names = ["K3", "K4", "C4", "C5", "K2,3", "K1,3"];
    for name in names {
        let h = named_pattern(name).unwrap();
        for seed in 0..25u64 {
            let n = 5 + (seed % 3) as usize;
            let g = erdos_renyi(n, 0.35, 900 + seed).unwrap();
            let expected = naive_rounds(&g, &h);
            let (c, t) = close_generic(&g, &h).unwrap();
            assert_eq!(round_edges(&t.rounds), expected, "{name} seed {seed}");
            assert_eq!(c.edge_count(), g.edge_count() + t.infected_count());
            check_generic_witnesses(&g, &h, &t.rounds);
        }
    }
}

#[test]
fn clique_engine_matches_full_rescan() {
    for r in 3..=5 {
        let h = complete_pattern(r).unwrap();
        for seed in 0..30u64 {
            let g = erdos_renyi(7, 0.45, 300 + seed).unwrap();
            let expected = naive_rounds(&g, &h);
            let (_, t) = close_kr(&g, r).unwrap();
            assert_eq!(round_edges(&t.rounds), expected, "K{r} seed {seed}");
            let edges = round_edges(&t.rounds);
            for (i, round) in t.rounds.iter().enumerate() {
                let before = state_before(&g, &edges, i + 1);
                for ev in round {
                    let w = &ev.witness;
                    assert_eq!(w.len(), r);
                    assert!(w.windows(2).all(|p| p[0] < p[1]));
                    assert!(w.contains(&ev.edge.u()) && w.contains(&ev.edge.v()));
                    for (a, &x) in w.iter().enumerate() {
                        for &y in &w[a + 1..] {
                            if Edge::new(x, y) != ev.edge {
                                assert!(before.has_edge(x, y));
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn clique_witness_is_lexicographically_least() {
    for seed in 0..20u64 {
        let g = erdos_renyi(9, 0.5, 40 + seed).unwrap();
        let (_, t) = close_kr(&g, 4).unwrap();
        let (_, tg) = close_generic(&g, &complete_pattern(4).unwrap()).unwrap();
        assert_eq!(t.rounds, tg.rounds);
    }
}

#[test]
fn round_numbers_follow_the_trace() {
    let h = named_pattern("C4").unwrap();
    let g = SimpleGraph::parse_edge_list("n=6\n0 1\n1 2\n2 3\n3 4\n4 5").unwrap();
    let (c, t) = close(&g, &Rule::from_pattern(h.clone())).unwrap();
    for e in c.edges() {
        let round = t.infection_round(e).unwrap();
        if round == 0 {
            assert!(g.contains_edge(e));
        } else {
            let before = state_before(&g, &round_edges(&t.rounds), round);
            assert!(!before.contains_edge(e));
            assert!(completes(&before, h.graph(), e));
        }
    }
    // a path on 6 vertices under C4: pairs at odd distance get joined
    assert!(t.infection_round(Edge::new(0, 3)) == Some(1));
}
