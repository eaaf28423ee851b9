use std::collections::HashMap;

use serde::Serialize;

use crate::graph::Edge;

/// One infection: the new edge and the host vertices of the completed copy of `H`.
///
/// For the `K_r` engine the witness is the sorted vertex set of the clique; for
/// the generic engine it is `(phi(0), ..., phi(v(H)-1))` for the embedding `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfectionEvent {
    pub edge: Edge,
    pub witness: Vec<usize>,
}

/// Per-round record of a closure computation. Round `t` (1-based) is `rounds[t-1]`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct InfectionTrace {
    pub initial: Vec<Edge>,
    pub rounds: Vec<Vec<InfectionEvent>>,
    #[serde(skip)]
    index: HashMap<Edge, (usize, usize)>,
}

impl InfectionTrace {
    pub(crate) fn new(initial: Vec<Edge>) -> Self {
        InfectionTrace {
            initial,
            rounds: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub(crate) fn push_round(&mut self, mut events: Vec<InfectionEvent>) {
        events.sort_by_key(|ev| ev.edge);
        let t = self.rounds.len() + 1;
        for (i, ev) in events.iter().enumerate() {
            self.index.insert(ev.edge, (t, i));
        }
        self.rounds.push(events);
    }

    /// `Some(0)` for seed edges, `Some(t)` for edges infected in round `t`.
    pub fn infection_round(&self, e: Edge) -> Option<usize> {
        if let Some(&(t, _)) = self.index.get(&e) {
            return Some(t);
        }
        if self.initial.binary_search(&e).is_ok() {
            Some(0)
        } else {
            None
        }
    }

    pub fn event(&self, e: Edge) -> Option<&InfectionEvent> {
        self.index.get(&e).map(|&(t, i)| &self.rounds[t - 1][i])
    }

    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    pub fn infected_count(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }

    /// Infected edges in the canonical sequential order: by round, then lexicographically.
    pub fn order(&self) -> impl Iterator<Item = &InfectionEvent> {
        self.rounds.iter().flatten()
    }

    /// Position of `e` in [`order`](Self::order), if it was infected.
    pub fn position(&self, e: Edge) -> Option<usize> {
        let &(t, i) = self.index.get(&e)?;
        Some(self.rounds[..t - 1].iter().map(Vec::len).sum::<usize>() + i)
    }
}

/// Free-function form of [`InfectionTrace::infection_round`].
pub fn infection_round(trace: &InfectionTrace, e: Edge) -> Option<usize> {
    trace.infection_round(e)
}
