//! Builds the concrete negotiation game for a requirement λ, a deviating
//! player i and a start vertex: the reachable two-player Prover/Challenger
//! graph whose states carry a memory of visited vertices and whose
//! acceptation/deviation arcs carry multidimensional outcome weights.

use exact_lp::{DimValue, OutcomeVector};
use game_core::{EdgeId, ExtRational, Game, PlayerId, Rational, Requirement, VertexId};
use graph_kit::{DiGraph, NodeId};
use num_traits::Zero;
use std::collections::HashMap;

/// Set of vertices as a 64-bit mask; games are capped at 64 vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn singleton(v: VertexId) -> Self {
        assert!(v.0 < 64);
        VertexSet(1 << v.0)
    }

    pub fn contains(self, v: VertexId) -> bool {
        v.0 < 64 && self.0 & (1 << v.0) != 0
    }

    pub fn insert(self, v: VertexId) -> Self {
        assert!(v.0 < 64);
        VertexSet(self.0 | (1 << v.0))
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        (0..64).filter(move |b| self.0 & (1u64 << b) != 0).map(VertexId)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConcState {
    /// Prover proposes the next edge from `v`; memory holds visited vertices.
    ProverAt(VertexId, VertexSet),
    /// Challenger reacts to the proposed edge.
    ChallengerAt(EdgeId, VertexSet),
}

impl ConcState {
    pub fn memory(&self) -> VertexSet {
        match self {
            ConcState::ProverAt(_, m) | ConcState::ChallengerAt(_, m) => *m,
        }
    }

    pub fn is_prover(&self) -> bool {
        matches!(self, ConcState::ProverAt(..))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransKind {
    Proposal,
    Acceptation,
    Deviation,
}

#[derive(Clone, Debug)]
pub struct ConcTransition {
    pub from: StateId,
    pub to: StateId,
    pub kind: TransKind,
    pub weight: OutcomeVector,
}

/// Reachable fragment of the concrete negotiation game. State and transition
/// ids follow the deterministic BFS discovery order.
#[derive(Clone, Debug)]
pub struct ConcGame {
    pub deviating_player: PlayerId,
    pub start: StateId,
    states: Vec<ConcState>,
    transitions: Vec<ConcTransition>,
    out: Vec<Vec<usize>>,
    index: HashMap<ConcState, StateId>,
}

impl ConcGame {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, s: StateId) -> ConcState {
        self.states[s.0]
    }

    pub fn states(&self) -> impl Iterator<Item = (StateId, ConcState)> + '_ {
        self.states.iter().enumerate().map(|(i, s)| (StateId(i), *s))
    }

    pub fn state_id(&self, s: &ConcState) -> Option<StateId> {
        self.index.get(s).copied()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn transition(&self, i: usize) -> &ConcTransition {
        &self.transitions[i]
    }

    pub fn transitions(&self) -> impl Iterator<Item = &ConcTransition> {
        self.transitions.iter()
    }

    /// Outgoing transition indices in construction order: for Challenger
    /// states the Acceptation first, then Deviations in edge order.
    pub fn out_transitions(&self, s: StateId) -> &[usize] {
        &self.out[s.0]
    }

    /// The underlying digraph; NodeId(i) is StateId(i) and arc indices match
    /// transition indices.
    pub fn digraph(&self) -> DiGraph {
        let mut g = DiGraph::new(self.states.len());
        for t in &self.transitions {
            g.add_arc(NodeId(t.from.0), NodeId(t.to.0));
        }
        g
    }
}

/// Renders a memory set using the game's vertex names.
pub fn describe_memory(g: &Game, m: VertexSet) -> String {
    let names: Vec<&str> = m.iter().map(|v| g.vertex_name(v)).collect();
    format!("{{{}}}", names.join(","))
}

/// Canonical textual form of a state, also used as a deterministic sort key.
pub fn describe_state(g: &Game, s: ConcState) -> String {
    match s {
        ConcState::ProverAt(v, m) => {
            format!("({},{})", g.vertex_name(v), describe_memory(g, m))
        }
        ConcState::ChallengerAt(e, m) => {
            let edge = g.edge(e);
            format!(
                "({}{},{})",
                g.vertex_name(edge.from),
                g.vertex_name(edge.to),
                describe_memory(g, m)
            )
        }
    }
}

/// Weight of traversing `edge` with memory `m`: per player j the doubled gap
/// between j's payoff and the strongest λ-value j has seen (Inactive when
/// there is none or it is −∞, Infeasible when it is +∞), and on the main
/// dimension the doubled payoff of the deviating player.
fn edge_weight(
    g: &Game,
    lambda: &Requirement,
    i: PlayerId,
    e: EdgeId,
    m: VertexSet,
) -> OutcomeVector {
    let two = Rational::from_integer(2.into());
    let main = &two * g.weight(e, i);
    let per_player = g
        .players()
        .map(|j| {
            let best = m
                .iter()
                .filter(|&v| g.owner(v) == j)
                .map(|v| lambda[v].clone())
                .max();
            match best {
                None | Some(ExtRational::MinusInf) => DimValue::Inactive,
                Some(ExtRational::PlusInf) => DimValue::Infeasible,
                Some(ExtRational::Finite(t)) => {
                    DimValue::Active(&two * (g.weight(e, j) - t))
                }
            }
        })
        .collect();
    OutcomeVector::new(main, per_player)
}

fn zero_weight(g: &Game) -> OutcomeVector {
    OutcomeVector::new(
        Rational::zero(),
        g.players().map(|_| DimValue::Active(Rational::zero())).collect(),
    )
}

/// Breadth-first reachable construction from (v0, {v0}). Proposals follow the
/// edge declaration order; each Challenger state gets its Acceptation first
/// and then one Deviation per alternative edge of the deviating player.
pub fn build_concrete_game(
    g: &Game,
    lambda: &Requirement,
    i: PlayerId,
    v0: VertexId,
) -> ConcGame {
    build_concrete_game_from(g, lambda, i, &[v0])
}

/// Multi-rooted variant: one game covering the union of the reachable parts
/// from every (v, {v}) entry in `roots`. Subgame searches from different
/// entries then share one state space and one set of per-SCC caches.
pub fn build_concrete_game_from(
    g: &Game,
    lambda: &Requirement,
    i: PlayerId,
    roots: &[VertexId],
) -> ConcGame {
    assert!(g.vertex_count() <= 64, "games are capped at 64 vertices");
    assert_eq!(lambda.len(), g.vertex_count());
    assert!(!roots.is_empty());
    let mut states: Vec<ConcState> = Vec::new();
    let mut index: HashMap<ConcState, StateId> = HashMap::new();
    let mut queue: std::collections::VecDeque<StateId> = Default::default();

    let mut intern = |s: ConcState,
                      states: &mut Vec<ConcState>,
                      queue: &mut std::collections::VecDeque<StateId>|
     -> StateId {
        if let Some(&id) = index.get(&s) {
            return id;
        }
        let id = StateId(states.len());
        states.push(s);
        index.insert(s, id);
        queue.push_back(id);
        id
    };

    let mut start = StateId(0);
    for (k, &v0) in roots.iter().enumerate() {
        let entry = intern(
            ConcState::ProverAt(v0, VertexSet::singleton(v0)),
            &mut states,
            &mut queue,
        );
        if k == 0 {
            start = entry;
        }
    }
    let mut transitions: Vec<ConcTransition> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();

    while let Some(id) = queue.pop_front() {
        let state = states[id.0];
        let mut outgoing = Vec::new();
        match state {
            ConcState::ProverAt(v, m) => {
                for &e in g.out_edges(v) {
                    let to = intern(ConcState::ChallengerAt(e, m), &mut states, &mut queue);
                    outgoing.push(transitions.len());
                    transitions.push(ConcTransition {
                        from: id,
                        to,
                        kind: TransKind::Proposal,
                        weight: zero_weight(g),
                    });
                }
            }
            ConcState::ChallengerAt(e, m) => {
                let edge = g.edge(e);
                let (u, v) = (edge.from, edge.to);
                let to = intern(
                    ConcState::ProverAt(v, m.insert(v)),
                    &mut states,
                    &mut queue,
                );
                outgoing.push(transitions.len());
                transitions.push(ConcTransition {
                    from: id,
                    to,
                    kind: TransKind::Acceptation,
                    weight: edge_weight(g, lambda, i, e, m),
                });
                if g.owner(u) == i {
                    for &d in g.out_edges(u) {
                        let w = g.edge(d).to;
                        if w == v {
                            continue;
                        }
                        let to = intern(
                            ConcState::ProverAt(w, VertexSet::singleton(w)),
                            &mut states,
                            &mut queue,
                        );
                        outgoing.push(transitions.len());
                        transitions.push(ConcTransition {
                            from: id,
                            to,
                            kind: TransKind::Deviation,
                            weight: edge_weight(g, lambda, i, d, m),
                        });
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), id.0);
        out.push(outgoing);
    }

    ConcGame {
        deviating_player: i,
        start,
        states,
        transitions,
        out,
        index,
    }
}

/// Vertex components of the Prover states along a concrete path.
pub fn project(cg: &ConcGame, path: &[StateId]) -> Vec<VertexId> {
    path.iter()
        .filter_map(|&s| match cg.state(s) {
            ConcState::ProverAt(v, _) => Some(v),
            ConcState::ChallengerAt(..) => None,
        })
        .collect()
}
