//! Shared machinery over one concrete game: reachability under full or
//! partial challenger strategies, and cached per-SCC optima.
//!
//! The branch and bound probes once per search node, so everything here
//! runs on reusable scratch buffers and dense indices instead of per-call
//! hash maps.

use std::cell::RefCell;
use std::collections::HashMap;

use conc_builder::{ConcGame, ConcState, StateId, TransKind, VertexSet};
use exact_lp::{circulation_min_star, DimValue, OutcomeVector};
use game_core::{ExtRational, Rational, VertexId};
use graph_kit::{min_cycle_mean, ArcId, DiGraph, NodeId};
use num_traits::Zero;

/// Partial challenger assignment, indexed by dense choice index: the chosen
/// transition, or `UNASSIGNED`.
pub(crate) type Assign = Vec<u32>;
pub(crate) const UNASSIGNED: u32 = u32::MAX;

pub(crate) struct Eval {
    pub value: ExtRational,
    /// States of the SCC attaining the value (first minimizer in SCC order).
    pub scc_states: Vec<StateId>,
}

/// Result of a cheap SCC inspection, before any hull minimization.
pub(crate) enum Stage {
    Exact(ExtRational),
    Lower(ExtRational),
}

/// Reachable fragment under a partial assignment. Unassigned choice states
/// are frontier states: they are visited but none of their arcs is taken.
pub(crate) struct Probe {
    pub visited: Vec<StateId>,
    pub arcs: Vec<usize>,
    /// Unassigned choice states, in discovery order.
    pub frontier: Vec<StateId>,
}

/// Reusable buffers for probing and SCC decomposition. Stamped arrays avoid
/// clearing: an entry is live only when its stamp equals the current epoch.
struct Scratch {
    epoch: u64,
    seen: Vec<u64>,
    queue: std::collections::VecDeque<StateId>,
    mark: Vec<u64>,
    local_of: Vec<u32>,
    off: Vec<u32>,
    cur: Vec<u32>,
    adj: Vec<u32>,
    idx: Vec<u32>,
    low: Vec<u32>,
    on: Vec<bool>,
    stk: Vec<u32>,
    frames: Vec<(u32, u32)>,
    comp_of: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            epoch: 0,
            seen: vec![0; n],
            queue: Default::default(),
            mark: vec![0; n],
            local_of: vec![0; n],
            off: Vec::new(),
            cur: Vec::new(),
            adj: Vec::new(),
            idx: Vec::new(),
            low: Vec::new(),
            on: Vec::new(),
            stk: Vec::new(),
            frames: Vec::new(),
            comp_of: Vec::new(),
        }
    }
}

pub(crate) struct Analysis<'a> {
    pub cg: &'a ConcGame,
    /// Challenger states with >= 2 successors, sorted by (edge, memory).
    pub choice_states: Vec<StateId>,
    /// State -> dense index into `choice_states`, or `UNASSIGNED`.
    pub choice_index: Vec<u32>,
    /// For prover states with singleton memory at their own vertex, that
    /// vertex. These are the entry states of deviation subgames.
    pub root_vertex: Vec<Option<VertexId>>,
    /// Challenger state -> its acceptation transition.
    accept_of: Vec<Option<usize>>,
    scratch: RefCell<Scratch>,
    minstar_cache: RefCell<HashMap<Vec<usize>, ExtRational>>,
    karp_cache: RefCell<HashMap<Vec<usize>, Rational>>,
}

impl<'a> Analysis<'a> {
    pub fn new(cg: &'a ConcGame) -> Self {
        let n = cg.state_count();
        let mut choice_index = vec![UNASSIGNED; n];
        let mut root_vertex = vec![None; n];
        let mut accept_of = vec![None; n];
        let mut keyed_choices: Vec<((usize, u64), StateId)> = Vec::new();
        for (s, st) in cg.states() {
            match st {
                ConcState::ProverAt(v, m) => {
                    if m == VertexSet::singleton(v) {
                        root_vertex[s.0] = Some(v);
                    }
                }
                ConcState::ChallengerAt(e, m) => {
                    for &t in cg.out_transitions(s) {
                        if cg.transition(t).kind == TransKind::Acceptation {
                            accept_of[s.0] = Some(t);
                        }
                    }
                    if cg.out_transitions(s).len() >= 2 {
                        keyed_choices.push(((e.0, m.0), s));
                    }
                }
            }
        }
        keyed_choices.sort();
        let choice_states: Vec<StateId> = keyed_choices.into_iter().map(|(_, s)| s).collect();
        for (i, &s) in choice_states.iter().enumerate() {
            choice_index[s.0] = i as u32;
        }
        Analysis {
            cg,
            choice_states,
            choice_index,
            root_vertex,
            accept_of,
            scratch: RefCell::new(Scratch::new(n)),
            minstar_cache: RefCell::new(HashMap::new()),
            karp_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn accept(&self, s: StateId) -> usize {
        self.accept_of[s.0].expect("challenger state has an acceptation")
    }

    /// Reachable states and arcs from `start` under a partial assignment.
    pub fn probe(&self, start: StateId, assign: &Assign) -> Probe {
        let mut sc = self.scratch.borrow_mut();
        let Scratch { epoch, seen, queue, .. } = &mut *sc;
        *epoch += 1;
        let ep = *epoch;
        let mut visited = Vec::new();
        let mut arcs = Vec::new();
        let mut frontier = Vec::new();
        queue.clear();
        seen[start.0] = ep;
        queue.push_back(start);
        while let Some(s) = queue.pop_front() {
            visited.push(s);
            let chosen = if self.cg.state(s).is_prover() {
                None
            } else {
                let ci = self.choice_index[s.0];
                if ci == UNASSIGNED {
                    Some(self.accept(s))
                } else {
                    match assign[ci as usize] {
                        UNASSIGNED => {
                            frontier.push(s);
                            continue;
                        }
                        t => Some(t as usize),
                    }
                }
            };
            match chosen {
                Some(t) => {
                    arcs.push(t);
                    let to = self.cg.transition(t).to;
                    if seen[to.0] != ep {
                        seen[to.0] = ep;
                        queue.push_back(to);
                    }
                }
                None => {
                    for &t in self.cg.out_transitions(s) {
                        arcs.push(t);
                        let to = self.cg.transition(t).to;
                        if seen[to.0] != ep {
                            seen[to.0] = ep;
                            queue.push_back(to);
                        }
                    }
                }
            }
        }
        Probe { visited, arcs, frontier }
    }

    /// Cyclic SCCs of the subgraph spanned by `states` and `arcs`, each with
    /// its internal arcs. Iterative Tarjan over scratch buffers; components
    /// come out in completion order, states and arcs in input order.
    pub fn sccs_of(&self, states: &[StateId], arcs: &[usize]) -> Vec<(Vec<StateId>, Vec<usize>)> {
        let n = states.len();
        let mut sc = self.scratch.borrow_mut();
        let Scratch {
            epoch,
            mark,
            local_of,
            off,
            cur,
            adj,
            idx,
            low,
            on,
            stk,
            frames,
            comp_of,
            ..
        } = &mut *sc;
        *epoch += 1;
        let ep = *epoch;
        for (i, &s) in states.iter().enumerate() {
            mark[s.0] = ep;
            local_of[s.0] = i as u32;
        }
        off.clear();
        off.resize(n + 1, 0);
        for &t in arcs {
            let tr = self.cg.transition(t);
            if mark[tr.from.0] == ep && mark[tr.to.0] == ep {
                off[local_of[tr.from.0] as usize + 1] += 1;
            }
        }
        for i in 0..n {
            off[i + 1] += off[i];
        }
        cur.clear();
        cur.extend_from_slice(&off[..n]);
        adj.clear();
        adj.resize(off[n] as usize, 0);
        for &t in arcs {
            let tr = self.cg.transition(t);
            if mark[tr.from.0] == ep && mark[tr.to.0] == ep {
                let a = local_of[tr.from.0] as usize;
                adj[cur[a] as usize] = local_of[tr.to.0];
                cur[a] += 1;
            }
        }
        idx.clear();
        idx.resize(n, u32::MAX);
        low.clear();
        low.resize(n, 0);
        on.clear();
        on.resize(n, false);
        stk.clear();
        frames.clear();
        comp_of.clear();
        comp_of.resize(n, u32::MAX);
        let mut counter: u32 = 0;
        let mut ncomp: u32 = 0;
        for root in 0..n {
            if idx[root] != u32::MAX {
                continue;
            }
            idx[root] = counter;
            low[root] = counter;
            counter += 1;
            stk.push(root as u32);
            on[root] = true;
            frames.push((root as u32, off[root]));
            while let Some(&(v, c)) = frames.last() {
                let vu = v as usize;
                if c < off[vu + 1] {
                    frames.last_mut().unwrap().1 += 1;
                    let w = adj[c as usize] as usize;
                    if idx[w] == u32::MAX {
                        idx[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stk.push(w as u32);
                        on[w] = true;
                        frames.push((w as u32, off[w]));
                    } else if on[w] && idx[w] < low[vu] {
                        low[vu] = idx[w];
                    }
                } else {
                    frames.pop();
                    if let Some(&(p, _)) = frames.last() {
                        let pu = p as usize;
                        if low[vu] < low[pu] {
                            low[pu] = low[vu];
                        }
                    }
                    if low[vu] == idx[vu] {
                        loop {
                            let w = stk.pop().expect("tarjan stack holds the component");
                            on[w as usize] = false;
                            comp_of[w as usize] = ncomp;
                            if w as usize == vu {
                                break;
                            }
                        }
                        ncomp += 1;
                    }
                }
            }
        }
        let mut comps: Vec<(Vec<StateId>, Vec<usize>)> =
            (0..ncomp).map(|_| (Vec::new(), Vec::new())).collect();
        for (i, &s) in states.iter().enumerate() {
            comps[comp_of[i] as usize].0.push(s);
        }
        for &t in arcs {
            let tr = self.cg.transition(t);
            if mark[tr.from.0] == ep && mark[tr.to.0] == ep {
                let a = comp_of[local_of[tr.from.0] as usize];
                let b = comp_of[local_of[tr.to.0] as usize];
                if a == b {
                    comps[a as usize].1.push(t);
                }
            }
        }
        comps.retain(|(_, internal)| !internal.is_empty());
        comps
    }

    /// Optimum of one SCC: minimal main cycle mean when a deviation arc is
    /// present, constrained cycle-hull minimum otherwise.
    pub fn opt(&self, arcs: &[usize]) -> ExtRational {
        match self.stage(arcs) {
            Stage::Exact(v) => v,
            Stage::Lower(_) => self.minstar(arcs),
        }
    }

    /// Cheap first look at an SCC: either its exact optimum, or a lower
    /// bound on it. The hull minimum never undercuts the best cycle mean,
    /// so the Karp value bounds min-star from below.
    pub fn stage(&self, arcs: &[usize]) -> Stage {
        let mut accept_weight = None;
        for &t in arcs {
            let tr = self.cg.transition(t);
            match tr.kind {
                TransKind::Deviation => {
                    return Stage::Exact(ExtRational::Finite(self.karp_main(arcs)))
                }
                TransKind::Acceptation => accept_weight = Some(&tr.weight),
                TransKind::Proposal => {}
            }
        }
        let pattern = accept_weight.expect("accept-only cyclic SCC contains an acceptation");
        if pattern.has_infeasible_dim() {
            return Stage::Exact(ExtRational::PlusInf);
        }
        let mut key: Vec<usize> = arcs.to_vec();
        key.sort_unstable();
        if let Some(v) = self.minstar_cache.borrow().get(&key) {
            return Stage::Exact(v.clone());
        }
        Stage::Lower(ExtRational::Finite(self.karp_main(arcs)))
    }

    pub fn karp_main(&self, arcs: &[usize]) -> Rational {
        let mut key: Vec<usize> = arcs.to_vec();
        key.sort_unstable();
        if let Some(v) = self.karp_cache.borrow().get(&key) {
            return v.clone();
        }
        let (g, weights) = self.subgraph(arcs, |tr| tr.weight.main.clone());
        let v = min_cycle_mean(&g, |a: ArcId| weights[a.0].clone())
            .expect("SCC subgraph is cyclic");
        self.karp_cache.borrow_mut().insert(key, v.clone());
        v
    }

    /// Constrained minimum over the cycle hull of an accept-only SCC.
    pub fn minstar(&self, arcs: &[usize]) -> ExtRational {
        let mut key: Vec<usize> = arcs.to_vec();
        key.sort_unstable();
        if let Some(v) = self.minstar_cache.borrow().get(&key) {
            return v.clone();
        }
        let v = self.minstar_uncached(arcs);
        self.minstar_cache.borrow_mut().insert(key, v.clone());
        v
    }

    fn minstar_uncached(&self, arcs: &[usize]) -> ExtRational {
        // Statuses are uniform across the SCC; read the pattern off any
        // acceptation arc and coerce proposal padding to match.
        let pattern = arcs
            .iter()
            .find(|&&t| self.cg.transition(t).kind == TransKind::Acceptation)
            .map(|&t| &self.cg.transition(t).weight)
            .expect("accept-only cyclic SCC contains an acceptation");
        if pattern.has_infeasible_dim() {
            return ExtRational::PlusInf;
        }
        let dims = pattern.per_player.len();
        let zero_like: Vec<DimValue> = (0..dims)
            .map(|j| match pattern.per_player[j] {
                DimValue::Active(_) => DimValue::Active(Rational::zero()),
                DimValue::Inactive => DimValue::Inactive,
                DimValue::Infeasible => unreachable!(),
            })
            .collect();
        let mut outcomes = Vec::with_capacity(arcs.len());
        let (g, kinds) = self.subgraph(arcs, |tr| (tr.kind, tr.weight.clone()));
        for (kind, weight) in kinds {
            match kind {
                TransKind::Proposal => outcomes.push(OutcomeVector {
                    main: Rational::zero(),
                    per_player: zero_like.clone(),
                }),
                TransKind::Acceptation => {
                    if weight.has_infeasible_dim() {
                        return ExtRational::PlusInf;
                    }
                    outcomes.push(weight);
                }
                TransKind::Deviation => unreachable!("deviation arc in accept-only SCC"),
            }
        }
        circulation_min_star(&g, &outcomes)
    }

    fn subgraph<T>(
        &self,
        arcs: &[usize],
        mut f: impl FnMut(&conc_builder::ConcTransition) -> T,
    ) -> (DiGraph, Vec<T>) {
        let mut local: HashMap<StateId, usize> = HashMap::new();
        for &t in arcs {
            let tr = self.cg.transition(t);
            for s in [tr.from, tr.to] {
                let next = local.len();
                local.entry(s).or_insert(next);
            }
        }
        let mut g = DiGraph::new(local.len());
        let mut payload = Vec::with_capacity(arcs.len());
        for &t in arcs {
            let tr = self.cg.transition(t);
            g.add_arc(NodeId(local[&tr.from]), NodeId(local[&tr.to]));
            payload.push(f(tr));
        }
        (g, payload)
    }

    /// Value of one full challenger assignment from `start`: min over
    /// reachable cyclic SCCs of their optimum. `assign` maps every reachable
    /// choice state to a transition index.
    pub fn evaluate(&self, start: StateId, assign: &Assign) -> Eval {
        let probe = self.probe(start, assign);
        debug_assert!(probe.frontier.is_empty(), "evaluate needs a total assignment");
        let mut value: Option<ExtRational> = None;
        let mut scc_states = Vec::new();
        for (states, comp_arcs) in self.sccs_of(&probe.visited, &probe.arcs) {
            let opt = self.opt(&comp_arcs);
            if value.as_ref().is_none_or(|v| opt < *v) {
                value = Some(opt);
                scc_states = states;
            }
        }
        Eval {
            value: value.expect("every strategy graph has a reachable cyclic SCC"),
            scc_states,
        }
    }
}
