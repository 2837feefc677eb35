//! Concrete-game value by reachability-aware branch and bound.
//!
//! Challenger choices are fixed lazily, only at choice states actually
//! reached under the partial strategy; states never reached never branch.
//! Two upper bounds cut subtrees that cannot strictly beat the incumbent:
//!
//! * Any cyclic SCC whose arcs are all fixed survives in every completion
//!   and stays reachable there, so its optimum caps the subtree's value.
//! * If a deviation subgame entry (w, {w}) is reached, every completion's
//!   value is at most the value from (w, {w}): the min runs over a superset
//!   of the SCCs that the restricted strategy reaches from there.
//!
//! At a leaf every reachable choice is fixed and the minimum over reachable
//! SCC optima is the strategy's exact value.

use std::collections::{BTreeMap, HashMap};

use conc_builder::{StateId, TransKind};
use game_core::{ExtRational, VertexId};

use crate::analysis::{Analysis, Stage};
use crate::EngineError;

pub(crate) type Outcome = (ExtRational, BTreeMap<StateId, usize>, Vec<StateId>);

/// Known values of deviation subgames, by entry vertex, for the same
/// deviating player and requirement as the game under search.
pub(crate) type RootValues = HashMap<VertexId, ExtRational>;

struct Search<'a, 'b> {
    an: &'a Analysis<'b>,
    root_vals: &'a RootValues,
    budget: usize,
    nodes: usize,
    best: Option<Outcome>,
}

pub(crate) fn conc_value_bnb(
    an: &Analysis,
    budget: usize,
    root_vals: &RootValues,
) -> Result<Outcome, EngineError> {
    // Seed the incumbent with the everywhere-accepting strategy: complete,
    // cheap to evaluate, and usually close to the optimum, so the bounds
    // bite from the first branch.
    let accept_all: BTreeMap<StateId, usize> =
        an.choice_states.iter().map(|&s| (s, an.accept(s))).collect();
    let ev = an.evaluate(&accept_all);
    let mut search = Search {
        an,
        root_vals,
        budget,
        nodes: 0,
        best: Some((ev.value, accept_all, ev.scc_states)),
    };
    let mut partial: BTreeMap<StateId, usize> = BTreeMap::new();
    search.explore(&mut partial)?;
    Ok(search.best.expect("search visits at least one complete strategy"))
}

impl Search<'_, '_> {
    fn explore(&mut self, partial: &mut BTreeMap<StateId, usize>) -> Result<(), EngineError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(EngineError::StrategySpaceExceeded(self.budget));
        }
        let an = self.an;
        let probe = an.probe(partial);
        let incumbent = self.best.as_ref().map(|(v, _, _)| v.clone());
        let mut subgame_cap: Option<ExtRational> = None;
        for &s in &probe.visited {
            if s == an.cg.start {
                continue;
            }
            if let Some(v) = an.root_vertex[s.0] {
                if let Some(val) = self.root_vals.get(&v) {
                    if subgame_cap.as_ref().is_none_or(|c| val < c) {
                        subgame_cap = Some(val.clone());
                    }
                }
            }
        }
        if let (Some(c), Some(cur)) = (&subgame_cap, &incumbent) {
            if c <= cur {
                return Ok(());
            }
        }
        // Fixed-SCC bound, staged: sort components by a cheap lower bound
        // and resolve exact optima only while one could still fall at or
        // below the incumbent (or, at a leaf, lower the running minimum).
        let is_leaf = probe.frontier.is_empty();
        let comps = an.sccs_of(&probe.visited, &probe.arcs);
        let mut staged: Vec<(ExtRational, Option<ExtRational>, usize)> = comps
            .iter()
            .enumerate()
            .map(|(i, (_, arcs))| match an.stage(arcs) {
                Stage::Exact(v) => (v.clone(), Some(v), i),
                Stage::Lower(l) => (l, None, i),
            })
            .collect();
        staged.sort_by(|a, b| a.0.cmp(&b.0));
        let mut min_exact: Option<(ExtRational, usize)> = None;
        for (lower, exact, i) in staged {
            if min_exact.as_ref().is_some_and(|(m, _)| lower >= *m) {
                break;
            }
            if !is_leaf {
                // Internal nodes only ask whether some optimum prunes.
                match &incumbent {
                    Some(cur) if lower <= *cur => {}
                    _ => break,
                }
            }
            let o = exact.unwrap_or_else(|| an.minstar(&comps[i].1));
            if incumbent.as_ref().is_some_and(|cur| o <= *cur) {
                return Ok(());
            }
            if min_exact.as_ref().is_none_or(|(m, _)| o < *m) {
                min_exact = Some((o, i));
            }
        }
        if is_leaf {
            let (value, i) =
                min_exact.expect("complete strategy graph has a reachable cyclic SCC");
            debug_assert!(
                subgame_cap.as_ref().is_none_or(|c| value <= *c),
                "leaf value exceeds a reached subgame's value"
            );
            if incumbent.is_none_or(|cur| value > cur) {
                self.best = Some((value, partial.clone(), comps[i].0.clone()));
            }
            return Ok(());
        }
        // Acceptation first: it extends the seeded strategy and completes
        // fastest. Then deviations into subgames of known value, best first,
        // to raise the incumbent before the unknown ones.
        let s = probe.frontier[0];
        let accept = an.accept(s);
        let mut known: Vec<(ExtRational, usize)> = Vec::new();
        let mut rest: Vec<usize> = Vec::new();
        for &t in an.cg.out_transitions(s) {
            if t == accept {
                continue;
            }
            let tr = an.cg.transition(t);
            let val = (tr.kind == TransKind::Deviation)
                .then(|| an.root_vertex[tr.to.0].and_then(|w| self.root_vals.get(&w).cloned()))
                .flatten();
            match val {
                Some(v) => known.push((v, t)),
                None => rest.push(t),
            }
        }
        known.sort_by(|a, b| b.0.cmp(&a.0));
        for t in std::iter::once(accept)
            .chain(known.into_iter().map(|(_, t)| t))
            .chain(rest)
        {
            partial.insert(s, t);
            self.explore(partial)?;
        }
        partial.remove(&s);
        Ok(())
    }
}

/// Exhaustive maximum over total challenger assignments, the reference
/// semantics: first maximizer wins, choice states ascending by
/// (edge, memory), successors in construction order.
pub(crate) fn enumerate_assignments(an: &Analysis, cap: usize) -> Result<Outcome, EngineError> {
    let free = &an.choice_states;
    let options: Vec<&[usize]> = free.iter().map(|&s| an.cg.out_transitions(s)).collect();
    options
        .iter()
        .try_fold(1usize, |p, o| p.checked_mul(o.len()).filter(|&q| q <= cap))
        .ok_or(EngineError::StrategySpaceExceeded(cap))?;
    let mut counter = vec![0usize; free.len()];
    let mut best: Option<Outcome> = None;
    loop {
        let mut assign = BTreeMap::new();
        for (i, &s) in free.iter().enumerate() {
            assign.insert(s, options[i][counter[i]]);
        }
        let ev = an.evaluate(&assign);
        if best.as_ref().is_none_or(|(v, _, _)| ev.value > *v) {
            best = Some((ev.value, assign, ev.scc_states));
        }
        // Odometer, last position fastest: lexicographic over option tuples.
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(best.expect("at least one assignment"));
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < options[pos].len() {
                break;
            }
            counter[pos] = 0;
        }
    }
}
