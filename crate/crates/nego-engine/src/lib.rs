//! Negotiation function over mean-payoff games.
//!
//! The value of one concrete game is the best value the deviating player can
//! force against a prover who picks the play: a max over memoryless
//! challenger strategies of the min over reachable cyclic SCCs of their
//! optimum. `conc_value` computes it by reachability-aware branch and bound,
//! `conc_value_enumerated` by direct enumeration; both agree everywhere the
//! latter is affordable. On top of that sit the per-vertex negotiation
//! `nego_requirement`, the Kleene iteration `nego_sequence`, and
//! stationarity detection `iterate_fixed_point`.

mod analysis;
mod bnb;

use std::collections::{BTreeMap, BTreeSet};

use conc_builder::{build_concrete_game, ConcGame, ConcState, StateId};
use game_core::{vacuous_requirement, ExtRational, Game, PlayerId, Rational, Requirement};
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use analysis::Analysis;
use bnb::RootValues;

#[derive(Clone, Debug)]
pub struct EngineCaps {
    /// Upper bound on explored branch nodes per concrete game, and on the
    /// full strategy product during reference enumeration.
    pub strategy_cap: usize,
}

impl Default for EngineCaps {
    fn default() -> Self {
        EngineCaps { strategy_cap: 1 << 20 }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("strategy product exceeds cap {0}")]
    StrategySpaceExceeded(usize),
}

/// One challenger decision per choice state, as the chosen successor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MemorylessChoice {
    pub choices: BTreeMap<StateId, StateId>,
}

/// A concrete-game value with its witnesses: the strategy attaining it and
/// the reachable SCC where the minimum lands.
#[derive(Clone, Debug)]
pub struct ConcOutcome {
    pub value: ExtRational,
    pub choice: MemorylessChoice,
    pub worst_scc: Vec<StateId>,
}

/// Per-vertex witnesses behind one negotiation step.
#[derive(Clone, Debug)]
pub struct NegoTrace {
    pub per_vertex: Vec<ConcOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IterationOutcome {
    /// The iterate at `steps` maps to itself: an exact least fixed point.
    Stationary { lambda: Requirement, steps: usize },
    /// The iterate at `steps` moves by at most epsilon in every coordinate.
    /// Sound as a Yes for epsilon-stability; never evidence of a No.
    EpsilonStable { lambda: Requirement, steps: usize },
    NotConverged { lambda: Requirement },
}

/// Total strategy from a possibly partial winning assignment: choice states
/// the search never had to fix were unreachable under it, so accepting there
/// preserves the value.
fn to_choice(cg: &ConcGame, an: &Analysis, assign: &BTreeMap<StateId, usize>) -> MemorylessChoice {
    let mut choices = BTreeMap::new();
    for &s in &an.choice_states {
        let t = assign.get(&s).copied().unwrap_or_else(|| an.accept(s));
        choices.insert(s, cg.transition(t).to);
    }
    MemorylessChoice { choices }
}

/// Value of a concrete game by reachability-aware branch and bound.
pub fn conc_value(cg: &ConcGame, caps: &EngineCaps) -> Result<ExtRational, EngineError> {
    conc_value_traced(cg, caps).map(|o| o.value)
}

pub fn conc_value_traced(cg: &ConcGame, caps: &EngineCaps) -> Result<ConcOutcome, EngineError> {
    conc_value_with(cg, caps.strategy_cap, &RootValues::new())
}

fn conc_value_with(
    cg: &ConcGame,
    budget: usize,
    root_vals: &RootValues,
) -> Result<ConcOutcome, EngineError> {
    let an = Analysis::new(cg);
    let (value, assign, worst_scc) = bnb::conc_value_bnb(&an, budget, root_vals)?;
    Ok(ConcOutcome { value, choice: to_choice(cg, &an, &assign), worst_scc })
}

/// Exact values of the deviation subgames of `player` under `lambda`: one
/// entry per vertex in `wanted`, each the concrete-game value from that
/// vertex. Subgames bound each other, so finished values feed the remaining
/// searches, cheapest first via escalating node budgets.
fn subgame_values(
    g: &Game,
    lambda: &Requirement,
    player: PlayerId,
    wanted: &BTreeSet<game_core::VertexId>,
    caps: &EngineCaps,
) -> Result<RootValues, EngineError> {
    let mut budgets: Vec<usize> = [1 << 12, 1 << 14, 1 << 16, 1 << 18]
        .into_iter()
        .filter(|b| *b < caps.strategy_cap)
        .collect();
    budgets.push(caps.strategy_cap);
    let last = *budgets.last().unwrap();
    // One analysis per entry vertex, kept across passes: the per-SCC caches
    // make a retried search re-walk its old nodes at hash-lookup cost.
    let cgs: Vec<(game_core::VertexId, conc_builder::ConcGame)> = wanted
        .iter()
        .map(|&w| (w, build_concrete_game(g, lambda, player, w)))
        .collect();
    let mut analyses: Vec<(game_core::VertexId, Analysis)> =
        cgs.iter().map(|(w, cg)| (*w, Analysis::new(cg))).collect();
    let mut vals = RootValues::new();
    for budget in budgets {
        // Each finished subgame tightens the bounds for the rest, so retry
        // the stragglers until a whole pass makes no progress.
        loop {
            let attempts: Vec<(game_core::VertexId, Result<ExtRational, EngineError>)> = analyses
                .par_iter_mut()
                .filter(|(w, _)| !vals.contains_key(w))
                .map(|(w, an)| {
                    let t0 = std::time::Instant::now();
                    let r = bnb::conc_value_bnb(an, budget, &vals).map(|(v, _, _)| v);
                    if std::env::var_os("NEGO_DIAG").is_some() {
                        eprintln!(
                            "[sg] p={} w={} budget={} -> {:?} in {:?}",
                            player.0,
                            w.0,
                            budget,
                            r.as_ref().map(|v| v.to_string()),
                            t0.elapsed()
                        );
                    }
                    (*w, r)
                })
                .collect();
            let mut progress = false;
            let mut stuck = None;
            for (w, r) in attempts {
                match r {
                    Ok(value) => {
                        vals.insert(w, value);
                        progress = true;
                    }
                    Err(e) => {
                        stuck = Some(e);
                    }
                }
            }
            match stuck {
                None => return Ok(vals),
                Some(e) if !progress => {
                    if budget == last {
                        return Err(e);
                    }
                    break;
                }
                Some(_) => {}
            }
        }
    }
    unreachable!("final budget pass either finishes or errors")
}

/// Vertices whose subgame values matter for `player`: the vertices it owns
/// (the row entries) and every deviation target, that is every successor of
/// a branching vertex it owns.
fn subgame_support(g: &Game, player: PlayerId) -> BTreeSet<game_core::VertexId> {
    let mut wanted = BTreeSet::new();
    for v in g.vertices() {
        if g.owner(v) == player {
            wanted.insert(v);
            if g.out_edges(v).len() >= 2 {
                for &e in g.out_edges(v) {
                    wanted.insert(g.edge(e).to);
                }
            }
        }
    }
    wanted
}

/// Value of a concrete game by full strategy enumeration. The reference
/// semantics: first maximizer wins, choice states ordered by (edge, memory),
/// successors in construction order.
pub fn conc_value_enumerated(cg: &ConcGame, caps: &EngineCaps) -> Result<ConcOutcome, EngineError> {
    let an = Analysis::new(cg);
    let (value, assign, worst_scc) = bnb::enumerate_assignments(&an, caps.strategy_cap)?;
    Ok(ConcOutcome { value, choice: to_choice(cg, &an, &assign), worst_scc })
}

/// Optimum of one SCC of the strategy-restricted concrete game: minimal main
/// cycle mean if a deviation arc is inside, constrained hull minimum
/// otherwise. States outside `scc` are ignored.
pub fn opt_k(cg: &ConcGame, scc: &[StateId], choice: &MemorylessChoice) -> ExtRational {
    let an = Analysis::new(cg);
    let members: std::collections::HashSet<StateId> = scc.iter().copied().collect();
    let mut arcs = Vec::new();
    for &s in scc {
        let outs: Vec<usize> = match cg.state(s) {
            ConcState::ProverAt(..) => cg.out_transitions(s).to_vec(),
            ConcState::ChallengerAt(..) => {
                let t = match choice.choices.get(&s) {
                    Some(&succ) => *cg
                        .out_transitions(s)
                        .iter()
                        .find(|&&t| cg.transition(t).to == succ)
                        .expect("chosen successor exists"),
                    None => an.accept(s),
                };
                vec![t]
            }
        };
        for t in outs {
            if members.contains(&cg.transition(t).to) {
                arcs.push(t);
            }
        }
    }
    an.opt(&arcs)
}

/// Per-owner subgame value tables covering every vertex of the game.
fn owner_tables(
    g: &Game,
    lambda: &Requirement,
    caps: &EngineCaps,
) -> Result<Vec<(PlayerId, RootValues)>, EngineError> {
    let owners: BTreeSet<PlayerId> = g.vertices().map(|v| g.owner(v)).collect();
    owners
        .into_iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&p| subgame_values(g, lambda, p, &subgame_support(g, p), caps).map(|t| (p, t)))
        .collect()
}

/// One negotiation step: for every vertex, the value of the concrete game
/// for its owner from it. Pointwise at or above the input.
pub fn nego_requirement(
    g: &Game,
    lambda: &Requirement,
    caps: &EngineCaps,
) -> Result<Requirement, EngineError> {
    let tables = owner_tables(g, lambda, caps)?;
    let values = g
        .vertices()
        .map(|v| {
            let table = &tables.iter().find(|(p, _)| *p == g.owner(v)).unwrap().1;
            table[&v].clone()
        })
        .collect();
    Ok(Requirement::new(values))
}

pub fn nego_requirement_traced(
    g: &Game,
    lambda: &Requirement,
    caps: &EngineCaps,
) -> Result<(Requirement, NegoTrace), EngineError> {
    let tables = owner_tables(g, lambda, caps)?;
    let outcomes = g
        .vertices()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&v| {
            let table = &tables.iter().find(|(p, _)| *p == g.owner(v)).unwrap().1;
            let cg = build_concrete_game(g, lambda, g.owner(v), v);
            conc_value_with(&cg, caps.strategy_cap, table)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let req = Requirement::new(outcomes.iter().map(|o| o.value.clone()).collect());
    Ok((req, NegoTrace { per_vertex: outcomes }))
}

/// Kleene iterates of the negotiation function from the vacuous requirement:
/// `[lambda_0, ..., lambda_n]`.
pub fn nego_sequence(
    g: &Game,
    n: usize,
    caps: &EngineCaps,
) -> Result<Vec<Requirement>, EngineError> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(vacuous_requirement(g));
    for _ in 0..n {
        let next = nego_requirement(g, out.last().unwrap(), caps)?;
        out.push(next);
    }
    Ok(out)
}

/// Iterate the negotiation function until it is stationary, moves by at most
/// `epsilon`, or exhausts `max_iter` applications.
pub fn iterate_fixed_point(
    g: &Game,
    epsilon: &Rational,
    max_iter: usize,
    caps: &EngineCaps,
) -> Result<IterationOutcome, EngineError> {
    let mut cur = vacuous_requirement(g);
    for step in 0..max_iter {
        let next = nego_requirement(g, &cur, caps)?;
        if next == cur {
            return Ok(IterationOutcome::Stationary { lambda: cur, steps: step });
        }
        if !epsilon.is_zero() && within_epsilon(&next, &cur, epsilon) {
            return Ok(IterationOutcome::EpsilonStable { lambda: cur, steps: step });
        }
        cur = next;
    }
    Ok(IterationOutcome::NotConverged { lambda: cur })
}

fn within_epsilon(next: &Requirement, cur: &Requirement, epsilon: &Rational) -> bool {
    next.values()
        .iter()
        .zip(cur.values())
        .all(|(n, c)| *n <= c.add_finite(epsilon))
}
