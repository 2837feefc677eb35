use conc_builder::{
    build_concrete_game, describe_state, project, ConcGame, ConcState, StateId, TransKind,
    VertexSet,
};
use exact_lp::DimValue;
use game_core::{
    is_lambda_consistent, mean_payoff, parse_game, parse_requirement, rat, vacuous_requirement,
    ExtRational, Game, LassoPlay, Rational, Requirement,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIG1B: &str = "\
players Circle Box
vertex a Circle
vertex b Box
vertex c Circle
vertex d Box
edge a b 0 3
edge b a 0 3
edge a c 0 0
edge b d 0 0
edge c c 1 1
edge d d 2 2
init a
";

fn fig1b() -> (Game, Requirement) {
    let g = parse_game(FIG1B).unwrap();
    let l1 = parse_requirement("a 1\nb 2\nc 1\nd 2", &g).unwrap();
    (g, l1)
}

fn prover(g: &Game, cg: &ConcGame, v: &str, m: &[&str]) -> Option<StateId> {
    let mut set = VertexSet::empty();
    for name in m {
        set = set.insert(g.vertex_id(name).unwrap());
    }
    cg.state_id(&ConcState::ProverAt(g.vertex_id(v).unwrap(), set))
}

#[test]
fn four_vertex_instance_contains_expected_states() {
    let (g, l1) = fig1b();
    let circle = g.player_id("Circle").unwrap();
    let cg = build_concrete_game(&g, &l1, circle, g.vertex_id("b").unwrap());
    assert!(prover(&g, &cg, "b", &["a", "b"]).is_some());
    assert!(prover(&g, &cg, "d", &["b", "d"]).is_some());
    assert_eq!(cg.state(cg.start), ConcState::ProverAt(
        g.vertex_id("b").unwrap(),
        VertexSet::singleton(g.vertex_id("b").unwrap())
    ));
}

#[test]
fn four_vertex_instance_frozen_counts() {
    // Audited by hand: 7 Prover states, 10 Challenger states, 10 proposals,
    // 10 acceptations, 2 deviations (Circle's alternatives at a).
    let (g, l1) = fig1b();
    let circle = g.player_id("Circle").unwrap();
    let cg = build_concrete_game(&g, &l1, circle, g.vertex_id("b").unwrap());
    assert_eq!(cg.state_count(), 17);
    assert_eq!(cg.transition_count(), 22);
    let count = |kind: TransKind| cg.transitions().filter(|t| t.kind == kind).count();
    assert_eq!(count(TransKind::Proposal), 10);
    assert_eq!(count(TransKind::Acceptation), 10);
    assert_eq!(count(TransKind::Deviation), 2);
}

#[test]
fn one_vertex_game_has_two_states_and_no_deviations() {
    let g = parse_game("players P\nvertex v P\nedge v v 0\n").unwrap();
    let l0 = vacuous_requirement(&g);
    let cg = build_concrete_game(&g, &l0, game_core::PlayerId(0), game_core::VertexId(0));
    assert_eq!(cg.state_count(), 2);
    assert!(cg.transitions().all(|t| t.kind != TransKind::Deviation));
}

#[test]
fn deviation_arcs_only_from_deviating_player_edges() {
    let (g, l1) = fig1b();
    for i in g.players() {
        for v0 in g.vertices() {
            let cg = build_concrete_game(&g, &l1, i, v0);
            for (id, s) in cg.states() {
                let ConcState::ChallengerAt(e, _) = s else {
                    continue;
                };
                let u = g.edge(e).from;
                let devs = cg
                    .out_transitions(id)
                    .iter()
                    .filter(|&&t| cg.transition(t).kind == TransKind::Deviation)
                    .count();
                let accepts = cg
                    .out_transitions(id)
                    .iter()
                    .filter(|&&t| cg.transition(t).kind == TransKind::Acceptation)
                    .count();
                assert_eq!(accepts, 1);
                if g.owner(u) == i {
                    assert_eq!(devs, g.out_edges(u).len() - 1);
                } else {
                    assert_eq!(devs, 0);
                }
            }
        }
    }
}

#[test]
fn memory_grows_on_acceptation_and_resets_on_deviation() {
    let (g, l1) = fig1b();
    let circle = g.player_id("Circle").unwrap();
    let cg = build_concrete_game(&g, &l1, circle, g.vertex_id("a").unwrap());
    for t in cg.transitions() {
        let from_m = cg.state(t.from).memory();
        let to_m = cg.state(t.to).memory();
        match t.kind {
            TransKind::Proposal => assert_eq!(from_m, to_m),
            TransKind::Acceptation => {
                assert_eq!(from_m.0 | to_m.0, to_m.0, "memory must grow");
                assert!(to_m.len() <= from_m.len() + 1);
            }
            TransKind::Deviation => assert_eq!(to_m.len(), 1),
        }
    }
}

#[test]
fn proposals_have_all_zero_weights() {
    let (g, l1) = fig1b();
    let circle = g.player_id("Circle").unwrap();
    let cg = build_concrete_game(&g, &l1, circle, g.vertex_id("a").unwrap());
    for t in cg.transitions().filter(|t| t.kind == TransKind::Proposal) {
        assert!(t.weight.main.is_zero());
        assert!(t
            .weight
            .per_player
            .iter()
            .all(|d| *d == DimValue::Active(Rational::zero())));
    }
}

#[test]
fn infinite_requirement_marks_dimensions() {
    let (g, _) = fig1b();
    let circle = g.player_id("Circle").unwrap();
    let lam = parse_requirement("a +inf\nb 2", &g).unwrap(); // c, d default -inf
    let cg = build_concrete_game(&g, &lam, circle, g.vertex_id("a").unwrap());
    for t in cg.transitions().filter(|t| t.kind != TransKind::Proposal) {
        let m = cg.state(t.from).memory();
        let a_seen = m.contains(g.vertex_id("a").unwrap());
        let circle_dim = &t.weight.per_player[circle.0];
        if a_seen {
            // a's +∞ dominates anything else Circle has seen.
            assert_eq!(*circle_dim, DimValue::Infeasible);
        } else {
            // only c (−∞) can be in memory for Circle, if anything.
            assert_eq!(*circle_dim, DimValue::Inactive);
        }
    }
}

#[test]
fn projection_of_short_path() {
    let (g, l1) = fig1b();
    let circle = g.player_id("Circle").unwrap();
    let cg = build_concrete_game(&g, &l1, circle, g.vertex_id("b").unwrap());
    let s0 = cg.start;
    // b proposes b->a, Challenger accepts into (a,{a,b}).
    let prop = cg.out_transitions(s0)
        .iter()
        .map(|&t| cg.transition(t))
        .find(|t| matches!(cg.state(t.to), ConcState::ChallengerAt(e, _) if g.edge(e).to == g.vertex_id("a").unwrap()))
        .unwrap();
    let mid = prop.to;
    let acc = cg.out_transitions(mid)
        .iter()
        .map(|&t| cg.transition(t))
        .find(|t| t.kind == TransKind::Acceptation)
        .unwrap();
    let path = [s0, mid, acc.to];
    let projected = project(&cg, &path);
    let names: Vec<&str> = projected.iter().map(|&v| g.vertex_name(v)).collect();
    assert_eq!(names, ["b", "a"]);
    assert_eq!(project(&cg, &path[..1]), vec![g.vertex_id("b").unwrap()]);
    assert!(describe_state(&g, cg.state(mid)).starts_with("(ba,"));
}

/// Random walk over Proposal/Acceptation arcs until a state repeats, giving a
/// deviation-free concrete lasso.
fn sample_accept_lasso(
    cg: &ConcGame,
    rng: &mut ChaCha8Rng,
) -> (Vec<StateId>, Vec<StateId>) {
    let mut path = vec![cg.start];
    loop {
        let cur = *path.last().unwrap();
        let options: Vec<usize> = cg
            .out_transitions(cur)
            .iter()
            .copied()
            .filter(|&t| cg.transition(t).kind != TransKind::Deviation)
            .collect();
        let t = options[rng.gen_range(0..options.len())];
        let next = cg.transition(t).to;
        if let Some(pos) = path.iter().position(|&s| s == next) {
            let cycle = path[pos..].to_vec();
            let prefix = path[..pos].to_vec();
            return (prefix, cycle);
        }
        path.push(next);
    }
}

#[test]
fn factor_two_bookkeeping_on_sampled_lassos() {
    let (g, l1) = fig1b();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for i in g.players() {
        for v0 in g.vertices() {
            let cg = build_concrete_game(&g, &l1, i, v0);
            for _ in 0..20 {
                let (prefix, cycle) = sample_accept_lasso(&cg, &mut rng);
                check_lasso(&g, &l1, &cg, i, &prefix, &cycle);
            }
        }
    }
}

fn check_lasso(
    g: &Game,
    lambda: &Requirement,
    cg: &ConcGame,
    i: game_core::PlayerId,
    prefix: &[StateId],
    cycle: &[StateId],
) {
    // Cycle arcs, wrap-around included.
    let mut arcs = Vec::new();
    for k in 0..cycle.len() {
        let from = cycle[k];
        let to = cycle[(k + 1) % cycle.len()];
        let t = cg
            .out_transitions(from)
            .iter()
            .map(|&x| cg.transition(x))
            .find(|t| t.to == to)
            .unwrap();
        arcs.push(t);
    }
    let len = Rational::from_integer(arcs.len().into());
    let main_mean = arcs
        .iter()
        .fold(Rational::zero(), |acc, t| acc + &t.weight.main)
        / &len;

    let full: Vec<StateId> = prefix.iter().chain(cycle.iter()).copied().collect();
    let proj_prefix_full = project(cg, &full);
    let proj_cycle = project(cg, cycle);
    if proj_cycle.is_empty() {
        return;
    }
    let proj_prefix = proj_prefix_full[..proj_prefix_full.len() - proj_cycle.len()].to_vec();
    let play = LassoPlay::new(proj_prefix, proj_cycle);
    assert!(play.is_valid(g));
    let means = mean_payoff(g, &play);

    // Main dimension: mean over all concrete arcs equals the projected mean
    // payoff of the deviating player (proposal padding cancels the factor 2).
    assert_eq!(main_mean, means[i.0]);

    // Active per-player dimensions: half the acceptation-arc mean plus the
    // memory-max of λ equals the projected mean payoff.
    let m = cg.state(cycle[0]).memory();
    let two = Rational::from_integer(2.into());
    for j in g.players() {
        let threshold = m
            .iter()
            .filter(|&v| g.owner(v) == j)
            .map(|v| lambda[v].clone())
            .max();
        let Some(ExtRational::Finite(thr)) = threshold else {
            continue;
        };
        let acc_arcs: Vec<&&conc_builder::ConcTransition> = arcs
            .iter()
            .filter(|t| t.kind == TransKind::Acceptation)
            .collect();
        if acc_arcs.is_empty() {
            continue;
        }
        let acc_len = Rational::from_integer(acc_arcs.len().into());
        let w_mean = acc_arcs.iter().fold(Rational::zero(), |acc, t| {
            acc + match &t.weight.per_player[j.0] {
                DimValue::Active(x) => x.clone(),
                _ => panic!("finite threshold must give an Active dimension"),
            }
        }) / &acc_len;
        assert_eq!(&w_mean / &two + &thr, means[j.0]);
    }

    // For accept-only walks from the start state, the cycle memory is exactly
    // the set of vertices the play visits, and the sign of the aux dimensions
    // decides λ-consistency of the projection.
    let visited = play
        .occurring_vertices()
        .iter()
        .fold(VertexSet::empty(), |acc, &v| acc.insert(v));
    assert_eq!(visited, m, "memory must equal the visited set");
    let infeasible = arcs.iter().any(|t| t.weight.has_infeasible_dim());
    let all_aux_ok = !infeasible
        && g.players().all(|j| {
            let mut sum = Rational::zero();
            let mut active = false;
            for t in &arcs {
                if let DimValue::Active(x) = &t.weight.per_player[j.0] {
                    sum += x;
                    active = true;
                }
            }
            !active || sum >= Rational::zero()
        });
    assert_eq!(all_aux_ok, is_lambda_consistent(g, lambda, &play));
}
