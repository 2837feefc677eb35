mod common;

use common::*;
use conc_builder::build_concrete_game;
use game_core::{ratio, ExtRational, Rational};
use nego_engine::{
    conc_value, conc_value_enumerated, iterate_fixed_point, nego_requirement,
    nego_requirement_traced, nego_sequence, opt_k, EngineCaps, IterationOutcome,
};
use num_traits::Zero;

fn fin(n: i64, d: i64) -> ExtRational {
    ExtRational::Finite(ratio(n, d))
}

#[test]
fn deviator_from_b_under_first_iterate() {
    let g = fig1b();
    let lam = row(&g, &["1", "2", "1", "2"]);
    let circle = g.player_id("Circle").unwrap();
    let b = g.vertex_id("b").unwrap();
    let cg = build_concrete_game(&g, &lam, circle, b);
    assert_eq!(conc_value(&cg, &EngineCaps::default()).unwrap(), fin(2, 1));
    assert_eq!(
        conc_value_enumerated(&cg, &EngineCaps::default()).unwrap().value,
        fin(2, 1)
    );
}

#[test]
fn box_deviator_from_b_under_second_iterate() {
    let g = fig1b();
    let lam = row(&g, &["2", "2", "1", "2"]);
    let bx = g.player_id("Box").unwrap();
    let b = g.vertex_id("b").unwrap();
    let cg = build_concrete_game(&g, &lam, bx, b);
    assert_eq!(conc_value(&cg, &EngineCaps::default()).unwrap(), fin(3, 1));
}

#[test]
fn third_iterate_forces_infinite_value() {
    let g = fig1b();
    let lam = row(&g, &["2", "3", "1", "2"]);
    let caps = EngineCaps::default();
    for (vn, pn) in [("a", "Circle"), ("b", "Box")] {
        let v = g.vertex_id(vn).unwrap();
        let p = g.player_id(pn).unwrap();
        let cg = build_concrete_game(&g, &lam, p, v);
        assert_eq!(conc_value(&cg, &caps).unwrap(), ExtRational::PlusInf);
        assert_eq!(
            conc_value_enumerated(&cg, &caps).unwrap().value,
            ExtRational::PlusInf
        );
    }
}

#[test]
fn nego_of_vacuous_requirement() {
    let g = fig1b();
    let lam0 = req(&g, &[]);
    let out = nego_requirement(&g, &lam0, &EngineCaps::default()).unwrap();
    assert_eq!(out, row(&g, &["1", "2", "1", "2"]));
}

#[test]
fn nego_of_second_iterate() {
    let g = fig1b();
    let lam = row(&g, &["2", "2", "1", "2"]);
    let out = nego_requirement(&g, &lam, &EngineCaps::default()).unwrap();
    assert_eq!(out, row(&g, &["2", "3", "1", "2"]));
}

#[test]
fn nego_sequence_stabilizes_with_infinite_entries() {
    let g = fig1b();
    let seq = nego_sequence(&g, 5, &EngineCaps::default()).unwrap();
    assert_eq!(seq[1], row(&g, &["1", "2", "1", "2"]));
    assert_eq!(seq[2], row(&g, &["2", "2", "1", "2"]));
    assert_eq!(seq[3], row(&g, &["2", "3", "1", "2"]));
    assert_eq!(seq[4], row(&g, &["+inf", "+inf", "1", "2"]));
    assert_eq!(seq[5], seq[4]);
}

#[test]
fn big_example_final_step() {
    let g = big_example();
    let lam4 = row(&g, &["1", "1", "2", "1/2", "3", "2", "3"]);
    let out = nego_requirement(&g, &lam4, &EngineCaps::default()).unwrap();
    assert_eq!(out, row(&g, &["1", "1", "2", "2/3", "3", "2", "3"]));
}

#[test]
fn big_example_full_sequence() {
    let g = big_example();
    let seq = nego_sequence(&g, 6, &EngineCaps::default()).unwrap();
    assert_eq!(seq[1], row(&g, &["1", "1", "0", "0", "0", "0", "3"]));
    assert_eq!(seq[2], row(&g, &["1", "1", "3/2", "0", "0", "2", "3"]));
    assert_eq!(seq[3], row(&g, &["1", "1", "3/2", "1/2", "3", "2", "3"]));
    assert_eq!(seq[4], row(&g, &["1", "1", "2", "1/2", "3", "2", "3"]));
    assert_eq!(seq[5], row(&g, &["1", "1", "2", "2/3", "3", "2", "3"]));
    assert_eq!(seq[6], seq[5]);
}

#[test]
fn three_player_sequence_approaches_two() {
    let g = fig4();
    let seq = nego_sequence(&g, 3, &EngineCaps::default()).unwrap();
    let a = g.vertex_id("a").unwrap();
    assert_eq!(seq[1][a], fin(1, 1));
    assert_eq!(seq[2][a], fin(3, 2));
    assert_eq!(seq[3][a], fin(7, 4));
    assert_eq!(seq[1], row(&g, &["1", "1", "0", "0", "0", "0"]));
}

#[test]
fn chain_propagates_requirements_inward() {
    let g = chain_propagation();
    let seq = nego_sequence(&g, 6, &EngineCaps::default()).unwrap();
    assert_eq!(seq[1], row(&g, &["1", "0", "0", "0", "2"]));
    assert_eq!(seq[2], row(&g, &["1", "1", "0", "2", "2"]));
    assert_eq!(seq[3], row(&g, &["1", "1", "2", "2", "2"]));
    assert_eq!(seq[4], row(&g, &["1", "2", "2", "2", "2"]));
    assert_eq!(seq[5], row(&g, &["2", "2", "2", "2", "2"]));
    assert_eq!(seq[6], seq[5]);
}

#[test]
fn cyclic_component_sequence_diverges() {
    let g = scc_no_spe();
    let seq = nego_sequence(&g, 5, &EngineCaps::default()).unwrap();
    assert_eq!(seq[1], row(&g, &["1", "1", "3", "2", "2", "4"]));
    assert_eq!(seq[2], row(&g, &["2", "1", "3", "2", "2", "4"]));
    assert_eq!(seq[3], row(&g, &["2", "1", "3", "3", "2", "4"]));
    assert_eq!(seq[4], row(&g, &["+inf", "1", "+inf", "+inf", "2", "+inf"]));
    assert_eq!(seq[5], row(&g, &["+inf", "+inf", "+inf", "+inf", "+inf", "+inf"]));
    assert_eq!(
        nego_requirement(&g, &seq[5], &EngineCaps::default()).unwrap(),
        seq[5]
    );
}

#[test]
fn iteration_stationary_on_big_example() {
    let g = big_example();
    let out = iterate_fixed_point(&g, &Rational::zero(), 50, &EngineCaps::default()).unwrap();
    let IterationOutcome::Stationary { lambda, steps } = out else {
        panic!("expected stationary outcome");
    };
    assert_eq!(steps, 5);
    assert_eq!(lambda, row(&g, &["1", "1", "2", "2/3", "3", "2", "3"]));
}

#[test]
fn iteration_diverges_on_three_player_game() {
    let g = fig4();
    let out = iterate_fixed_point(&g, &Rational::zero(), 50, &EngineCaps::default()).unwrap();
    let IterationOutcome::NotConverged { lambda } = out else {
        panic!("expected divergence at zero epsilon");
    };
    let a = g.vertex_id("a").unwrap();
    // lambda_n(a) = 2 - 1/2^(n-1) at n = 50.
    let expected = ratio(2, 1) - ratio(1, 1) / ratio(2i64.pow(49), 1);
    assert_eq!(lambda[a], ExtRational::Finite(expected));
}

#[test]
fn iteration_stationary_immediately_on_two_vertex_game() {
    let g = fig2a();
    let out = iterate_fixed_point(&g, &Rational::zero(), 50, &EngineCaps::default()).unwrap();
    let IterationOutcome::Stationary { lambda, steps } = out else {
        panic!("expected stationary outcome");
    };
    assert_eq!(steps, 1);
    assert_eq!(lambda, row(&g, &["1", "1"]));
}

#[test]
fn iteration_epsilon_stable_on_three_player_game() {
    let g = fig4();
    let eps = ratio(1, 4);
    let out = iterate_fixed_point(&g, &eps, 50, &EngineCaps::default()).unwrap();
    let IterationOutcome::EpsilonStable { lambda, steps } = out else {
        panic!("expected epsilon-stability");
    };
    // Steps shrink by halves: the first move at most 1/4 is from lambda_2.
    assert_eq!(steps, 2);
    let next = nego_requirement(&g, &lambda, &EngineCaps::default()).unwrap();
    for v in g.vertices() {
        assert!(next[v] <= lambda[v].add_finite(&eps));
    }
}

#[test]
fn trace_reproduces_values_via_opt_k() {
    let caps = EngineCaps::default();
    for (g, lam) in [
        (fig1b(), req(&fig1b(), &[])),
        (fig1b(), row(&fig1b(), &["2", "2", "1", "2"])),
        (fig1b(), row(&fig1b(), &["2", "3", "1", "2"])),
        (fig2a(), req(&fig2a(), &[])),
    ] {
        let (req_out, trace) = nego_requirement_traced(&g, &lam, &caps).unwrap();
        for v in g.vertices() {
            let outcome = &trace.per_vertex[v.0];
            assert_eq!(outcome.value, req_out[v]);
            let cg = build_concrete_game(&g, &lam, g.owner(v), v);
            assert_eq!(
                opt_k(&cg, &outcome.worst_scc, &outcome.choice),
                outcome.value,
                "trace SCC must reproduce the value at vertex {}",
                g.vertex_name(v)
            );
        }
    }
}
