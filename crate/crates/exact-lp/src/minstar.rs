use crate::simplex::{lp_solve, Constraint, LinearProgram, LpResult, Relation};
use game_core::{ExtRational, Rational};
use graph_kit::DiGraph;
use num_traits::Zero;

/// One per-player coordinate of a multidimensional outcome. Statuses replace
/// numeric infinities: Inactive encodes a −∞ requirement (no constraint),
/// Infeasible a +∞ one (no consistent settle at all).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimValue {
    Active(Rational),
    Inactive,
    Infeasible,
}

/// Point of the multidimensional payoff space: the main dimension plus one
/// coordinate per player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeVector {
    pub main: Rational,
    pub per_player: Vec<DimValue>,
}

impl OutcomeVector {
    pub fn new(main: Rational, per_player: Vec<DimValue>) -> Self {
        OutcomeVector { main, per_player }
    }

    pub fn has_infeasible_dim(&self) -> bool {
        self.per_player.iter().any(|d| *d == DimValue::Infeasible)
    }
}

/// Dimensionwise mean of a nonempty outcome list, used to turn the arcs of a
/// simple cycle into the cycle's outcome. Statuses must agree across the
/// inputs (they do within one SCC, where the memory set is constant); an
/// Infeasible coordinate wins, and a mixed Active/Inactive coordinate
/// degrades to Inactive.
pub fn mean_outcome(outcomes: &[&OutcomeVector]) -> OutcomeVector {
    assert!(!outcomes.is_empty());
    let dims = outcomes[0].per_player.len();
    debug_assert!(outcomes.iter().all(|o| o.per_player.len() == dims));
    let len = Rational::from_integer(outcomes.len().into());
    let main = outcomes
        .iter()
        .fold(Rational::zero(), |acc, o| acc + &o.main)
        / &len;
    let per_player = (0..dims)
        .map(|j| {
            let col: Vec<&DimValue> = outcomes.iter().map(|o| &o.per_player[j]).collect();
            debug_assert!(
                col.iter().all(|d| std::mem::discriminant(*d) == std::mem::discriminant(col[0])),
                "outcome statuses disagree within one cycle"
            );
            if col.iter().any(|d| **d == DimValue::Infeasible) {
                DimValue::Infeasible
            } else if col.iter().all(|d| matches!(d, DimValue::Active(_))) {
                let sum = col.iter().fold(Rational::zero(), |acc, d| match d {
                    DimValue::Active(x) => acc + x,
                    _ => unreachable!(),
                });
                DimValue::Active(sum / &len)
            } else {
                DimValue::Inactive
            }
        })
        .collect();
    OutcomeVector { main, per_player }
}

/// min over the convex hull of `outcomes`, restricted to points whose active
/// coordinates are all ≥ 0, of the main coordinate. The infimum of the empty
/// set is +∞, and any Infeasible coordinate forces +∞.
pub fn min_star(outcomes: &[OutcomeVector]) -> ExtRational {
    if outcomes.is_empty() {
        return ExtRational::PlusInf;
    }
    if outcomes.iter().any(|o| o.has_infeasible_dim()) {
        return ExtRational::PlusInf;
    }
    let dims = outcomes[0].per_player.len();
    let n = outcomes.len();
    let mut constraints = Vec::new();
    for i in 0..n {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[i] = Rational::from_integer(1.into());
        constraints.push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
    }
    constraints.push(Constraint::new(
        vec![Rational::from_integer(1.into()); n],
        Relation::Eq,
        Rational::from_integer(1.into()),
    ));
    for j in 0..dims {
        let col: Vec<&DimValue> = outcomes.iter().map(|o| &o.per_player[j]).collect();
        if col.iter().all(|d| matches!(d, DimValue::Active(_))) {
            let coeffs = col
                .iter()
                .map(|d| match d {
                    DimValue::Active(x) => (*x).clone(),
                    _ => unreachable!(),
                })
                .collect();
            constraints.push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
        } else {
            debug_assert!(
                col.iter().all(|d| **d == DimValue::Inactive),
                "outcome statuses disagree across the hull"
            );
        }
    }
    let lp = LinearProgram {
        num_vars: n,
        objective: outcomes.iter().map(|o| o.main.clone()).collect(),
        constraints,
    };
    match lp_solve(&lp) {
        LpResult::Optimal { value, .. } => ExtRational::Finite(value),
        LpResult::Infeasible => ExtRational::PlusInf,
        LpResult::Unbounded => unreachable!("hull coordinates are bounded"),
    }
}

/// min★ over the cycle hull of a strongly connected graph, phrased as an LP
/// over arc frequencies: nonnegative, summing to one, conserving flow at
/// every node, with each active dimension's mean ≥ 0. The extreme points of
/// that polytope are exactly the normalized simple cycles, so this equals
/// min_star over the enumerated cycle outcomes without enumerating.
pub fn circulation_min_star(k: &DiGraph, arc_outcomes: &[OutcomeVector]) -> ExtRational {
    assert_eq!(k.arc_count(), arc_outcomes.len());
    assert!(k.arc_count() > 0);
    if arc_outcomes.iter().any(|o| o.has_infeasible_dim()) {
        return ExtRational::PlusInf;
    }
    let dims = arc_outcomes[0].per_player.len();
    let n = k.arc_count();
    let one = Rational::from_integer(1.into());
    let mut constraints = Vec::new();
    for i in 0..n {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[i] = one.clone();
        constraints.push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
    }
    constraints.push(Constraint::new(
        vec![one.clone(); n],
        Relation::Eq,
        one.clone(),
    ));
    for v in k.nodes() {
        let mut coeffs = vec![Rational::zero(); n];
        for i in 0..n {
            let (from, to) = k.arc(graph_kit::ArcId(i));
            if from == v {
                coeffs[i] += &one;
            }
            if to == v {
                coeffs[i] -= &one;
            }
        }
        constraints.push(Constraint::new(coeffs, Relation::Eq, Rational::zero()));
    }
    for j in 0..dims {
        let col: Vec<&DimValue> = arc_outcomes.iter().map(|o| &o.per_player[j]).collect();
        if col.iter().all(|d| matches!(d, DimValue::Active(_))) {
            let coeffs = col
                .iter()
                .map(|d| match d {
                    DimValue::Active(x) => (*x).clone(),
                    _ => unreachable!(),
                })
                .collect();
            constraints.push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
        } else {
            debug_assert!(
                col.iter().all(|d| **d == DimValue::Inactive),
                "arc statuses disagree within one SCC"
            );
        }
    }
    let lp = LinearProgram {
        num_vars: n,
        objective: arc_outcomes.iter().map(|o| o.main.clone()).collect(),
        constraints,
    };
    match lp_solve(&lp) {
        LpResult::Optimal { value, .. } => ExtRational::Finite(value),
        LpResult::Infeasible => ExtRational::PlusInf,
        LpResult::Unbounded => unreachable!("frequencies are bounded"),
    }
}
