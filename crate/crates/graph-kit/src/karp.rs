use crate::{sccs, ArcId, DiGraph, NodeId};
use game_core::Rational;
use num_traits::{ToPrimitive, Zero};

/// Exact minimum mean arc weight over all cycles, or None if the graph is
/// acyclic. Karp's dynamic program runs per cyclic SCC: with D[k][v] the
/// minimum weight of a k-arc walk from a fixed source, the SCC's answer is
/// min over v of max over k < n of (D[n][v] - D[k][v]) / (n - k), restricted
/// to finite entries. All-integer weights take a machine-word path; walk
/// sums stay far below the i128 range for any graph that fits in memory.
pub fn min_cycle_mean(g: &DiGraph, w: impl Fn(ArcId) -> Rational) -> Option<Rational> {
    let weights: Vec<Rational> = (0..g.arc_count()).map(|a| w(ArcId(a))).collect();
    let ints: Option<Vec<i128>> = weights
        .iter()
        .map(|r| r.is_integer().then(|| r.to_integer().to_i128()).flatten())
        .collect();
    let mut best: Option<Rational> = None;
    for comp in sccs(g) {
        let (sub, _, arc_map) = g.induced_subgraph(&comp);
        let local = match &ints {
            Some(ints) => {
                let (num, den) = karp_scc_int(&sub, |a| ints[arc_map[a.0].0]);
                Rational::new(num.into(), den.into())
            }
            None => karp_scc(&sub, |a| weights[arc_map[a.0].0].clone()),
        };
        best = match best {
            None => Some(local),
            Some(b) => Some(b.min(local)),
        };
    }
    best
}

/// `g` must be strongly connected with at least one arc.
fn karp_scc(g: &DiGraph, w: impl Fn(ArcId) -> Rational) -> Rational {
    let n = g.node_count();
    debug_assert!(g.arc_count() > 0);
    let mut table: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n + 1];
    table[0][0] = Some(Rational::zero());
    for k in 1..=n {
        for v in 0..n {
            for &a in g.out_arcs(NodeId(v)) {
                let to = g.arc(a).1 .0;
                if let Some(d) = &table[k - 1][v] {
                    let cand = d + w(a);
                    let slot = &mut table[k][to];
                    if slot.as_ref().map_or(true, |cur| cand < *cur) {
                        *slot = Some(cand);
                    }
                }
            }
        }
    }
    let mut best: Option<Rational> = None;
    for v in 0..n {
        let dn = match &table[n][v] {
            Some(d) => d,
            None => continue,
        };
        let mut worst: Option<Rational> = None;
        for (k, row) in table.iter().enumerate().take(n) {
            if let Some(dk) = &row[v] {
                let mean = (dn - dk) / Rational::from_integer((n - k).into());
                if worst.as_ref().map_or(true, |cur| mean > *cur) {
                    worst = Some(mean);
                }
            }
        }
        let worst = worst.expect("source row is finite");
        if best.as_ref().map_or(true, |cur| worst < *cur) {
            best = Some(worst);
        }
    }
    best.expect("some walk of length n exists in a cyclic SCC")
}

/// Integer-weight variant; returns the minimum cycle mean as an unreduced
/// fraction with positive denominator.
fn karp_scc_int(g: &DiGraph, w: impl Fn(ArcId) -> i128) -> (i128, i128) {
    let n = g.node_count();
    debug_assert!(g.arc_count() > 0);
    const NONE: i128 = i128::MAX;
    let mut table: Vec<Vec<i128>> = vec![vec![NONE; n]; n + 1];
    table[0][0] = 0;
    for k in 1..=n {
        for v in 0..n {
            let d = table[k - 1][v];
            if d == NONE {
                continue;
            }
            for &a in g.out_arcs(NodeId(v)) {
                let to = g.arc(a).1 .0;
                let cand = d + w(a);
                if cand < table[k][to] {
                    table[k][to] = cand;
                }
            }
        }
    }
    let mut best: Option<(i128, i128)> = None;
    for v in 0..n {
        let dn = table[n][v];
        if dn == NONE {
            continue;
        }
        let mut worst: Option<(i128, i128)> = None;
        for k in 0..n {
            let dk = table[k][v];
            if dk == NONE {
                continue;
            }
            let (num, den) = (dn - dk, (n - k) as i128);
            if worst.map_or(true, |(wn, wd)| num * wd > wn * den) {
                worst = Some((num, den));
            }
        }
        let worst = worst.expect("source row is finite");
        if best.map_or(true, |(bn, bd)| worst.0 * bd < bn * worst.1) {
            best = Some(worst);
        }
    }
    best.expect("some walk of length n exists in a cyclic SCC")
}
