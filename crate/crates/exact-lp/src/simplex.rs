use game_core::Rational;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

/// Minimization problem over free variables. Callers wanting x ≥ 0 add the
/// constraint explicitly.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

/// Two-phase primal simplex with Bland's anti-cycling rule, entirely over
/// exact rationals. Free variables are split as x = x⁺ − x⁻ internally.
pub fn lp_solve(lp: &LinearProgram) -> LpResult {
    let n = lp.num_vars;
    let m = lp.constraints.len();
    debug_assert!(lp.objective.len() == n);
    debug_assert!(lp.constraints.iter().all(|c| c.coeffs.len() == n));

    let n_slack = lp
        .constraints
        .iter()
        .filter(|c| c.rel != Relation::Eq)
        .count();
    let real_cols = 2 * n + n_slack;
    let total_cols = real_cols + m;

    // Rows hold [x⁺ | x⁻ | slacks | artificials | rhs] with rhs ≥ 0.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut slack_at = 2 * n;
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); total_cols + 1];
        for (k, a) in c.coeffs.iter().enumerate() {
            row[k] = a.clone();
            row[n + k] = -a.clone();
        }
        match c.rel {
            Relation::Le => {
                row[slack_at] = Rational::from_integer(1.into());
                slack_at += 1;
            }
            Relation::Ge => {
                row[slack_at] = Rational::from_integer((-1).into());
                slack_at += 1;
            }
            Relation::Eq => {}
        }
        row[total_cols] = c.rhs.clone();
        if row[total_cols] < Rational::zero() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[real_cols + i] = Rational::from_integer(1.into());
        rows.push(row);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| real_cols + i).collect();

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); total_cols + 1];
    for j in real_cols..total_cols {
        phase1[j] = Rational::from_integer(1.into());
    }
    let mut cost = price_out(phase1, &rows, &basis);
    if iterate(&mut rows, &mut basis, &mut cost, real_cols).is_err() {
        unreachable!("phase-1 objective is bounded below by zero");
    }
    if -cost[total_cols].clone() != Rational::zero() {
        return LpResult::Infeasible;
    }

    // Drive leftover artificials out of the basis; drop redundant rows.
    let mut keep = vec![true; rows.len()];
    for i in 0..rows.len() {
        if basis[i] < real_cols {
            continue;
        }
        match (0..real_cols).find(|&j| !rows[i][j].is_zero()) {
            Some(j) => pivot(&mut rows, &mut basis, &mut cost, i, j),
            None => keep[i] = false,
        }
    }
    let mut it = keep.iter();
    rows.retain(|_| *it.next().unwrap());
    let mut it = keep.iter();
    basis.retain(|_| *it.next().unwrap());

    // Phase 2: the real objective, artificial columns barred from entering.
    let mut phase2 = vec![Rational::zero(); total_cols + 1];
    for (k, c) in lp.objective.iter().enumerate() {
        phase2[k] = c.clone();
        phase2[n + k] = -c.clone();
    }
    let mut cost = price_out(phase2, &rows, &basis);
    if iterate(&mut rows, &mut basis, &mut cost, real_cols).is_err() {
        return LpResult::Unbounded;
    }

    let mut std_point = vec![Rational::zero(); real_cols];
    for (i, &b) in basis.iter().enumerate() {
        if b < real_cols {
            std_point[b] = rows[i][total_cols].clone();
        }
    }
    let point: Vec<Rational> = (0..n)
        .map(|k| std_point[k].clone() - std_point[n + k].clone())
        .collect();
    let value = lp
        .objective
        .iter()
        .zip(&point)
        .fold(Rational::zero(), |acc, (c, x)| acc + c * x);
    LpResult::Optimal { value, point }
}

/// Reduced-cost row c − c_B·B⁻¹A for the current basis; last entry is −z.
fn price_out(costs: Vec<Rational>, rows: &[Vec<Rational>], basis: &[usize]) -> Vec<Rational> {
    let mut cost = costs;
    for (i, &b) in basis.iter().enumerate() {
        if !cost[b].is_zero() {
            let f = cost[b].clone();
            for (c, r) in cost.iter_mut().zip(&rows[i]) {
                *c -= &f * r;
            }
        }
    }
    cost
}

/// Bland's rule: entering column is the lowest index with negative reduced
/// cost; the leaving row breaks ratio ties by lowest basic variable index.
fn iterate(
    rows: &mut Vec<Vec<Rational>>,
    basis: &mut [usize],
    cost: &mut [Rational],
    enter_limit: usize,
) -> Result<(), ()> {
    let rhs_col = cost.len() - 1;
    loop {
        let enter = match (0..enter_limit).find(|&j| cost[j] < Rational::zero()) {
            Some(j) => j,
            None => return Ok(()),
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[enter] > Rational::zero() {
                let ratio = row[rhs_col].clone() / row[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        match leave {
            Some((r, _)) => pivot(rows, basis, cost, r, enter),
            None => return Err(()),
        }
    }
}

fn pivot(
    rows: &mut [Vec<Rational>],
    basis: &mut [usize],
    cost: &mut [Rational],
    r: usize,
    c: usize,
) {
    let p = rows[r][c].clone();
    debug_assert!(!p.is_zero());
    for x in rows[r].iter_mut() {
        *x /= &p;
    }
    let pivot_row = rows[r].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * pr;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, pr) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * pr;
        }
    }
    basis[r] = c;
}

#[cfg(test)]
mod tests {
    use super::*;
    use game_core::{rat, ratio};

    fn solve(n: usize, obj: Vec<Rational>, cons: Vec<Constraint>) -> LpResult {
        lp_solve(&LinearProgram {
            num_vars: n,
            objective: obj,
            constraints: cons,
        })
    }

    #[test]
    fn one_variable_bounded_below() {
        let r = solve(
            1,
            vec![rat(1)],
            vec![Constraint::new(vec![rat(1)], Relation::Ge, rat(3))],
        );
        assert_eq!(
            r,
            LpResult::Optimal {
                value: rat(3),
                point: vec![rat(3)]
            }
        );
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let r = solve(
            1,
            vec![rat(1)],
            vec![
                Constraint::new(vec![rat(1)], Relation::Le, rat(-1)),
                Constraint::new(vec![rat(1)], Relation::Ge, rat(0)),
            ],
        );
        assert_eq!(r, LpResult::Infeasible);
    }

    #[test]
    fn free_variable_is_unbounded() {
        let r = solve(
            1,
            vec![rat(1)],
            vec![Constraint::new(vec![rat(1)], Relation::Le, rat(0))],
        );
        assert_eq!(r, LpResult::Unbounded);
    }

    #[test]
    fn two_point_hull() {
        // min 0·α1 + 2·α2 over the simplex with −α1 + α2 ≥ 0.
        let r = solve(
            2,
            vec![rat(0), rat(2)],
            vec![
                Constraint::new(vec![rat(1), rat(0)], Relation::Ge, rat(0)),
                Constraint::new(vec![rat(0), rat(1)], Relation::Ge, rat(0)),
                Constraint::new(vec![rat(1), rat(1)], Relation::Eq, rat(1)),
                Constraint::new(vec![rat(-1), rat(1)], Relation::Ge, rat(0)),
            ],
        );
        assert_eq!(
            r,
            LpResult::Optimal {
                value: rat(1),
                point: vec![ratio(1, 2), ratio(1, 2)]
            }
        );
    }

    #[test]
    fn degenerate_equalities() {
        // Redundant rows must not trip the artificial cleanup.
        let r = solve(
            2,
            vec![rat(1), rat(1)],
            vec![
                Constraint::new(vec![rat(1), rat(1)], Relation::Eq, rat(2)),
                Constraint::new(vec![rat(2), rat(2)], Relation::Eq, rat(4)),
                Constraint::new(vec![rat(1), rat(0)], Relation::Ge, rat(0)),
                Constraint::new(vec![rat(0), rat(1)], Relation::Ge, rat(0)),
            ],
        );
        match r {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(2)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_rows_normalize() {
        // −x ≤ −3 is x ≥ 3.
        let r = solve(
            1,
            vec![rat(1)],
            vec![Constraint::new(vec![rat(-1)], Relation::Le, rat(-3))],
        );
        assert_eq!(
            r,
            LpResult::Optimal {
                value: rat(3),
                point: vec![rat(3)]
            }
        );
    }
}
