//! Exact rational linear programming (two-phase simplex, Bland's rule) and
//! the min★ operator over convex hulls of multidimensional outcomes, in both
//! enumerated and circulation form.

mod minstar;
mod simplex;

pub use minstar::{circulation_min_star, mean_outcome, min_star, DimValue, OutcomeVector};
pub use simplex::{lp_solve, Constraint, LinearProgram, LpResult, Relation};
