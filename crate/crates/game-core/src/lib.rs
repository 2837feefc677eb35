//! Core types for multiplayer mean-payoff games: exact rationals with
//! symbolic infinities, game graphs with a line-oriented text format, lasso
//! plays with their mean payoffs, and requirements (vertex-indexed extended
//! rational maps).

pub mod ext;
pub mod game;
pub mod play;
pub mod rational;
pub mod requirement;

pub use ext::ExtRational;
pub use game::{parse_game, serialize_game, Edge, EdgeId, Game, GameError, PlayerId, VertexId};
pub use play::{is_lambda_consistent, mean_payoff, LassoPlay};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use requirement::{
    parse_requirement, serialize_requirement, vacuous_requirement, Requirement,
};
