use crate::ext::ExtRational;
use crate::game::{Game, VertexId};
use crate::rational::Rational;
use crate::requirement::Requirement;
use num_traits::Zero;

/// Ultimately periodic play `prefix (cycle)^ω` given by vertex sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoPlay {
    pub prefix: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
}

impl LassoPlay {
    pub fn new(prefix: Vec<VertexId>, cycle: Vec<VertexId>) -> Self {
        LassoPlay { prefix, cycle }
    }

    /// Checks that every consecutive pair, the prefix→cycle junction and the
    /// cycle wrap-around are edges of `g`, and that the cycle is nonempty.
    pub fn is_valid(&self, g: &Game) -> bool {
        if self.cycle.is_empty() {
            return false;
        }
        let steps = self
            .prefix
            .iter()
            .chain(self.cycle.iter())
            .chain(std::iter::once(&self.cycle[0]));
        let mut prev: Option<VertexId> = None;
        for &v in steps {
            if v.0 >= g.vertex_count() {
                return false;
            }
            if let Some(u) = prev {
                if g.edge_between(u, v).is_none() {
                    return false;
                }
            }
            prev = Some(v);
        }
        true
    }

    /// All vertices visited by the play, deduplicated, in first-visit order.
    pub fn occurring_vertices(&self) -> Vec<VertexId> {
        let mut seen = Vec::new();
        for &v in self.prefix.iter().chain(self.cycle.iter()) {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        seen
    }
}

/// Per-player mean payoff of the lasso: the cycle average. The prefix is
/// ignored since the mean payoff is prefix-independent.
pub fn mean_payoff(g: &Game, p: &LassoPlay) -> Vec<Rational> {
    debug_assert!(p.is_valid(g));
    let n = p.cycle.len();
    let mut sums = vec![Rational::zero(); g.player_count()];
    for i in 0..n {
        let from = p.cycle[i];
        let to = p.cycle[(i + 1) % n];
        let e = g.edge_between(from, to).expect("lasso step is an edge");
        for (s, w) in sums.iter_mut().zip(&g.edge(e).weights) {
            *s += w;
        }
    }
    let len = Rational::from_integer(n.into());
    sums.into_iter().map(|s| s / &len).collect()
}

/// True iff for every vertex v occurring in the play, the owner of v gets a
/// mean payoff of at least λ(v). Suffix payoffs all equal the cycle mean, so
/// one mean vector decides every suffix.
pub fn is_lambda_consistent(g: &Game, lambda: &Requirement, p: &LassoPlay) -> bool {
    let means = mean_payoff(g, p);
    p.occurring_vertices().into_iter().all(|v| {
        let i = g.owner(v);
        ExtRational::Finite(means[i.0].clone()) >= lambda[v]
    })
}
