//! Exact graph algorithms shared by the solver crates: reachability, cyclic
//! strongly connected components, simple-cycle enumeration with a hard cap,
//! and exact minimum cycle mean.

mod cycles;
mod karp;
mod scc;

pub use cycles::simple_cycles;
pub use karp::min_cycle_mean;
pub use scc::sccs;

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(pub usize);

/// Directed graph with arcs addressed by insertion index. Arc payloads live
/// in caller-side tables keyed by ArcId.
#[derive(Clone, Debug, Default)]
pub struct DiGraph {
    arcs: Vec<(NodeId, NodeId)>,
    succ: Vec<Vec<ArcId>>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("simple cycle count exceeds cap {0}")]
    CycleCapExceeded(usize),
}

impl DiGraph {
    pub fn new(node_count: usize) -> Self {
        DiGraph {
            arcs: Vec::new(),
            succ: vec![Vec::new(); node_count],
        }
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn add_node(&mut self) -> NodeId {
        self.succ.push(Vec::new());
        NodeId(self.succ.len() - 1)
    }

    pub fn add_arc(&mut self, from: NodeId, to: NodeId) -> ArcId {
        assert!(from.0 < self.succ.len() && to.0 < self.succ.len());
        let id = ArcId(self.arcs.len());
        self.arcs.push((from, to));
        self.succ[from.0].push(id);
        id
    }

    pub fn arc(&self, a: ArcId) -> (NodeId, NodeId) {
        self.arcs[a.0]
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.succ.len()).map(NodeId)
    }

    /// Outgoing arcs in insertion order.
    pub fn out_arcs(&self, v: NodeId) -> &[ArcId] {
        &self.succ[v.0]
    }

    pub fn successors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.succ[v.0].iter().map(move |&a| self.arcs[a.0].1)
    }

    /// Subgraph induced by `keep`; returns the graph plus new→old node and
    /// arc translation tables. Node order follows `keep`.
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> (DiGraph, Vec<NodeId>, Vec<ArcId>) {
        let mut old_to_new = vec![usize::MAX; self.node_count()];
        for (i, &v) in keep.iter().enumerate() {
            old_to_new[v.0] = i;
        }
        let mut sub = DiGraph::new(keep.len());
        let mut arc_map = Vec::new();
        for &v in keep {
            for &a in self.out_arcs(v) {
                let (u, w) = self.arcs[a.0];
                if old_to_new[w.0] != usize::MAX {
                    sub.add_arc(NodeId(old_to_new[u.0]), NodeId(old_to_new[w.0]));
                    arc_map.push(a);
                }
            }
        }
        (sub, keep.to_vec(), arc_map)
    }
}

/// Forward-reachable set from `s`, including `s` itself.
pub fn reachable(g: &DiGraph, s: NodeId) -> BTreeSet<NodeId> {
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![s];
    seen[s.0] = true;
    while let Some(v) = stack.pop() {
        for w in g.successors(v) {
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    (0..g.node_count()).filter(|&i| seen[i]).map(NodeId).collect()
}

/// DOT rendering with caller-supplied labels.
pub fn to_dot(
    g: &DiGraph,
    node_label: impl Fn(NodeId) -> String,
    arc_label: impl Fn(ArcId) -> String,
) -> String {
    let mut s = String::from("digraph {\n");
    for v in g.nodes() {
        s.push_str(&format!("  n{} [label=\"{}\"];\n", v.0, escape(&node_label(v))));
    }
    for (i, &(u, v)) in g.arcs.iter().enumerate() {
        let label = arc_label(ArcId(i));
        if label.is_empty() {
            s.push_str(&format!("  n{} -> n{};\n", u.0, v.0));
        } else {
            s.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                u.0,
                v.0,
                escape(&label)
            ));
        }
    }
    s.push_str("}\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
