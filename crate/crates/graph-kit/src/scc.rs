use crate::{DiGraph, NodeId};

/// Cyclic strongly connected components: maximal SCCs containing at least one
/// internal arc. Singletons without a self-loop are dropped since no infinite
/// play can settle there. Members are sorted; components are ordered by their
/// least node.
pub fn sccs(g: &DiGraph) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut components: Vec<Vec<NodeId>> = Vec::new();

    // Tarjan with an explicit DFS stack; frames track progress through the
    // successor list so large Conc graphs cannot overflow the call stack.
    struct Frame {
        v: usize,
        next_arc: usize,
    }
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut frames = vec![Frame { v: root, next_arc: 0 }];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(frame) = frames.last_mut() {
            let v = frame.v;
            if frame.next_arc < g.out_arcs(NodeId(v)).len() {
                let a = g.out_arcs(NodeId(v))[frame.next_arc];
                frame.next_arc += 1;
                let w = g.arc(a).1 .0;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push(Frame { v: w, next_arc: 0 });
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(NodeId(w));
                        if w == v {
                            break;
                        }
                    }
                    comp.sort();
                    if is_cyclic(g, &comp) {
                        components.push(comp);
                    }
                }
                frames.pop();
                if let Some(parent) = frames.last() {
                    let pv = parent.v;
                    low[pv] = low[pv].min(low[v]);
                }
            }
        }
    }
    components.sort_by_key(|c| c[0]);
    components
}

fn is_cyclic(g: &DiGraph, comp: &[NodeId]) -> bool {
    if comp.len() > 1 {
        return true;
    }
    let v = comp[0];
    g.successors(v).any(|w| w == v)
}
