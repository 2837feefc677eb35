use crate::{sccs, DiGraph, GraphError, NodeId};
use std::collections::HashSet;

/// Every elementary cycle exactly once, as a node sequence starting at its
/// least node. Errors out once more than `cap` cycles have been found; the
/// callers' convex-hull arguments need the full list, so truncation is not an
/// option. Cycles are confined to single SCCs, which are processed
/// independently; within one, a blocked-set search in Johnson's style roots
/// each cycle at its least node, so the canonical rotation falls out of the
/// traversal order.
pub fn simple_cycles(g: &DiGraph, cap: usize) -> Result<Vec<Vec<NodeId>>, GraphError> {
    assert!(cap > 0);
    let mut cycles = Vec::new();
    for comp in sccs(g) {
        enumerate_in_scc(g, &comp, cap, &mut cycles)?;
    }
    Ok(cycles)
}

fn enumerate_in_scc(
    g: &DiGraph,
    comp: &[NodeId],
    cap: usize,
    cycles: &mut Vec<Vec<NodeId>>,
) -> Result<(), GraphError> {
    // comp is sorted, so roots are processed in increasing order and each
    // cycle is reported exactly once, rooted at its least node.
    for (i, &root) in comp.iter().enumerate() {
        let allowed: HashSet<NodeId> = comp[i..].iter().copied().collect();
        search_from(g, root, &allowed, cap, cycles)?;
    }
    Ok(())
}

struct Frame {
    v: NodeId,
    next: usize,
    found: bool,
}

fn search_from(
    g: &DiGraph,
    root: NodeId,
    allowed: &HashSet<NodeId>,
    cap: usize,
    cycles: &mut Vec<Vec<NodeId>>,
) -> Result<(), GraphError> {
    let n = g.node_count();
    let mut blocked = vec![false; n];
    let mut block_list: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut path: Vec<NodeId> = vec![root];
    blocked[root.0] = true;
    let mut frames = vec![Frame { v: root, next: 0, found: false }];

    while let Some(frame) = frames.last_mut() {
        let v = frame.v;
        let arcs = g.out_arcs(v);
        if frame.next < arcs.len() {
            let w = g.arc(arcs[frame.next]).1;
            frame.next += 1;
            if !allowed.contains(&w) {
                continue;
            }
            if w == root {
                if cycles.len() == cap {
                    return Err(GraphError::CycleCapExceeded(cap));
                }
                cycles.push(path.clone());
                frame.found = true;
            } else if !blocked[w.0] {
                path.push(w);
                blocked[w.0] = true;
                frames.push(Frame { v: w, next: 0, found: false });
            }
        } else {
            let found = frame.found;
            frames.pop();
            path.pop();
            if found {
                unblock(v, &mut blocked, &mut block_list);
                if let Some(parent) = frames.last_mut() {
                    parent.found = true;
                }
            } else {
                for w in g.successors(v) {
                    if allowed.contains(&w) && !block_list[w.0].contains(&v) {
                        block_list[w.0].push(v);
                    }
                }
            }
        }
    }
    Ok(())
}

fn unblock(v: NodeId, blocked: &mut [bool], block_list: &mut [Vec<NodeId>]) {
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        if !blocked[u.0] {
            continue;
        }
        blocked[u.0] = false;
        for w in std::mem::take(&mut block_list[u.0]) {
            stack.push(w);
        }
    }
}
