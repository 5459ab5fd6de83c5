use std::collections::VecDeque;

use crate::error::{CbnError, Result};
use crate::model::Digraph;

/// Strongly connected components (Tarjan, iterative). Components come out in
/// reverse topological order of the condensation; members are sorted.
pub fn strongly_connected_components(net: &Digraph) -> Vec<Vec<usize>> {
    sccs_within(net, &vec![true; net.node_count()])
}

/// Tarjan restricted to the nodes with `active[v]`.
pub(crate) fn sccs_within(net: &Digraph, active: &[bool]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = net.node_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut out = Vec::new();

    for root in (0..n).filter(|&v| active[v]) {
        if index[root] != UNSEEN {
            continue;
        }
        // (node, position in its out-list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            let succ = net.out_neighbors(v);
            if frame.1 < succ.len() {
                let w = succ[frame.1];
                frame.1 += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out
}

/// Every node reaches every other node. A single node counts as strongly
/// connected with or without a self-loop.
pub fn is_strongly_connected(net: &Digraph) -> bool {
    let n = net.node_count();
    let forward = bfs_levels(net, 0);
    if forward.iter().any(Option::is_none) {
        return false;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &u in net.in_neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                queue.push_back(u);
            }
        }
    }
    count == n
}

/// BFS distance from `root` along out-edges; `None` for unreachable nodes.
pub fn bfs_levels(net: &Digraph, root: usize) -> Vec<Option<usize>> {
    let mut level = vec![None; net.node_count()];
    level[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let next = level[v].map(|l| l + 1);
        for &w in net.out_neighbors(v) {
            if level[w].is_none() {
                level[w] = next;
                queue.push_back(w);
            }
        }
    }
    level
}

pub(crate) fn require_strongly_connected(net: &Digraph) -> Result<()> {
    if is_strongly_connected(net) {
        Ok(())
    } else {
        Err(CbnError::Structure(
            "dependency graph is not strongly connected".into(),
        ))
    }
}

/// Loop number: gcd of all cycle lengths of a strongly connected graph.
///
/// With BFS levels from node 0, every edge `(u, v)` closes walks whose
/// length differs from a level-consistent walk by `level(u) + 1 - level(v)`,
/// and the gcd of these discrepancies over all edges is the gcd of the
/// cycle lengths.
pub fn loop_number(net: &Digraph) -> Result<usize> {
    require_strongly_connected(net)?;
    let level: Vec<usize> = bfs_levels(net, 0).into_iter().map(|l| l.unwrap()).collect();
    let mut g = 0;
    for (u, v) in net.edges() {
        g = gcd(g, (level[u] + 1).abs_diff(level[v]));
    }
    if g == 0 {
        return Err(CbnError::Structure("graph has no cycle".into()));
    }
    Ok(g)
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
