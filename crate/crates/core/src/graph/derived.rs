use std::collections::VecDeque;

use crate::error::{CbnError, Result};
use crate::model::{ControlSpec, Digraph};

/// The dependency graph with every in-edge of a control node removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedGraph {
    pub graph: Digraph,
    pub removed_edges: Vec<(usize, usize)>,
    /// Nodes with in-degree 0 after the removal.
    pub source_nodes: Vec<usize>,
}

pub fn derived_graph(net: &Digraph, spec: &ControlSpec) -> DerivedGraph {
    let removed_edges: Vec<_> = net.edges().filter(|&(_, v)| spec.contains(v)).collect();
    let graph = net.filter_edges(|_, v| !spec.contains(v));
    let source_nodes = (0..graph.node_count())
        .filter(|&v| graph.in_neighbors(v).is_empty())
        .collect();
    DerivedGraph {
        graph,
        removed_edges,
        source_nodes,
    }
}

/// Kahn's algorithm; `None` if the graph has a cycle. Ties are broken by
/// smallest index so the order is deterministic.
pub fn topological_order(net: &Digraph) -> Option<Vec<usize>> {
    let n = net.node_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| net.in_neighbors(v).len()).collect();
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in net.out_neighbors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn is_acyclic(net: &Digraph) -> bool {
    topological_order(net).is_some()
}

/// Longest path, counted in edges, of a DAG.
pub fn longest_path_length(dag: &Digraph) -> Result<usize> {
    Ok(longest_path_into(dag)?.into_iter().max().unwrap_or(0))
}

/// Longest path ending at each node of a DAG (0 for sources).
pub fn longest_path_into(dag: &Digraph) -> Result<Vec<usize>> {
    let order = topological_order(dag)
        .ok_or_else(|| CbnError::Structure("longest path requested on a cyclic graph".into()))?;
    let mut dist = vec![0usize; dag.node_count()];
    for &v in &order {
        for &w in dag.out_neighbors(v) {
            dist[w] = dist[w].max(dist[v] + 1);
        }
    }
    Ok(dist)
}

/// Nodes reachable from `v` by walks of exactly `k` edges (sorted).
pub fn out_neighbors_k(net: &Digraph, v: usize, k: usize) -> Vec<usize> {
    out_neighbors_k_of_set(net, &[v], k)
}

/// Nodes reaching `v` by walks of exactly `k` edges (sorted).
pub fn in_neighbors_k(net: &Digraph, v: usize, k: usize) -> Vec<usize> {
    in_neighbors_k_of_set(net, &[v], k)
}

pub fn out_neighbors_k_of_set(net: &Digraph, set: &[usize], k: usize) -> Vec<usize> {
    iterate(net.node_count(), set, k, |v| net.out_neighbors(v))
}

pub fn in_neighbors_k_of_set(net: &Digraph, set: &[usize], k: usize) -> Vec<usize> {
    iterate(net.node_count(), set, k, |v| net.in_neighbors(v))
}

fn iterate<'a>(
    n: usize,
    set: &[usize],
    k: usize,
    next: impl Fn(usize) -> &'a [usize],
) -> Vec<usize> {
    let mut current = vec![false; n];
    for &v in set {
        current[v] = true;
    }
    for _ in 0..k {
        let mut after = vec![false; n];
        let mut any = false;
        for v in (0..n).filter(|&v| current[v]) {
            for &w in next(v) {
                after[w] = true;
                any = true;
            }
        }
        current = after;
        if !any {
            break;
        }
    }
    (0..n).filter(|&v| current[v]).collect()
}

/// Nodes reachable from `v` (including `v`).
pub fn reachable_from(net: &Digraph, v: usize) -> Vec<bool> {
    let mut seen = vec![false; net.node_count()];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &w in net.out_neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}
