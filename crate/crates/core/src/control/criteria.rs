use crate::error::Result;
use crate::graph::{
    derived_graph, enumerate_cycles, is_acyclic, longest_path_length, out_neighbors_k,
    require_strongly_connected,
};
use crate::model::{ControlSpec, Digraph};

/// A control node `control` whose `k`-step out-neighborhood in the derived
/// graph is exactly one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub control: usize,
    pub k: usize,
}

/// Result of the structural state-controllability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVerdict {
    pub controllable: bool,
    pub derived_acyclic: bool,
    /// Per node, the first witness in `(k, control)` order, if any.
    pub witnesses: Vec<Option<Witness>>,
}

impl StateVerdict {
    pub fn unwitnessed(&self) -> Vec<usize> {
        (0..self.witnesses.len())
            .filter(|&v| self.witnesses[v].is_none())
            .collect()
    }
}

/// Orbit-controllability of a strongly connected network: the derived graph
/// must be acyclic.
pub fn is_orbit_controlling(net: &Digraph, spec: &ControlSpec) -> Result<bool> {
    require_strongly_connected(net)?;
    spec_in_range(net, spec)?;
    Ok(is_acyclic(&derived_graph(net, spec).graph))
}

/// Every simple cycle of `net` contains a control node. Enumerates cycles, so
/// it is only meant for small graphs.
pub fn cycle_intersection_check(net: &Digraph, spec: &ControlSpec, cap: usize) -> Result<bool> {
    spec_in_range(net, spec)?;
    let cycles = enumerate_cycles(net, cap)?;
    Ok(cycles.iter().all(|c| c.iter().any(|&v| spec.contains(v))))
}

/// State-controllability: the derived graph is acyclic and every node is the
/// sole `k`-step out-neighbor of some control node.
///
/// Witnesses are searched with `k` ascending, then control node ascending,
/// up to the longest path of the derived graph.
pub fn is_state_controlling(net: &Digraph, spec: &ControlSpec) -> Result<StateVerdict> {
    spec_in_range(net, spec)?;
    let n = net.node_count();
    let derived = derived_graph(net, spec).graph;
    let Ok(depth) = longest_path_length(&derived) else {
        return Ok(StateVerdict {
            controllable: false,
            derived_acyclic: false,
            witnesses: vec![None; n],
        });
    };
    let mut witnesses = vec![None; n];
    for k in 0..=depth {
        for &u in spec.nodes() {
            if let [v] = out_neighbors_k(&derived, u, k)[..] {
                witnesses[v].get_or_insert(Witness { control: u, k });
            }
        }
    }
    let controllable = witnesses.iter().all(Option::is_some);
    Ok(StateVerdict {
        controllable,
        derived_acyclic: true,
        witnesses,
    })
}

/// Every singleton identity `N_out^k(u; D') = {v}` over control nodes `u`,
/// sorted by `(v, k, u)`. Useful for listing all the witnesses, not just the first.
pub fn singleton_reaches(net: &Digraph, spec: &ControlSpec) -> Result<Vec<(usize, Witness)>> {
    spec_in_range(net, spec)?;
    let derived = derived_graph(net, spec).graph;
    let depth = longest_path_length(&derived)?;
    let mut out = Vec::new();
    for &u in spec.nodes() {
        for k in 0..=depth {
            if let [v] = out_neighbors_k(&derived, u, k)[..] {
                out.push((v, Witness { control: u, k }));
            }
        }
    }
    out.sort_by_key(|&(v, w)| (v, w.k, w.control));
    Ok(out)
}

fn spec_in_range(net: &Digraph, spec: &ControlSpec) -> Result<()> {
    ControlSpec::new(net.node_count(), spec.nodes().iter().copied()).map(|_| ())
}
