//! Brute-force ground truth over the explicit state space.
//!
//! Everything here works on states packed into a `u64` (bit `i` = node `i`)
//! and explores all `2^n` states, so it is limited to small networks by an
//! explicit [`Budget`]. None of it uses the structural criteria it is meant
//! to check, except the minimal-set searches, which enumerate subsets and
//! test each with the structural criterion.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::control::is_state_controlling;
use crate::error::{CbnError, Result};
use crate::graph::{derived_graph, is_acyclic, require_strongly_connected};
use crate::model::{CbnState, ControlSpec, Digraph};

/// Hard limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest `n` for which the `2^n` state space is explored.
    pub max_state_bits: usize,
    /// Largest `|V*|` for which all `2^|V*|` input vectors are tried per step.
    pub max_input_bits: usize,
    /// Largest `n` for the size-ordered subset searches.
    pub max_subset_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_state_bits: 20,
            max_input_bits: 16,
            max_subset_nodes: 20,
        }
    }
}

impl Budget {
    /// Same limit for every search.
    pub fn uniform(bits: usize) -> Self {
        Budget {
            max_state_bits: bits,
            max_input_bits: bits,
            max_subset_nodes: bits,
        }
    }

    fn check_states(&self, n: usize) -> Result<()> {
        if n > self.max_state_bits || n > 63 {
            return Err(CbnError::Budget(format!(
                "{n} nodes exceed the state-space budget of {} bits",
                self.max_state_bits
            )));
        }
        Ok(())
    }

    fn check_inputs(&self, k: usize) -> Result<()> {
        if k > self.max_input_bits {
            return Err(CbnError::Budget(format!(
                "{k} control nodes exceed the input budget of {} bits",
                self.max_input_bits
            )));
        }
        Ok(())
    }
}

/// Controlled reachability from one initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityResult {
    pub from: CbnState,
    pub reachable: BTreeSet<CbnState>,
    pub transition_count: u64,
}

/// Network with per-node in-neighbor masks.
struct Packed {
    n: usize,
    in_masks: Vec<u64>,
    ctrl_mask: u64,
    /// Every assignment of the control bits, already placed at their nodes.
    patterns: Vec<u64>,
}

impl Packed {
    fn new(net: &Digraph, spec: &ControlSpec) -> Self {
        let n = net.node_count();
        let in_masks = (0..n)
            .map(|v| net.in_neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
            .collect();
        let nodes = spec.nodes();
        let patterns = (0u64..1 << nodes.len())
            .map(|code| {
                nodes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| code >> i & 1 == 1)
                    .fold(0u64, |m, (_, &v)| m | 1 << v)
            })
            .collect();
        Packed {
            n,
            in_masks,
            ctrl_mask: spec.mask(),
            patterns,
        }
    }

    fn step(&self, x: u64) -> u64 {
        self.in_masks.iter().enumerate().fold(
            0u64,
            |acc, (v, &m)| if x & m == m { acc | 1 << v } else { acc },
        )
    }

    /// BFS closure of `{x0 with control bits set every way}` under every input.
    fn reach(&self, x0: u64) -> (Vec<bool>, usize, u64) {
        let mut seen = vec![false; 1 << self.n];
        let mut queue = Vec::new();
        let mut count = 0;
        let mut transitions = 0u64;
        let free = !self.ctrl_mask;
        for &pat in &self.patterns {
            let s = (x0 & free) | pat;
            if !seen[s as usize] {
                seen[s as usize] = true;
                count += 1;
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            let base = self.step(x) & free;
            for &pat in &self.patterns {
                transitions += 1;
                let s = base | pat;
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    count += 1;
                    queue.push(s);
                }
            }
        }
        (seen, count, transitions)
    }

    /// Initial states that differ only in control bits share a closure.
    fn initial_classes(&self) -> impl ParallelIterator<Item = u64> + '_ {
        (0u64..1 << self.n)
            .into_par_iter()
            .filter(move |x| x & self.ctrl_mask == 0)
    }
}

/// Every periodic orbit of the free dynamics, found by following each state
/// until it repeats. Each orbit is in time order starting from its smallest
/// state code; orbits are sorted by that code.
pub fn brute_enumerate_orbits(net: &Digraph, budget: &Budget) -> Result<Vec<Vec<CbnState>>> {
    let n = net.node_count();
    budget.check_states(n)?;
    let packed = Packed::new(net, &ControlSpec::empty());
    let size = 1usize << n;
    let succ: Vec<u64> = (0..size as u64).map(|x| packed.step(x)).collect();
    // 0 = unvisited, 1 = on the current walk, 2 = finished
    let mut mark = vec![0u8; size];
    let mut orbits = Vec::new();
    for start in 0..size {
        if mark[start] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = start;
        while mark[x] == 0 {
            mark[x] = 1;
            walk.push(x);
            x = succ[x] as usize;
        }
        if mark[x] == 1 {
            let pos = walk.iter().position(|&w| w == x).expect("x is on the walk");
            let cycle = &walk[pos..];
            let first = cycle
                .iter()
                .enumerate()
                .min_by_key(|(_, &c)| c)
                .map(|(i, _)| i)
                .unwrap();
            let orbit = cycle[first..]
                .iter()
                .chain(&cycle[..first])
                .map(|&c| CbnState::from_index(n, c as u64))
                .collect();
            orbits.push(orbit);
        }
        for w in walk {
            mark[w] = 2;
        }
    }
    orbits.sort_by_key(|o: &Vec<CbnState>| o[0].to_index());
    Ok(orbits)
}

/// Set of states reachable from `x0` when the control inputs may take any
/// value at every step, starting with `t = 0`.
pub fn controlled_reachability(
    net: &Digraph,
    spec: &ControlSpec,
    x0: &CbnState,
    budget: &Budget,
) -> Result<ReachabilityResult> {
    let n = net.node_count();
    x0.check_len(n)?;
    budget.check_states(n)?;
    budget.check_inputs(spec.len())?;
    let packed = Packed::new(net, spec);
    let (seen, _, transition_count) = packed.reach(x0.to_index());
    let reachable = seen
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| CbnState::from_index(n, i as u64))
        .collect();
    Ok(ReachabilityResult {
        from: x0.clone(),
        reachable,
        transition_count,
    })
}

/// Every state reaches every state under some input sequence.
pub fn brute_state_controllable(
    net: &Digraph,
    spec: &ControlSpec,
    budget: &Budget,
) -> Result<bool> {
    let n = net.node_count();
    budget.check_states(n)?;
    budget.check_inputs(spec.len())?;
    let packed = Packed::new(net, spec);
    let total = 1usize << n;
    Ok(packed
        .initial_classes()
        .all(|x0| packed.reach(x0).1 == total))
}

/// Every state reaches every periodic orbit of the free dynamics under some
/// input sequence.
pub fn brute_orbit_controllable(
    net: &Digraph,
    spec: &ControlSpec,
    budget: &Budget,
) -> Result<bool> {
    let n = net.node_count();
    budget.check_states(n)?;
    budget.check_inputs(spec.len())?;
    let orbits: Vec<Vec<usize>> = brute_enumerate_orbits(net, budget)?
        .into_iter()
        .map(|o| o.iter().map(|x| x.to_index() as usize).collect())
        .collect();
    let packed = Packed::new(net, spec);
    Ok(packed.initial_classes().all(|x0| {
        let (seen, _, _) = packed.reach(x0);
        orbits.iter().all(|orbit| orbit.iter().any(|&s| seen[s]))
    }))
}

/// Smallest control set with an acyclic derived graph (a minimum feedback
/// vertex set), lexicographically first among those of minimum size.
pub fn min_orbit_controlling_set(net: &Digraph, budget: &Budget) -> Result<Vec<usize>> {
    require_strongly_connected(net)?;
    min_subset(net, budget, |spec| {
        Ok(is_acyclic(&derived_graph(net, spec).graph))
    })
}

/// Smallest set passing the structural state-controllability test,
/// lexicographically first among those of minimum size.
pub fn min_state_controlling_set(net: &Digraph, budget: &Budget) -> Result<Vec<usize>> {
    min_subset(net, budget, |spec| {
        Ok(is_state_controlling(net, spec)?.controllable)
    })
}

fn min_subset(
    net: &Digraph,
    budget: &Budget,
    accept: impl Fn(&ControlSpec) -> Result<bool> + Sync,
) -> Result<Vec<usize>> {
    let n = net.node_count();
    if n > budget.max_subset_nodes {
        return Err(CbnError::Budget(format!(
            "{n} nodes exceed the subset-search budget of {}",
            budget.max_subset_nodes
        )));
    }
    for size in 0..=n {
        let candidates: Vec<Vec<usize>> = (0..n).combinations(size).collect();
        let found = candidates.par_iter().find_first(|nodes| {
            let spec = ControlSpec::new(n, nodes.iter().copied()).expect("distinct in-range nodes");
            accept(&spec).unwrap_or(false)
        });
        if let Some(nodes) = found {
            return Ok(nodes.clone());
        }
    }
    Err(CbnError::Internal(
        "controlling every node always succeeds".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::step;

    fn spec(nodes: &[usize]) -> ControlSpec {
        ControlSpec::new(8, nodes.iter().copied()).unwrap()
    }

    #[test]
    fn packed_step_agrees_with_model() {
        for seed in 0..50 {
            let net = crate::generate::random_digraph(9, 0.3, seed);
            let packed = Packed::new(&net, &ControlSpec::empty());
            for code in (0..512u64).step_by(7) {
                let x = CbnState::from_index(9, code);
                assert_eq!(packed.step(code), step(&net, &x).unwrap().to_index());
            }
        }
    }

    #[test]
    fn orbit_counts() {
        let b = Budget::default();
        assert_eq!(
            brute_enumerate_orbits(&Digraph::cycle(3).unwrap(), &b)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            brute_enumerate_orbits(&fixtures::eight_node_example(), &b)
                .unwrap()
                .len(),
            3
        );
        let edgeless = Digraph::new(2, []).unwrap();
        assert_eq!(
            brute_enumerate_orbits(&edgeless, &b).unwrap(),
            vec![vec![CbnState::ones(2)]]
        );
    }

    #[test]
    fn reachability_extremes() {
        let net = fixtures::eight_node_example();
        let b = Budget::default();
        let x0: CbnState = "10110010".parse().unwrap();
        let all = controlled_reachability(&net, &ControlSpec::all(8), &x0, &b).unwrap();
        assert_eq!(all.reachable.len(), 256);
        let none = controlled_reachability(&net, &ControlSpec::empty(), &x0, &b).unwrap();
        let tr = crate::model::simulate(&net, &x0, 300).unwrap();
        let expected: BTreeSet<CbnState> = tr.states.into_iter().collect();
        assert_eq!(none.reachable, expected);
        assert!(none.reachable.contains(&x0));
        for idx in [0u64, 77, 255] {
            let r =
                controlled_reachability(&net, &spec(&[3, 6]), &CbnState::from_index(8, idx), &b)
                    .unwrap();
            assert_eq!(r.reachable.len(), 256);
        }
    }

    #[test]
    fn brute_decisions_on_the_example() {
        let net = fixtures::eight_node_example();
        let b = Budget::default();
        assert!(brute_state_controllable(&net, &spec(&[3, 6]), &b).unwrap());
        assert!(!brute_state_controllable(&net, &spec(&[1]), &b).unwrap());
        assert!(brute_state_controllable(&net, &ControlSpec::all(8), &b).unwrap());
        assert!(brute_orbit_controllable(&net, &spec(&[1]), &b).unwrap());
        assert!(!brute_orbit_controllable(&net, &ControlSpec::empty(), &b).unwrap());
        assert!(!brute_orbit_controllable(&net, &spec(&[2]), &b).unwrap());
    }

    #[test]
    fn minimal_sets() {
        let net = fixtures::eight_node_example();
        let b = Budget::default();
        assert_eq!(min_orbit_controlling_set(&net, &b).unwrap(), vec![0]);
        let state = min_state_controlling_set(&net, &b).unwrap();
        assert_eq!(state.len(), 2);
        for v in 0..8 {
            assert!(
                !is_state_controlling(&net, &spec(&[v]))
                    .unwrap()
                    .controllable
            );
        }
        let self_loop = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(min_orbit_controlling_set(&self_loop, &b).unwrap(), vec![0]);
        assert_eq!(min_state_controlling_set(&self_loop, &b).unwrap(), vec![0]);
        let dag = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(matches!(
            min_orbit_controlling_set(&dag, &b),
            Err(CbnError::Structure(_))
        ));
    }

    #[test]
    fn two_cycle_needs_one_node_for_orbits_and_state() {
        let c2 = Digraph::cycle(2).unwrap();
        let b = Budget::default();
        assert_eq!(min_orbit_controlling_set(&c2, &b).unwrap(), vec![0]);
        // {v0}: the derived graph is the chain 0 -> 1, each node a singleton reach
        assert_eq!(min_state_controlling_set(&c2, &b).unwrap(), vec![0]);
        let brute_min = (0u64..4)
            .filter(|&m| brute_state_controllable(&c2, &ControlSpec::from_mask(2, m), &b).unwrap())
            .map(u64::count_ones)
            .min();
        assert_eq!(brute_min, Some(1));
    }

    #[test]
    fn budgets_are_enforced() {
        let net = crate::generate::random_digraph(12, 0.2, 1);
        let tight = Budget::uniform(10);
        assert!(matches!(
            brute_enumerate_orbits(&net, &tight),
            Err(CbnError::Budget(_))
        ));
        assert!(matches!(
            brute_state_controllable(&net, &ControlSpec::empty(), &tight),
            Err(CbnError::Budget(_))
        ));
        assert!(matches!(
            min_state_controlling_set(&net, &tight),
            Err(CbnError::Budget(_))
        ));
    }
}
