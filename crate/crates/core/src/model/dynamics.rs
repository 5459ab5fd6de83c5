//! Synchronous conjunctive dynamics, with and without control inputs.
//!
//! Every non-control node takes the AND of its in-neighbors' previous values.
//! A non-control node without in-neighbors evaluates the empty product and is
//! therefore constant 1 from `t = 1` on.

use std::collections::HashMap;

use log::warn;

use super::{CbnState, ControlSchedule, ControlSpec, Digraph};
use crate::error::{CbnError, Result};

/// States `x(0), x(1), ...` of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub states: Vec<CbnState>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> &CbnState {
        self.states.last().expect("trajectories are never empty")
    }
}

/// The periodic orbit a free run falls into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    /// First time the orbit is entered.
    pub transient_length: usize,
    pub period: usize,
    /// The orbit in time order, starting with `x(transient_length)`.
    pub orbit_states: Vec<CbnState>,
}

pub fn step(net: &Digraph, x: &CbnState) -> Result<CbnState> {
    x.check_len(net.node_count())?;
    Ok(step_unchecked(net, x))
}

fn step_unchecked(net: &Digraph, x: &CbnState) -> CbnState {
    let mut next = CbnState::zeros(net.node_count());
    for v in 0..net.node_count() {
        next.set(v, net.in_neighbors(v).iter().all(|&u| x.get(u)));
    }
    next
}

/// One controlled step: control nodes take `inputs` (in `spec` order),
/// everything else follows the conjunctive rule applied to `x`.
pub fn controlled_step(
    net: &Digraph,
    spec: &ControlSpec,
    x: &CbnState,
    inputs: &[bool],
) -> Result<CbnState> {
    x.check_len(net.node_count())?;
    spec.check_for(net.node_count())?;
    check_inputs(spec, inputs)?;
    let mut next = step_unchecked(net, x);
    apply_inputs(spec, &mut next, inputs);
    Ok(next)
}

pub fn simulate(net: &Digraph, x0: &CbnState, steps: usize) -> Result<Trajectory> {
    x0.check_len(net.node_count())?;
    warn_constant_nodes(net, &ControlSpec::empty());
    let mut states = Vec::with_capacity(steps + 1);
    states.push(x0.clone());
    for t in 0..steps {
        let next = step_unchecked(net, &states[t]);
        states.push(next);
    }
    Ok(Trajectory { states })
}

/// Runs the free dynamics from `x0` until a state repeats.
pub fn find_orbit(net: &Digraph, x0: &CbnState) -> Result<OrbitInfo> {
    x0.check_len(net.node_count())?;
    let mut seen: HashMap<CbnState, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut x = x0.clone();
    loop {
        if let Some(&first) = seen.get(&x) {
            let orbit_states = states.split_off(first);
            return Ok(OrbitInfo {
                transient_length: first,
                period: orbit_states.len(),
                orbit_states,
            });
        }
        seen.insert(x.clone(), states.len());
        let next = step_unchecked(net, &x);
        states.push(x);
        x = next;
    }
}

/// Replays a schedule. Inputs for `t = 0` overwrite the control bits of `x0`,
/// so `states[t]` already carries `schedule[t]` on the control nodes.
pub fn run_schedule(
    net: &Digraph,
    spec: &ControlSpec,
    x0: &CbnState,
    schedule: &ControlSchedule,
) -> Result<Trajectory> {
    x0.check_len(net.node_count())?;
    spec.check_for(net.node_count())?;
    if !schedule.matches(spec) {
        return Err(CbnError::Spec(
            "schedule does not cover exactly the control nodes".into(),
        ));
    }
    warn_constant_nodes(net, spec);
    let mut states = Vec::with_capacity(schedule.horizon() + 1);
    let mut x = x0.clone();
    apply_inputs(spec, &mut x, &schedule.inputs_at(0));
    states.push(x);
    for t in 1..=schedule.horizon() {
        let mut next = step_unchecked(net, &states[t - 1]);
        apply_inputs(spec, &mut next, &schedule.inputs_at(t));
        states.push(next);
    }
    Ok(Trajectory { states })
}

/// Overwrites the control bits of `x` with `inputs` (in `spec` order).
pub fn apply_inputs(spec: &ControlSpec, x: &mut CbnState, inputs: &[bool]) {
    for (&v, &b) in spec.nodes().iter().zip(inputs) {
        x.set(v, b);
    }
}

/// Non-control nodes with no in-neighbors; they are constant 1 after `t = 0`.
pub fn constant_nodes(net: &Digraph, spec: &ControlSpec) -> Vec<usize> {
    (0..net.node_count())
        .filter(|&v| !spec.contains(v) && net.in_neighbors(v).is_empty())
        .collect()
}

fn warn_constant_nodes(net: &Digraph, spec: &ControlSpec) {
    let constant = constant_nodes(net, spec);
    if !constant.is_empty() {
        warn!("nodes {constant:?} have no in-neighbors and are held at 1");
    }
}

fn check_inputs(spec: &ControlSpec, inputs: &[bool]) -> Result<()> {
    if inputs.len() == spec.len() {
        Ok(())
    } else {
        Err(CbnError::Spec(format!(
            "{} input bits for {} control nodes",
            inputs.len(),
            spec.len()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn st(s: &str) -> CbnState {
        s.parse().unwrap()
    }

    #[test]
    fn fixed_points_and_rotation() {
        let c3 = Digraph::cycle(3).unwrap();
        assert_eq!(step(&c3, &CbnState::ones(3)).unwrap(), CbnState::ones(3));
        assert_eq!(step(&c3, &CbnState::zeros(3)).unwrap(), CbnState::zeros(3));
        // x0 = 1, x1 = 0, x2 = 1; node 1 reads node 0, node 2 reads node 1, node 0 reads node 2
        assert_eq!(step(&c3, &st("101")).unwrap(), st("110"));
    }

    #[test]
    fn step_checks_dimension() {
        let c3 = Digraph::cycle(3).unwrap();
        assert_eq!(
            step(&c3, &CbnState::ones(4)),
            Err(CbnError::Dimension {
                expected: 3,
                got: 4
            })
        );
    }

    #[test]
    fn source_node_is_constant_one() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(step(&g, &st("00")).unwrap(), st("10"));
        assert_eq!(constant_nodes(&g, &ControlSpec::empty()), vec![0]);
    }

    #[test]
    fn controlled_step_overrides_and_reduces() {
        let net = fixtures::eight_node_example();
        let all = ControlSpec::all(8);
        let y = st("01101001");
        assert_eq!(
            controlled_step(&net, &all, &CbnState::zeros(8), &y.to_bits()).unwrap(),
            y
        );

        let x = st("11010110");
        assert_eq!(
            controlled_step(&net, &ControlSpec::empty(), &x, &[]).unwrap(),
            step(&net, &x).unwrap()
        );

        let spec = ControlSpec::new(8, [3, 6]).unwrap();
        let next = controlled_step(&net, &spec, &CbnState::ones(8), &[false, true]).unwrap();
        assert_eq!(next, st("11101111"));
    }

    #[test]
    fn controlled_step_rejects_wrong_input_count() {
        let net = fixtures::eight_node_example();
        let spec = ControlSpec::new(8, [3, 6]).unwrap();
        let err = controlled_step(&net, &spec, &CbnState::ones(8), &[true]).unwrap_err();
        assert!(matches!(err, CbnError::Spec(_)));
        let err = controlled_step(&net, &spec, &CbnState::ones(8), &[true; 3]).unwrap_err();
        assert!(matches!(err, CbnError::Spec(_)));
    }

    #[test]
    fn simulate_examples() {
        let c3 = Digraph::cycle(3).unwrap();
        assert_eq!(
            simulate(&c3, &st("101"), 0).unwrap().states,
            vec![st("101")]
        );
        let tr = simulate(&c3, &st("101"), 3).unwrap();
        assert_eq!(tr.len(), 4);
        assert_eq!(tr.states[3], st("101"));

        let net = fixtures::eight_node_example();
        let tr = simulate(&net, &CbnState::ones(8), 10).unwrap();
        assert!(tr.states.iter().all(CbnState::is_all_ones));
    }

    #[test]
    fn find_orbit_examples() {
        let c3 = Digraph::cycle(3).unwrap();
        let o = find_orbit(&c3, &CbnState::ones(3)).unwrap();
        assert_eq!((o.transient_length, o.period), (0, 1));
        let o = find_orbit(&c3, &st("100")).unwrap();
        assert_eq!((o.transient_length, o.period), (0, 3));
        let c2 = Digraph::cycle(2).unwrap();
        let o = find_orbit(&c2, &st("10")).unwrap();
        assert_eq!((o.transient_length, o.period), (0, 2));
        assert_eq!(o.orbit_states, vec![st("10"), st("01")]);
    }

    #[test]
    fn find_orbit_reports_transient() {
        // node 0 -> 1 -> 2 -> 1: node 0 constant, {1,2} a 2-cycle
        let g = Digraph::new(3, [(0, 1), (1, 2), (2, 1)]).unwrap();
        let o = find_orbit(&g, &st("000")).unwrap();
        assert_eq!(o.transient_length, 1);
        assert_eq!(o.period, 1);
        assert_eq!(o.orbit_states, vec![st("100")]);
    }

    #[test]
    fn run_schedule_overwrites_controls_at_time_zero() {
        let net = fixtures::eight_node_example();
        let spec = ControlSpec::new(8, [1]).unwrap();
        let sched = ControlSchedule::constant(&spec, 0, true);
        let tr = run_schedule(&net, &spec, &CbnState::zeros(8), &sched).unwrap();
        assert_eq!(tr.states, vec![st("01000000")]);
    }

    #[test]
    fn run_schedule_rejects_mismatched_schedule() {
        let net = fixtures::eight_node_example();
        let spec = ControlSpec::new(8, [1]).unwrap();
        let other = ControlSpec::new(8, [2]).unwrap();
        let sched = ControlSchedule::constant(&other, 3, true);
        assert!(run_schedule(&net, &spec, &CbnState::zeros(8), &sched).is_err());
    }

    #[test]
    fn all_ones_schedule_reaches_fixed_point_within_n_minus_one() {
        let net = fixtures::eight_node_example();
        let spec = ControlSpec::new(8, [1]).unwrap();
        let sched = ControlSchedule::constant(&spec, 7, true);
        for idx in 0..256 {
            let tr = run_schedule(&net, &spec, &CbnState::from_index(8, idx), &sched).unwrap();
            assert!(tr.last().is_all_ones());
        }
    }

    proptest! {
        #[test]
        fn step_is_monotone(seed in any::<u64>(), a in any::<u8>(), b in any::<u8>()) {
            let net = crate::generate::random_digraph(8, 0.3, seed);
            let x = CbnState::from_index(8, (a & b) as u64);
            let y = CbnState::from_index(8, b as u64);
            prop_assert!(x.le(&y));
            prop_assert!(step(&net, &x).unwrap().le(&step(&net, &y).unwrap()));
        }

        #[test]
        fn orbit_is_consistent(seed in any::<u64>(), code in any::<u16>()) {
            let net = crate::generate::random_digraph(10, 0.2, seed);
            let x0 = CbnState::from_index(10, (code & 0x3ff) as u64);
            let info = find_orbit(&net, &x0).unwrap();
            let tr = simulate(&net, &x0, info.transient_length + info.period).unwrap();
            prop_assert_eq!(&tr.states[info.transient_length..info.transient_length + info.period], &info.orbit_states[..]);
            prop_assert_eq!(tr.last(), &info.orbit_states[0]);
            // minimal transient: the state just before entry is not on the orbit
            if info.transient_length > 0 {
                prop_assert!(!info.orbit_states.contains(&tr.states[info.transient_length - 1]));
            }
        }
    }
}
