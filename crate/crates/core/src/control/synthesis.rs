//! Explicit control laws for orbit and state targets.

use super::criteria::{is_orbit_controlling, is_state_controlling};
use crate::error::{CbnError, Result};
use crate::graph::{derived_graph, irreducible_components, longest_path_length, out_neighbors_k};
use crate::model::{
    apply_inputs, controlled_step, find_orbit, run_schedule, step, CbnState, ControlSchedule,
    ControlSpec, Digraph,
};
use crate::necklace::Necklace;
use crate::orbits::necklace_from_orbit;

/// A synthesized schedule and what replaying it achieves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisReport {
    pub schedule: ControlSchedule,
    /// Orbit control only: first time the designated node carries the target.
    pub tau: Option<usize>,
    /// Orbit control only: the control node carrying the target sequence.
    pub designated: Option<usize>,
    /// Time at which the target state is reached (state control) or the
    /// target orbit is entered by the free run after the schedule ends
    /// (orbit control).
    pub entry_time: usize,
}

/// Drives the network from `x0` into the orbit of `target`.
///
/// Phase 1 holds every control input at 1 until the controlled state is all
/// ones; `tau` is the step right after. Phase 2 feeds `target` bit by bit
/// into one designated control node (the lowest-indexed one unless
/// `designated` is given) while the other control nodes replay their own
/// conjunctive update, so the rest of the network runs freely. Nodes `j`
/// steps downstream of the designated node then hold `target[p-1-j]` at time
/// `tau + p - 1`, every other node holds 1, and the free run afterwards
/// settles on the target orbit.
pub fn synthesize_orbit_control(
    net: &Digraph,
    spec: &ControlSpec,
    target: &Necklace,
    x0: &CbnState,
    designated: Option<usize>,
) -> Result<SynthesisReport> {
    x0.check_len(net.node_count())?;
    if !is_orbit_controlling(net, spec)? {
        return Err(CbnError::NotControllable(
            "derived graph has a cycle, so the control set is not orbit-controlling".into(),
        ));
    }
    let partition = irreducible_components(net)?;
    let p = partition.loop_number;
    if target.len() != p {
        return Err(CbnError::Spec(format!(
            "target necklace has length {}, loop number is {p}",
            target.len()
        )));
    }
    let designated = match designated {
        Some(v) if spec.contains(v) => v,
        Some(v) => {
            return Err(CbnError::Spec(format!(
                "designated node {v} is not a control node"
            )))
        }
        None => spec.nodes()[0],
    };

    let tau = saturation_time(net, spec, x0)?;
    let horizon = tau + p - 1;
    let slot = spec.position(designated).expect("checked above");
    let mut rows = vec![vec![true; horizon + 1]; spec.len()];
    let inputs_at = |t: usize, free: &CbnState| -> Vec<bool> {
        if t < tau {
            return vec![true; spec.len()];
        }
        let mut inputs: Vec<bool> = spec.nodes().iter().map(|&v| free.get(v)).collect();
        inputs[slot] = target.bits()[t - tau];
        inputs
    };
    // x0 is all ones whenever tau == 0, so its own bits are the free values at t = 0
    let mut x = x0.clone();
    for t in 0..=horizon {
        let free = if t == 0 { x0.clone() } else { step(net, &x)? };
        let inputs = inputs_at(t, &free);
        for (row, &b) in rows.iter_mut().zip(&inputs) {
            row[t] = b;
        }
        x = free;
        apply_inputs(spec, &mut x, &inputs);
    }
    let schedule = ControlSchedule::new(spec, rows)?;

    let trajectory = run_schedule(net, spec, x0, &schedule)?;
    let info = find_orbit(net, trajectory.last())?;
    let reached = necklace_from_orbit(net, &partition, &info.orbit_states)?;
    if &reached != target {
        return Err(CbnError::Internal(format!(
            "schedule settled on orbit {reached} instead of {target}"
        )));
    }
    Ok(SynthesisReport {
        schedule,
        tau: Some(tau),
        designated: Some(designated),
        entry_time: horizon + info.transient_length,
    })
}

/// Phase 1 of the orbit control law: `0` if `x0` is already all ones,
/// otherwise one past the first time the all-ones-controlled state is all ones.
fn saturation_time(net: &Digraph, spec: &ControlSpec, x0: &CbnState) -> Result<usize> {
    if x0.is_all_ones() {
        return Ok(0);
    }
    let n = net.node_count();
    let ones = vec![true; spec.len()];
    let mut x = x0.clone();
    apply_inputs(spec, &mut x, &ones);
    // an acyclic derived graph saturates within n - 1 steps
    for t in 0..n {
        if x.is_all_ones() {
            return Ok(t + 1);
        }
        x = controlled_step(net, spec, &x, &ones)?;
    }
    Err(CbnError::Internal(
        "all-ones inputs failed to saturate the network".into(),
    ))
}

/// Steers any initial state to `target` at time `T`, the longest path of the
/// derived graph. Control node `u` gets 0 at time `t` exactly when its
/// `(T - t)`-step out-neighborhood is a single node whose target bit is 0.
pub fn synthesize_state_control(
    net: &Digraph,
    spec: &ControlSpec,
    target: &CbnState,
) -> Result<SynthesisReport> {
    target.check_len(net.node_count())?;
    let verdict = is_state_controlling(net, spec)?;
    if !verdict.controllable {
        return Err(CbnError::NotControllable(format!(
            "nodes {:?} are not the sole k-step out-neighbor of any control node",
            verdict.unwitnessed()
        )));
    }
    let derived = derived_graph(net, spec).graph;
    let horizon = longest_path_length(&derived)?;
    let rows = spec
        .nodes()
        .iter()
        .map(|&u| {
            (0..=horizon)
                .map(|t| match out_neighbors_k(&derived, u, horizon - t)[..] {
                    [v] => target.get(v),
                    _ => true,
                })
                .collect()
        })
        .collect();
    let schedule = ControlSchedule::new(spec, rows)?;
    Ok(SynthesisReport {
        schedule,
        tau: None,
        designated: None,
        entry_time: horizon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn spec(nodes: &[usize]) -> ControlSpec {
        ControlSpec::new(8, nodes.iter().copied()).unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        crate::model::parse_bits(s).unwrap()
    }

    #[test]
    fn orbit_control_left_table() {
        let net = fixtures::eight_node_example();
        let report = synthesize_orbit_control(
            &net,
            &spec(&[1]),
            &"01".parse().unwrap(),
            &CbnState::zeros(8),
            None,
        )
        .unwrap();
        assert_eq!(report.tau, Some(6));
        assert_eq!(report.schedule.row_of(1).unwrap(), &bits("11111101")[..]);
        assert_eq!(report.entry_time, 13);
    }

    #[test]
    fn orbit_control_right_table() {
        let net = fixtures::eight_node_example();
        let report = synthesize_orbit_control(
            &net,
            &spec(&[3, 6]),
            &"01".parse().unwrap(),
            &CbnState::zeros(8),
            Some(6),
        )
        .unwrap();
        assert_eq!(report.schedule.row_of(3).unwrap(), &bits("11111111")[..]);
        assert_eq!(report.schedule.row_of(6).unwrap(), &bits("11111101")[..]);
    }

    #[test]
    fn orbit_control_all_ones_target() {
        let net = fixtures::eight_node_example();
        let report = synthesize_orbit_control(
            &net,
            &spec(&[1]),
            &"11".parse().unwrap(),
            &CbnState::zeros(8),
            None,
        )
        .unwrap();
        assert!(report.schedule.rows().iter().flatten().all(|&b| b));
        let tr = run_schedule(&net, &spec(&[1]), &CbnState::zeros(8), &report.schedule).unwrap();
        assert!(tr.states[report.tau.unwrap()].is_all_ones());
    }

    #[test]
    fn orbit_control_rejects_bad_requests() {
        let net = fixtures::eight_node_example();
        let x0 = CbnState::zeros(8);
        let s: Necklace = "01".parse().unwrap();
        assert!(matches!(
            synthesize_orbit_control(&net, &spec(&[2]), &s, &x0, None),
            Err(CbnError::NotControllable(_))
        ));
        assert!(matches!(
            synthesize_orbit_control(&net, &spec(&[1]), &"011".parse().unwrap(), &x0, None),
            Err(CbnError::Spec(_))
        ));
        assert!(matches!(
            synthesize_orbit_control(&net, &spec(&[1]), &s, &x0, Some(4)),
            Err(CbnError::Spec(_))
        ));
    }

    #[test]
    fn state_control_table() {
        let net = fixtures::eight_node_example();
        let target: CbnState = "11000101".parse().unwrap();
        let report = synthesize_state_control(&net, &spec(&[3, 6]), &target).unwrap();
        assert_eq!(report.entry_time, 5);
        assert_eq!(report.schedule.row_of(3).unwrap(), &bits("011100")[..]);
        assert_eq!(report.schedule.row_of(6).unwrap(), &bits("101110")[..]);
        for idx in 0..256 {
            let tr = run_schedule(
                &net,
                &spec(&[3, 6]),
                &CbnState::from_index(8, idx),
                &report.schedule,
            )
            .unwrap();
            assert_eq!(tr.last(), &target);
        }
    }

    #[test]
    fn state_control_all_ones_target() {
        let net = fixtures::eight_node_example();
        let report = synthesize_state_control(&net, &spec(&[3, 6]), &CbnState::ones(8)).unwrap();
        assert!(report.schedule.rows().iter().flatten().all(|&b| b));
    }

    #[test]
    fn state_control_rejects_left_set() {
        let net = fixtures::eight_node_example();
        assert!(matches!(
            synthesize_state_control(&net, &spec(&[1]), &CbnState::ones(8)),
            Err(CbnError::NotControllable(_))
        ));
    }

    #[test]
    fn state_control_random_six_node_instances() {
        let mut checked = 0;
        for seed in 0..400u64 {
            let net = crate::generate::random_digraph(6, 0.3, seed);
            for mask in 0..64u64 {
                let spec = ControlSpec::from_mask(6, mask);
                if !is_state_controlling(&net, &spec).unwrap().controllable || spec.len() == 6 {
                    continue;
                }
                let target = CbnState::from_index(6, seed.wrapping_mul(31).wrapping_add(mask) & 63);
                let report = synthesize_state_control(&net, &spec, &target).unwrap();
                for idx in 0..64 {
                    let tr =
                        run_schedule(&net, &spec, &CbnState::from_index(6, idx), &report.schedule)
                            .unwrap();
                    assert_eq!(tr.last(), &target, "seed {seed} mask {mask:#b}");
                }
                checked += 1;
                break;
            }
        }
        assert!(checked > 20, "only {checked} instances exercised");
    }
}
