//! Network model: dependency graph, states, control sets and dynamics.

mod digraph;
mod dynamics;
mod schedule;
mod state;

pub use digraph::Digraph;
pub use dynamics::{
    apply_inputs, constant_nodes, controlled_step, find_orbit, run_schedule, simulate, step,
    OrbitInfo, Trajectory,
};
pub use schedule::{ControlSchedule, ControlSpec};
pub use state::{format_bits, parse_bits, CbnState};
