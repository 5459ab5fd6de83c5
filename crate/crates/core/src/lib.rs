//! Conjunctive Boolean networks: dynamics, periodic orbits and control.
//!
//! Every node of a conjunctive network updates to the AND of its
//! in-neighbors. This crate covers
//!
//! - the synchronous dynamics with and without control inputs ([`model`]),
//! - structural analysis of the dependency graph ([`graph`]),
//! - the correspondence between periodic orbits of a strongly connected
//!   network and binary necklaces ([`necklace`], [`orbits`]),
//! - structural controllability tests and explicit control laws ([`control`]),
//! - exhaustive state-space oracles for cross-checking at small sizes ([`oracle`]).
//!
//! ```
//! use cbn_core::{control, fixtures, CbnState, ControlSpec};
//!
//! let net = fixtures::eight_node_example();
//! let spec = ControlSpec::new(8, [3, 6])?;
//! assert!(control::is_state_controlling(&net, &spec)?.controllable);
//!
//! let target: CbnState = "11000101".parse()?;
//! let report = control::synthesize_state_control(&net, &spec, &target)?;
//! let run = cbn_core::run_schedule(&net, &spec, &CbnState::zeros(8), &report.schedule)?;
//! assert_eq!(run.last(), &target);
//! # Ok::<(), cbn_core::CbnError>(())
//! ```

pub mod control;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod model;
pub mod necklace;
pub mod oracle;
pub mod orbits;

pub use error::{CbnError, Result};
pub use model::{
    controlled_step, find_orbit, run_schedule, simulate, step, CbnState, ControlSchedule,
    ControlSpec, Digraph, OrbitInfo, Trajectory,
};
pub use necklace::Necklace;
