//! Controllability criteria, control-law synthesis and control expressions.

mod criteria;
mod expression;
mod synthesis;

pub use criteria::{
    cycle_intersection_check, is_orbit_controlling, is_state_controlling, singleton_reaches,
    StateVerdict, Witness,
};
pub use expression::{control_expression, ControlExpression, ControlFactor};
pub use synthesis::{synthesize_orbit_control, synthesize_state_control, SynthesisReport};
