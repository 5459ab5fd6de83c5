use crate::error::{CbnError, Result};
use crate::graph::{derived_graph, topological_order};
use crate::model::{ControlSchedule, ControlSpec, Digraph};

/// `x_source(t - delay)`, appearing once per distinct path of that length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ControlFactor {
    pub source: usize,
    pub delay: usize,
    pub paths: u64,
}

/// `x_target(time)` written as a product of delayed control inputs, one
/// factor per source-to-target path of the derived graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlExpression {
    pub target: usize,
    pub time: usize,
    /// Sorted by `(source, delay)`.
    pub factors: Vec<ControlFactor>,
    /// Non-control sources reaching the target. They read 1 from `t = 1` on.
    pub constant_sources: Vec<usize>,
}

impl ControlExpression {
    /// Value of the product under `schedule`, or `None` if a factor falls
    /// outside the scheduled window.
    pub fn evaluate(&self, schedule: &ControlSchedule) -> Option<bool> {
        let mut value = true;
        for f in &self.factors {
            let t = self.time.checked_sub(f.delay)?;
            let row = schedule.row_of(f.source)?;
            value &= *row.get(t)?;
        }
        Some(value)
    }
}

/// Expands `x_v(t)` over the paths of the derived graph ending at `v`.
///
/// `t` must be large enough that every path reaches back to a control input
/// (`t >= delay`) or to a constant source after its initial value
/// (`t > delay`).
pub fn control_expression(
    net: &Digraph,
    spec: &ControlSpec,
    v: usize,
    t: usize,
) -> Result<ControlExpression> {
    net.check_node(v)?;
    let derived = derived_graph(net, spec).graph;
    let order = topological_order(&derived)
        .ok_or_else(|| CbnError::Structure("derived graph has a cycle".into()))?;
    let n = net.node_count();

    // counts[u][l]: paths of length l from u to v
    let mut counts = vec![vec![0u64; n]; n];
    counts[v][0] = 1;
    for &u in order.iter().rev() {
        for &w in derived.out_neighbors(u) {
            for l in 0..n - 1 {
                let c = counts[w][l];
                if c > 0 {
                    counts[u][l + 1] = counts[u][l + 1].saturating_add(c);
                }
            }
        }
    }

    let mut factors = Vec::new();
    let mut constant_sources = Vec::new();
    let mut min_time = 0;
    for u in (0..n).filter(|&u| derived.in_neighbors(u).is_empty()) {
        for (delay, &paths) in counts[u].iter().enumerate().filter(|(_, &c)| c > 0) {
            if spec.contains(u) {
                factors.push(ControlFactor {
                    source: u,
                    delay,
                    paths,
                });
                min_time = min_time.max(delay);
            } else {
                if !constant_sources.contains(&u) {
                    constant_sources.push(u);
                }
                min_time = min_time.max(delay + 1);
            }
        }
    }
    if t < min_time {
        return Err(CbnError::Spec(format!(
            "control expression of node {v} needs t >= {min_time}, got {t}"
        )));
    }
    Ok(ControlExpression {
        target: v,
        time: t,
        factors,
        constant_sources,
    })
}
