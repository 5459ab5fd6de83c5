use crate::error::{CbnError, Result};

/// The set of externally driven nodes, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ControlSpec {
    nodes: Vec<usize>,
}

impl ControlSpec {
    /// Validates the node list against a network of `node_count` nodes.
    /// Duplicates are rejected; order is normalized to ascending.
    pub fn new(node_count: usize, nodes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut nodes: Vec<usize> = nodes.into_iter().collect();
        if let Some(&bad) = nodes.iter().find(|&&v| v >= node_count) {
            return Err(CbnError::Spec(format!(
                "control node {bad} out of range for {node_count} nodes"
            )));
        }
        nodes.sort_unstable();
        if nodes.windows(2).any(|w| w[0] == w[1]) {
            return Err(CbnError::Spec("duplicate control node".into()));
        }
        Ok(ControlSpec { nodes })
    }

    pub fn empty() -> Self {
        ControlSpec::default()
    }

    pub fn all(node_count: usize) -> Self {
        ControlSpec {
            nodes: (0..node_count).collect(),
        }
    }

    /// Control set from a bitmask over node indices.
    pub fn from_mask(node_count: usize, mask: u64) -> Self {
        ControlSpec {
            nodes: (0..node_count).filter(|&i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    /// Position of `v` in the ordered control list.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.nodes.binary_search(&v).ok()
    }

    pub fn mask(&self) -> u64 {
        self.nodes.iter().fold(0u64, |m, &v| m | 1 << v)
    }

    pub(crate) fn check_for(&self, node_count: usize) -> Result<()> {
        match self.nodes.last() {
            Some(&v) if v >= node_count => Err(CbnError::Spec(format!(
                "control node {v} out of range for {node_count} nodes"
            ))),
            _ => Ok(()),
        }
    }
}

/// Time-indexed control inputs: one row per control node, columns `t = 0..=horizon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlSchedule {
    nodes: Vec<usize>,
    rows: Vec<Vec<bool>>,
    horizon: usize,
}

impl ControlSchedule {
    /// `rows[i]` holds the inputs of `spec.nodes()[i]`; all rows must have
    /// the same length `horizon + 1`.
    pub fn new(spec: &ControlSpec, rows: Vec<Vec<bool>>) -> Result<Self> {
        if rows.len() != spec.len() {
            return Err(CbnError::Spec(format!(
                "schedule has {} rows for {} control nodes",
                rows.len(),
                spec.len()
            )));
        }
        let width = rows.first().map_or(1, Vec::len);
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(CbnError::Spec(
                "schedule rows must share a nonzero length".into(),
            ));
        }
        Ok(ControlSchedule {
            nodes: spec.nodes().to_vec(),
            rows,
            horizon: width - 1,
        })
    }

    /// Schedule with every input fixed to `value` for `t = 0..=horizon`.
    pub fn constant(spec: &ControlSpec, horizon: usize, value: bool) -> Self {
        ControlSchedule {
            nodes: spec.nodes().to_vec(),
            rows: vec![vec![value; horizon + 1]; spec.len()],
            horizon,
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    /// Inputs of control node `v` over time, if `v` is scheduled.
    pub fn row_of(&self, v: usize) -> Option<&[bool]> {
        self.nodes
            .iter()
            .position(|&u| u == v)
            .map(|i| self.rows[i].as_slice())
    }

    /// Inputs at time `t`, in control-node order.
    pub fn inputs_at(&self, t: usize) -> Vec<bool> {
        self.rows.iter().map(|r| r[t]).collect()
    }

    pub fn matches(&self, spec: &ControlSpec) -> bool {
        self.nodes == spec.nodes()
    }
}
