use std::fmt;

use crate::error::{CbnError, Result};

/// Dependency graph of a conjunctive network.
///
/// Nodes are dense indices `0..n`. An edge `(u, v)` means node `v` reads
/// node `u`. Self-loops are allowed, parallel edges are not. Adjacency lists
/// are kept sorted so every traversal is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Digraph {
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if node_count == 0 {
            return Err(CbnError::Graph("a network needs at least one node".into()));
        }
        let mut out = vec![Vec::new(); node_count];
        let mut inn = vec![Vec::new(); node_count];
        for (src, dst) in edges {
            if src >= node_count || dst >= node_count {
                return Err(CbnError::Graph(format!(
                    "edge ({src}, {dst}) out of range for {node_count} nodes"
                )));
            }
            out[src].push(dst);
            inn[dst].push(src);
        }
        for (v, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(CbnError::Graph(format!("duplicate edge out of node {v}")));
            }
        }
        for list in &mut inn {
            list.sort_unstable();
        }
        Ok(Digraph {
            out,
            inn,
            labels: None,
        })
    }

    /// Same as [`Digraph::new`] but with display names, one per node.
    pub fn with_labels(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Digraph::new(labels.len(), edges)?;
        g.set_labels(labels)?;
        Ok(g)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.node_count() {
            return Err(CbnError::Graph(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.node_count()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Directed cycle `0 -> 1 -> ... -> m-1 -> 0`.
    pub fn cycle(m: usize) -> Result<Self> {
        Digraph::new(m, (0..m).map(|i| (i, (i + 1) % m)))
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.out[src].binary_search(&dst).is_ok()
    }

    /// All edges in `(src, dst)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a node; falls back to `v{index + 1}`.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => format!("v{}", v + 1),
        }
    }

    /// Copy of this graph keeping only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Digraph {
        let edges: Vec<_> = self.edges().filter(|&(u, v)| keep(u, v)).collect();
        let mut g = Digraph::new(self.node_count(), edges).expect("subset of a valid edge set");
        g.labels = self.labels.clone();
        g
    }

    pub(crate) fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(CbnError::Graph(format!(
                "node {v} out of range for {} nodes",
                self.node_count()
            )))
        }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("node_count", &self.node_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_and_out_of_range_edges() {
        assert!(matches!(
            Digraph::new(2, [(0, 1), (0, 1)]),
            Err(CbnError::Graph(_))
        ));
        assert!(matches!(Digraph::new(2, [(0, 2)]), Err(CbnError::Graph(_))));
        assert!(matches!(Digraph::new(0, []), Err(CbnError::Graph(_))));
    }

    #[test]
    fn self_loops_are_allowed() {
        let g = Digraph::new(1, [(0, 0)]).unwrap();
        assert!(g.has_edge(0, 0));
        assert_eq!(g.in_neighbors(0), &[0]);
    }

    #[test]
    fn adjacency_is_sorted() {
        let g = Digraph::new(4, [(0, 3), (0, 1), (2, 1), (0, 2)]).unwrap();
        assert_eq!(g.out_neighbors(0), &[1, 2, 3]);
        assert_eq!(g.in_neighbors(1), &[0, 2]);
        assert_eq!(g.edge_count(), 4);
    }
}
