//! Simple cycle enumeration (Johnson's algorithm).

use super::connectivity::sccs_within;
use crate::error::{CbnError, Result};
use crate::model::Digraph;

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// All simple directed cycles, each as a node sequence starting at its
/// smallest node. Fails once more than `cap` cycles have been found.
pub fn enumerate_cycles(net: &Digraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = net.node_count();
    let mut search = Search {
        net,
        blocked: vec![false; n],
        block_map: vec![Vec::new(); n],
        path: Vec::new(),
        allowed: vec![false; n],
        cycles: Vec::new(),
        cap,
    };
    for start in 0..n {
        // restrict to the strong component of `start` within nodes >= start
        let active: Vec<bool> = (0..n).map(|v| v >= start).collect();
        let Some(comp) = sccs_within(net, &active)
            .into_iter()
            .find(|c| c.contains(&start))
        else {
            continue;
        };
        if comp.len() == 1 && !net.has_edge(start, start) {
            continue;
        }
        search.allowed.iter_mut().for_each(|a| *a = false);
        for &v in &comp {
            search.allowed[v] = true;
            search.blocked[v] = false;
            search.block_map[v].clear();
        }
        search.circuit(start, start)?;
    }
    Ok(search.cycles)
}

struct Search<'a> {
    net: &'a Digraph,
    blocked: Vec<bool>,
    block_map: Vec<Vec<usize>>,
    path: Vec<usize>,
    allowed: Vec<bool>,
    cycles: Vec<Vec<usize>>,
    cap: usize,
}

impl Search<'_> {
    fn circuit(&mut self, v: usize, start: usize) -> Result<bool> {
        let mut found = false;
        self.path.push(v);
        self.blocked[v] = true;
        for &w in self.net.out_neighbors(v) {
            if !self.allowed[w] {
                continue;
            }
            if w == start {
                if self.cycles.len() == self.cap {
                    return Err(CbnError::Budget(format!(
                        "more than {} simple cycles",
                        self.cap
                    )));
                }
                self.cycles.push(self.path.clone());
                found = true;
            } else if !self.blocked[w] && self.circuit(w, start)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in self.net.out_neighbors(v) {
                if self.allowed[w] && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        self.path.pop();
        Ok(found)
    }

    fn unblock(&mut self, v: usize) {
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            stack.extend(std::mem::take(&mut self.block_map[u]));
        }
    }
}
