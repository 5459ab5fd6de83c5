//! Decomposition of a strongly connected graph into its loop-number classes
//! and the irreducible components living on them.

use super::connectivity::{bfs_levels, loop_number};
use crate::error::Result;
use crate::model::{CbnState, Digraph};

/// Classes `U_0, ..., U_{p-1}` of nodes whose walk lengths from a base node
/// agree modulo the loop number `p`, together with the component graphs `G_k`.
///
/// Every edge leaves `U_k` into `U_{(k+1) mod p}`. `G_k` has an edge `a -> b`
/// iff `D` has a walk of length exactly `p` from `a` to `b`; its nodes are the
/// local positions within `classes[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub loop_number: usize,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub components: Vec<Digraph>,
}

impl Partition {
    /// Restriction of `x` to class `k`, in class order.
    pub fn restrict(&self, x: &CbnState, k: usize) -> CbnState {
        let bits: Vec<bool> = self.classes[k].iter().map(|&v| x.get(v)).collect();
        CbnState::from_bits(&bits)
    }

    /// Is `x` constant on every class.
    pub fn is_class_constant(&self, x: &CbnState) -> bool {
        self.classes
            .iter()
            .all(|class| class.iter().all(|&v| x.get(v) == x.get(class[0])))
    }
}

/// Classes are BFS levels from node 0 taken modulo the loop number, so `U_0`
/// holds node 0.
pub fn irreducible_components(net: &Digraph) -> Result<Partition> {
    let p = loop_number(net)?;
    let class_of: Vec<usize> = bfs_levels(net, 0)
        .into_iter()
        .map(|l| l.expect("strongly connected") % p)
        .collect();
    let mut classes = vec![Vec::new(); p];
    for (v, &k) in class_of.iter().enumerate() {
        classes[k].push(v);
    }
    let mut local = vec![0; net.node_count()];
    for class in &classes {
        for (i, &v) in class.iter().enumerate() {
            local[v] = i;
        }
    }

    // block[k][i][j]: edge from classes[k][i] to classes[k+1][j]
    let block: Vec<Vec<Vec<bool>>> = (0..p)
        .map(|k| {
            let next = &classes[(k + 1) % p];
            classes[k]
                .iter()
                .map(|&u| {
                    let mut row = vec![false; next.len()];
                    for &w in net.out_neighbors(u) {
                        row[local[w]] = true;
                    }
                    row
                })
                .collect()
        })
        .collect();

    let components = (0..p)
        .map(|k| {
            let mut walk = block[k].clone();
            for step in 1..p {
                walk = bool_product(&walk, &block[(k + step) % p]);
            }
            let edges = walk.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(move |(j, _)| (i, j))
            });
            Digraph::new(classes[k].len(), edges).expect("component edges are in range")
        })
        .collect();

    Ok(Partition {
        loop_number: p,
        class_of,
        classes,
        components,
    })
}

fn bool_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![false; cols];
            for (mid, _) in row.iter().enumerate().filter(|(_, &x)| x) {
                for (o, &y) in out.iter_mut().zip(&b[mid]) {
                    *o |= y;
                }
            }
            out
        })
        .collect()
}
