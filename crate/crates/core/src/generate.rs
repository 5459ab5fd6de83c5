//! Seeded random networks for sweeps, property tests and `cbn gen`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::is_strongly_connected;
use crate::model::Digraph;

/// Erdős–Rényi style digraph: every ordered pair (self-loops included) is an
/// edge with probability `edge_prob`.
pub fn random_digraph(n: usize, edge_prob: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_digraph(n, edge_prob, &mut rng)
}

fn sample_digraph(n: usize, edge_prob: f64, rng: &mut impl Rng) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, edges).expect("generated edges are in range and unique")
}

/// Strongly connected digraph on `n` nodes.
///
/// Sparse samples are drawn first so that loop numbers above 1 show up; if a
/// few attempts fail a random Hamiltonian cycle is added to force connectivity.
pub fn random_strongly_connected(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.gen_range(1.0..2.0) / n as f64;
    for _ in 0..64 {
        let g = sample_digraph(n, density.min(1.0), &mut rng);
        if is_strongly_connected(&g) {
            return g;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let base = sample_digraph(n, density.min(1.0) / 2.0, &mut rng);
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    for i in 0..n {
        edges.push((order[i], order[(i + 1) % n]));
    }
    edges.sort_unstable();
    edges.dedup();
    Digraph::new(n, edges).expect("generated edges are in range and unique")
}
