//! Reference networks used in tests, benches and the CLI demos.

use crate::model::Digraph;

/// The eight-node example network: a 6-cycle `v1 -> ... -> v6 -> v1` and a
/// 4-cycle `v1 -> v2 -> v7 -> v8 -> v1` sharing the edge `v1 -> v2`.
/// Node `vK` has index `K - 1`. Loop number 2.
pub fn eight_node_example() -> Digraph {
    let labels = (1..=8).map(|i| format!("v{i}")).collect();
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 0),
        (1, 6),
        (6, 7),
        (7, 0),
    ];
    Digraph::with_labels(labels, edges).expect("static example")
}

/// Theta-shaped network whose simple cycles have lengths 4, 8, 8 and 12.
///
/// Two hubs `s` (0) and `t` (1) joined by two forward paths `s -> t` of
/// length 2 and 6 and two return paths `t -> s` of length 2 and 6. Loop
/// number 4.
pub fn four_class_example() -> Digraph {
    let mut edges = Vec::new();
    let mut next = 2;
    let mut path = |from: usize, to: usize, len: usize, edges: &mut Vec<(usize, usize)>| {
        let mut prev = from;
        for _ in 0..len - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, to));
    };
    path(0, 1, 2, &mut edges);
    path(0, 1, 6, &mut edges);
    path(1, 0, 2, &mut edges);
    path(1, 0, 6, &mut edges);
    Digraph::new(14, edges).expect("static example")
}
